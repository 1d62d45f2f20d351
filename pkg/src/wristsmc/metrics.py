"""Tracking metrics over logged trajectories.

Columns of a :class:`TrajectoryLog` may be 1-D (one run) or 2-D with samples
along axis 0 and independent runs along axis 1; ``rmse``,
``steady_state_error`` and ``chattering_index`` reduce along axis 0.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import EmptyLog, NotAStep

DEFAULT_BAND = 0.02
DEFAULT_TAIL = 0.1


@dataclass(frozen=True)
class TrajectoryLog:
    t: np.ndarray
    theta_ref: np.ndarray
    theta: np.ndarray
    u: np.ndarray
    sigma: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.t)
        for name in ("theta_ref", "theta", "u"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"column {name} has a different length than t")
        if self.sigma is not None and len(self.sigma) != n:
            raise ValueError("column sigma has a different length than t")
        if n > 1:
            steps = np.diff(self.t)
            if np.any(steps <= 0) or np.ptp(steps) > 1e-12:
                raise ValueError("sample times must be strictly increasing and uniform")

    @property
    def error(self):
        return self.theta - self.theta_ref

    def tail(self, fraction: float) -> "TrajectoryLog":
        n = len(self.t)
        k = int(round(fraction * n))
        if k < 1:
            raise EmptyLog(f"tail fraction {fraction} selects no samples")
        sig = None if self.sigma is None else self.sigma[n - k:]
        return TrajectoryLog(self.t[n - k:], self.theta_ref[n - k:], self.theta[n - k:], self.u[n - k:], sig)


@dataclass(frozen=True)
class MetricsSummary:
    rmse: float
    settling_time: float | None
    steady_state_error: float
    chattering_index: float

    def as_dict(self) -> dict:
        return asdict(self)


def rmse(log: TrajectoryLog):
    if len(log.t) == 0:
        raise EmptyLog("empty log")
    return np.sqrt(np.mean(log.error**2, axis=0))


def settling_time(log: TrajectoryLog, band: float = DEFAULT_BAND) -> float | None:
    """Earliest time after which the output stays within the band for good.

    The band is ``band * |final reference - initial output|``. Returns None if
    the last sample is still outside it.
    """
    n = len(log.t)
    if n == 0:
        raise EmptyLog("empty log")
    final = log.theta_ref[-1]
    last = log.theta_ref[n - max(1, int(round(0.2 * n))):]
    if np.ptp(last) > 1e-12 * max(1.0, abs(final)):
        raise NotAStep("reference is not constant over the last 20% of the window")
    tolerance = band * abs(final - log.theta[0])
    outside = np.abs(log.theta - final) > tolerance
    if not outside.any():
        return 0.0
    last_out = int(np.flatnonzero(outside)[-1])
    if last_out == n - 1:
        return None
    return float(log.t[last_out + 1] - log.t[0])


def steady_state_error(log: TrajectoryLog, tail_fraction: float = DEFAULT_TAIL):
    return np.mean(np.abs(log.tail(tail_fraction).error), axis=0)


def chattering_index(log: TrajectoryLog):
    """Total variation of the applied control per second of window.

    The window of n samples spaced dt apart counts as n * dt seconds.
    """
    n = len(log.t)
    if n < 2:
        raise EmptyLog("chattering index needs at least two samples")
    duration = n * (log.t[-1] - log.t[0]) / (n - 1)
    return np.sum(np.abs(np.diff(log.u, axis=0)), axis=0) / duration


def summarize(log: TrajectoryLog, band: float = DEFAULT_BAND, tail_fraction: float = DEFAULT_TAIL) -> MetricsSummary:
    return MetricsSummary(
        rmse=float(rmse(log)),
        settling_time=settling_time(log, band),
        steady_state_error=float(steady_state_error(log, tail_fraction)),
        chattering_index=float(chattering_index(log)),
    )
