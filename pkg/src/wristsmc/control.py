"""Sliding mode controller and a PID baseline.

Both controllers are stateless functions. Inputs may be numpy arrays, in
which case every output is computed elementwise (used to simulate a batch of
gain vectors at once). Saturation is not applied here; the plant clips.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, SingularDynamics
from .plant import AffineDynamics, PlantState

#: |sigma| band inside which the reaching-condition probe reports success.
BOUNDARY_LAYER = 0.05


class Switching(str, Enum):
    TANH = "tanh"
    SGN = "sgn"


def switch(sigma, kind: Switching | str):
    if Switching(kind) is Switching.TANH:
        return np.tanh(sigma)
    return np.sign(sigma)  # sign(0) == 0


@dataclass(frozen=True)
class SmcGains:
    p1: float
    p2: float
    p3: float
    switching_kind: Switching = Switching.TANH

    def __post_init__(self):
        if not (np.all(np.asarray(self.p1) > 0) and np.all(np.asarray(self.p2) > 0)
                and np.all(np.asarray(self.p3) > 0)):
            raise DomainError("SMC gains must be strictly positive")
        object.__setattr__(self, "switching_kind", Switching(self.switching_kind))


@dataclass(frozen=True)
class SmcOutput:
    sigma: float
    u_equivalent: float
    u_switching: float
    u: float


@dataclass(frozen=True)
class PidGains:
    kp: float
    ki: float
    kd: float
    integral_limit: float = 1.0

    def __post_init__(self):
        if np.any(np.asarray(self.kp) < 0) or np.any(np.asarray(self.ki) < 0) or np.any(np.asarray(self.kd) < 0):
            raise DomainError("PID gains must be non-negative")
        if not self.integral_limit > 0:
            raise DomainError("integral_limit must be positive")


def sliding_surface(gains: SmcGains, error, theta_dot):
    """sigma = P1 * e + P2 * theta_dot, with e = theta - theta_ref."""
    return gains.p1 * error + gains.p2 * theta_dot


def smc_control(gains: SmcGains, state: PlantState, reference, dynamics: AffineDynamics) -> SmcOutput:
    """Equivalent plus switching control from the Lie derivatives of sigma.

    With a constant reference, grad(sigma) = (P1, P2), hence
    L_f sigma = P1 f1 + P2 f2 and L_g sigma = P1 g1 + P2 g2.
    """
    f1, f2 = dynamics.f
    g1, g2 = dynamics.g
    lg = gains.p1 * g1 + gains.p2 * g2
    if np.any(lg == 0):
        raise SingularDynamics("L_g sigma vanishes; the input does not reach the surface")
    lf = gains.p1 * f1 + gains.p2 * f2
    sigma = sliding_surface(gains, state.theta1 - reference, state.theta2)
    u_eq = lf / lg
    u_sw = gains.p3 * switch(sigma, gains.switching_kind) / lg
    return SmcOutput(sigma, u_eq, u_sw, -(u_eq + u_sw))


def reaching_condition_check(sigma: float, sigma_dot: float, epsilon: float = BOUNDARY_LAYER) -> bool:
    return bool(sigma * sigma_dot < 0 or abs(sigma) <= epsilon)


def clamp_integral(integral, limit: float):
    return np.clip(integral, -limit, limit)


def pid_control(gains: PidGains, error, error_integral, error_derivative):
    """u = kp e + ki clamp(integral) + kd e'.

    ``error`` here is reference minus output, so a positive error asks for a
    positive (angle-raising) force.
    """
    integral = clamp_integral(error_integral, gains.integral_limit)
    return gains.kp * error + gains.ki * integral + gains.kd * error_derivative
