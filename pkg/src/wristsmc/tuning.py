"""Global-best particle swarm optimization of controller gains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError
from .harness import batch_objective
from .scenario import Scenario, defaults


@dataclass(frozen=True)
class PsoConfig:
    bounds: tuple
    particles: int = 20
    iterations: int = 40
    inertia_weight: float = 0.729
    cognitive_coeff: float = 1.49445
    social_coeff: float = 1.49445
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds))
        if self.particles < 2 or self.iterations < 1:
            raise ConfigError("need at least 2 particles and 1 iteration")
        if not self.bounds or any(not lo < hi for lo, hi in self.bounds):
            raise ConfigError("every bound needs low < high")
        if min(self.inertia_weight, self.cognitive_coeff, self.social_coeff) < 0:
            raise ConfigError("PSO coefficients must be non-negative")

    @classmethod
    def for_controller(cls, kind: str, **overrides) -> "PsoConfig":
        """Defaults for tuning ``smc`` or ``pid`` gains."""
        tuning = defaults()["tuning"]
        bounds = tuning.pop("bounds")[kind]
        tuning.update(overrides)
        tuning.setdefault("bounds", bounds)
        return cls(**tuning)


@dataclass
class TuningResult:
    best_gains: np.ndarray
    best_objective: float
    history: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "best_gains": [float(g) for g in self.best_gains],
            "best_objective": float(self.best_objective),
            "history": [float(h) for h in self.history],
        }


def objective(scenario: Scenario, gains) -> float:
    """Tracking RMSE plus weighted chattering index of one closed-loop run.

    Diverging runs score +inf.
    """
    return float(batch_objective(scenario, np.asarray(gains, dtype=float)[None, :])[0])


def pso_minimize(config: PsoConfig, problem: Scenario | Callable[[np.ndarray], np.ndarray]) -> TuningResult:
    """Minimize over the box ``config.bounds``.

    ``problem`` is either a scenario (its controller gains are tuned with
    :func:`objective`) or a function mapping a (particles, dims) array of
    positions to a vector of objective values. Particles are evaluated as one
    batch per iteration, so the result depends only on ``config.seed``.
    """
    if isinstance(problem, Scenario):
        def fun(x):
            return batch_objective(problem, x)
    else:
        fun = problem

    rng = np.random.default_rng(config.seed)
    lo = np.array([b[0] for b in config.bounds])
    hi = np.array([b[1] for b in config.bounds])
    shape = (config.particles, len(lo))
    x = rng.uniform(lo, hi, size=shape)
    v = rng.uniform(-(hi - lo), hi - lo, size=shape) * 0.1

    def evaluate(pos):
        vals = np.asarray(fun(pos), dtype=float)
        return np.where(np.isnan(vals), np.inf, vals)

    f = evaluate(x)
    pbest, pbest_f = x.copy(), f.copy()
    i = int(np.argmin(pbest_f))
    gbest, gbest_f = pbest[i].copy(), float(pbest_f[i])
    history = [gbest_f]

    w, c1, c2 = config.inertia_weight, config.cognitive_coeff, config.social_coeff
    for _ in range(config.iterations - 1):
        r1 = rng.random(shape)
        r2 = rng.random(shape)
        v = w * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x)
        x = np.clip(x + v, lo, hi)
        f = evaluate(x)
        better = f < pbest_f
        pbest[better] = x[better]
        pbest_f[better] = f[better]
        i = int(np.argmin(pbest_f))
        if pbest_f[i] < gbest_f:
            gbest, gbest_f = pbest[i].copy(), float(pbest_f[i])
        history.append(gbest_f)
    return TuningResult(gbest, gbest_f, history)
