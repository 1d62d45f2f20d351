"""Time-domain wrist plants.

Two plants are provided. The lumped plant is the single-degree-of-freedom
tip model ``inertia * theta'' = F_t`` augmented with a restoring stiffness,
viscous damping and input saturation (the "truth" plant). The PDE plant is an
explicit finite-difference discretization of the dynamic bending equation
``EI y'''' + rho A y_tt = F_t(x)`` on a clamped-free beam.

States are immutable; every step returns a new state. ``PlantState`` fields
may be scalars or equally shaped arrays, so a batch of independent
trajectories can be advanced in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .beam import BeamSection
from .errors import DomainError, IntegrationError, StabilityError

#: +/- 50 degrees, the mechanical range of the wrist.
THETA_RANGE = 0.873

DEFAULT_PDE_DAMPING = 5.0
PDE_STABILITY_FACTOR = 0.4


@dataclass(frozen=True)
class PlantState:
    theta1: float | np.ndarray
    theta2: float | np.ndarray
    t: float = 0.0

    @property
    def range_exceeded(self) -> bool:
        return bool(np.any(np.abs(self.theta1) > THETA_RANGE))


@dataclass(frozen=True)
class LumpedPlantParams:
    inertia: float
    stiffness: float
    damping: float
    f_max: float

    def __post_init__(self):
        if not self.inertia > 0:
            raise DomainError("inertia must be positive")
        if self.stiffness < 0 or self.damping < 0:
            raise DomainError("stiffness and damping must be non-negative")
        if not self.f_max > 0:
            raise DomainError("f_max must be positive")

    @classmethod
    def from_section(cls, section: BeamSection, stiffness: float, damping: float,
                     f_max: float = 30.0) -> "LumpedPlantParams":
        return cls(section.lumped_inertia, stiffness, damping, f_max)


@dataclass(frozen=True)
class AffineDynamics:
    """Control-affine split ``x' = f(x) + g(x) u`` of the nominal model."""

    f: tuple
    g: tuple


def nominal_dynamics(state: PlantState, params: LumpedPlantParams) -> AffineDynamics:
    # stiffness and damping are deliberately absent: the controller only
    # knows the bare inertia model
    return AffineDynamics(f=(state.theta2, 0.0), g=(0.0, 1.0 / params.inertia))


def rk4_step(derivative: Callable[[PlantState], tuple], state: PlantState, dt: float,
             check_finite: bool = True) -> PlantState:
    """One classical Runge-Kutta step.

    ``derivative(state)`` returns ``(d theta1/dt, d theta2/dt)`` evaluated at
    ``state`` (including ``state.t``).
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    th, w, t = state.theta1, state.theta2, state.t
    half = 0.5 * dt
    a1, b1 = derivative(state)
    a2, b2 = derivative(PlantState(th + half * a1, w + half * b1, t + half))
    a3, b3 = derivative(PlantState(th + half * a2, w + half * b2, t + half))
    a4, b4 = derivative(PlantState(th + dt * a3, w + dt * b3, t + dt))
    # a single non-finite term poisons the sum
    if check_finite and not np.all(np.isfinite(a1 + b1 + a2 + b2 + a3 + b3 + a4 + b4)):
        raise IntegrationError(f"non-finite derivative at t={t:.6g}")
    sixth = dt / 6.0
    return PlantState(
        th + sixth * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
        w + sixth * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
        t + dt,
    )


def truth_acceleration(theta, theta_dot, u, disturbance, params: LumpedPlantParams):
    applied = np.clip(u, -params.f_max, params.f_max)
    return (applied - params.damping * theta_dot - params.stiffness * theta + disturbance) / params.inertia


def truth_step(state: PlantState, params: LumpedPlantParams, u: float, disturbance: float,
               dt: float) -> PlantState:
    """Advance the truth plant by ``dt`` with ``u`` and ``disturbance`` held constant."""
    if not 0 < dt <= 0.01:
        raise DomainError(f"dt must lie in (0, 0.01], got {dt!r}")
    if not np.all(np.isfinite(u)):
        raise DomainError("control input must be finite")

    def derivative(s):
        return s.theta2, truth_acceleration(s.theta1, s.theta2, u, disturbance, params)

    new = rk4_step(derivative, state, dt)
    if not (np.all(np.isfinite(new.theta1)) and np.all(np.isfinite(new.theta2))):
        raise IntegrationError(f"non-finite state at t={new.t:.6g}")
    return new


def plant_energy(state: PlantState, params: LumpedPlantParams):
    return 0.5 * params.inertia * state.theta2**2 + 0.5 * params.stiffness * state.theta1**2


# --------------------------------------------------------------------------
# finite-difference beam


@dataclass(frozen=True)
class PdePlantState:
    y: np.ndarray
    y_dot: np.ndarray
    dx: float
    t: float = 0.0

    @property
    def nodes(self) -> int:
        return len(self.y)

    @classmethod
    def at_rest(cls, section: BeamSection, nodes: int = 41) -> "PdePlantState":
        if nodes < 5:
            raise DomainError("the grid needs at least 5 nodes")
        return cls(np.zeros(nodes), np.zeros(nodes), section.L / (nodes - 1))


def max_stable_dt(section: BeamSection, nodes: int) -> float:
    """Explicit step bound ``0.4 dx^2 sqrt(rho A / EI)``."""
    dx = section.L / (nodes - 1)
    return PDE_STABILITY_FACTOR * dx**2 * math.sqrt(section.mass_per_length / section.EI)


def fourth_difference(y: np.ndarray, dx: float) -> np.ndarray:
    """Central 4th derivative with clamped (x=0) and free (x=L) ghost nodes.

    Clamp: y[0] = 0 and zero centered slope, so the ghost y[-1] mirrors y[1].
    Free end: zero moment and zero shear centered on the last node.
    """
    n = len(y)
    ext = np.empty(n + 4)
    ext[2:-2] = y
    ext[1] = y[1]
    ext[0] = y[2]  # unused by rows >= 1
    ext[-2] = 2.0 * y[-1] - y[-2]
    ext[-1] = 2.0 * ext[-2] - 2.0 * y[-2] + y[-3]
    d4 = (ext[:-4] - 4.0 * ext[1:-3] + 6.0 * ext[2:-2] - 4.0 * ext[3:-1] + ext[4:]) / dx**4
    d4[0] = 0.0
    return d4


def pde_step(state: PdePlantState, section: BeamSection, tip_force: float, dt: float,
             damping: float = DEFAULT_PDE_DAMPING) -> PdePlantState:
    """Semi-implicit Euler step of the damped bending equation.

    ``damping`` is a mass-proportional coefficient (1/s). The tip force is
    turned into a load density over the half cell owned by the last node.
    """
    bound = max_stable_dt(section, state.nodes)
    if not 0 < dt <= bound:
        raise StabilityError(f"dt={dt!r} exceeds the explicit bound {bound:.4g} s")
    rho_a = section.mass_per_length
    load = np.zeros(state.nodes)
    load[-1] = 2.0 * tip_force / state.dx
    acc = (load - section.EI * fourth_difference(state.y, state.dx)) / rho_a - damping * state.y_dot
    y_dot = state.y_dot + dt * acc
    y_dot[0] = 0.0
    y = state.y + dt * y_dot
    y[0] = 0.0
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(y_dot))):
        raise IntegrationError(f"non-finite beam state at t={state.t + dt:.6g}")
    return replace(state, y=y, y_dot=y_dot, t=state.t + dt)


def bending_angle_from_pde(state: PdePlantState, section: BeamSection) -> float:
    return float(state.y[-1] / section.L)


def settle_pde(section: BeamSection, tip_force: float, nodes: int = 41, damping: float | None = None,
               tol: float = 1e-8, t_max: float = 60.0) -> PdePlantState:
    """Run the beam under a constant tip load until max |y_dot| < ``tol``.

    When ``damping`` is None a value near critical for the first bending mode
    is used; the steady state itself does not depend on it.
    """
    if damping is None:
        omega1 = 1.875**2 * math.sqrt(section.EI / section.mass_per_length) / section.L**2
        damping = 2.0 * omega1
    dt = max_stable_dt(section, nodes)
    state = PdePlantState.at_rest(section, nodes)
    steps = int(math.ceil(t_max / dt))
    for i in range(steps):
        state = pde_step(state, section, tip_force, dt, damping)
        if i > 10 and np.max(np.abs(state.y_dot)) < tol:
            return state
    raise IntegrationError(f"beam did not settle within {t_max} s")
