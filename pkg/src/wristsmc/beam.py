"""Static beam formulas and constant-curvature kinematics of the wrist section.

All functions are pure. Loads are signed; a positive force or moment bends
the wrist toward positive angles (ulnar deviation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class BeamSection:
    """Geometry and material of the soft wrist segment (SI units)."""

    E: float
    I: float
    K: float
    A: float
    G: float
    L: float
    rho: float

    def __post_init__(self):
        for name in ("E", "I", "K", "A", "G", "L", "rho"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and positive, got {value!r}")
        if self.K > 1:
            raise DomainError(f"shear coefficient K must lie in (0, 1], got {self.K!r}")

    @property
    def EI(self) -> float:
        return self.E * self.I

    @property
    def KAG(self) -> float:
        return self.K * self.A * self.G

    @property
    def mass_per_length(self) -> float:
        return self.rho * self.A

    @property
    def lumped_inertia(self) -> float:
        """rho*A*L, the coefficient multiplying the tip angular acceleration."""
        return self.rho * self.A * self.L


@dataclass(frozen=True)
class TipPose:
    x_p: float
    y_p: float
    R: float
    theta: float


@dataclass(frozen=True)
class LoadCase:
    F: float = 0.0
    M: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.F) and math.isfinite(self.M)):
            raise DomainError("load components must be finite")


def tip_position(R: float, theta: float) -> TipPose:
    """Tip coordinates of a circular arc of radius ``R`` bent by ``theta``."""
    if not R > 0:
        raise DomainError(f"radius of curvature must be positive, got {R!r}")
    if not -math.pi <= theta <= math.pi:
        raise DomainError(f"bending angle must lie in [-pi, pi], got {theta!r}")
    return TipPose(R * math.sin(theta), R * (1.0 - math.cos(theta)), R, theta)


def static_deflection_point_load(section: BeamSection, F: float, x: float) -> float:
    """Deflection at ``x`` under a concentrated load ``F``.

    Shear term F(L-x)/KAG plus the bending terms, evaluated exactly as the
    closed form is written; note that it vanishes at x = L.
    """
    L = section.L
    if not 0.0 <= x <= L:
        raise DomainError(f"x must lie in [0, {L}], got {x!r}")
    EI = section.EI
    shear = F * (L - x) / section.KAG
    bending = -(F * x / (2.0 * EI)) * (L**2 - x**2 / 3.0)
    return shear + bending + F * L**3 / (3.0 * EI)


def shear_tip_deflection(section: BeamSection, F: float) -> float:
    """Endpoint deformation 8.8 F L / (7.8 A G)."""
    if not math.isfinite(F):
        raise DomainError("load must be finite")
    return 8.8 * F * section.L / (7.8 * section.A * section.G)


def moment_tip_deflection(section: BeamSection, load: LoadCase, R: float | None = None) -> float:
    """Tip deflection M L^2 / (2 E I).

    With ``R`` given the moment is taken as ``load.F * R`` (tendon force acting
    at radius ``R``); otherwise ``load.M`` is used.
    """
    if R is not None:
        if not R > 0:
            raise DomainError(f"radius must be positive in the force form, got {R!r}")
        M = load.F * R
    else:
        M = load.M
    return M * section.L**2 / (2.0 * section.EI)


def desired_bending_angle(section: BeamSection, F_des: float, R: float) -> float:
    """Feedforward map from a desired tendon force to the reference angle."""
    y_des = moment_tip_deflection(section, LoadCase(F=F_des), R)
    return y_des / section.L
