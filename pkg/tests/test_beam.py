import math

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st
from scipy.optimize import bisect

from wristsmc.beam import (
    BeamSection,
    LoadCase,
    desired_bending_angle,
    moment_tip_deflection,
    shear_tip_deflection,
    static_deflection_point_load,
    tip_position,
)
from wristsmc.errors import DomainError

loads = st.floats(-50, 50, allow_nan=False)
scales = st.floats(-10, 10, allow_nan=False)


def _sympy_eq4(values, F, x):
    """Symbolic substitution oracle for the point-load deflection formula."""
    E, I, K, A, G, L, Fs, xs = sympy.symbols("E I K A G L F x", positive=True)
    y = Fs * (L - xs) / (K * A * G) - (Fs * xs / (2 * E * I)) * (L**2 - xs**2 / 3) + Fs * L**3 / (3 * E * I)
    subs = {E: values["E"], I: values["I"], K: values["K"], A: values["A"], G: values["G"], L: values["L"],
            Fs: F, xs: x}
    return float(y.subs({k: sympy.nsimplify(v) for k, v in subs.items()}))


class TestSection:
    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            BeamSection(E=0, I=1, K=0.5, A=1, G=1, L=1, rho=1)

    def test_rejects_shear_coefficient_above_one(self):
        with pytest.raises(DomainError):
            BeamSection(E=1, I=1, K=1.2, A=1, G=1, L=1, rho=1)

    def test_lumped_inertia(self, small_section):
        assert small_section.lumped_inertia == pytest.approx(1000 * 1e-4 * 0.12)


class TestTipPosition:
    def test_identity(self):
        pose = tip_position(1.0, 0.0)
        assert (pose.x_p, pose.y_p) == (0.0, 0.0)

    def test_quarter_circle(self):
        pose = tip_position(1.0, math.pi / 2)
        assert pose.x_p == pytest.approx(1.0, abs=1e-15)
        assert pose.y_p == pytest.approx(1.0, abs=1e-15)

    def test_high_precision_oracle(self):
        mpmath.mp.dps = 50
        R, th = mpmath.mpf("0.12"), mpmath.mpf("0.5236")
        pose = tip_position(0.12, 0.5236)
        assert pose.x_p == pytest.approx(float(R * mpmath.sin(th)), rel=1e-15)
        assert pose.y_p == pytest.approx(float(R * (1 - mpmath.cos(th))), rel=1e-14)

    @pytest.mark.parametrize("R, theta", [(0.0, 0.1), (-1.0, 0.1), (1.0, 3.2), (1.0, -3.2)])
    def test_domain(self, R, theta):
        with pytest.raises(DomainError):
            tip_position(R, theta)

    @given(st.floats(1e-3, 10), st.floats(-math.pi, math.pi))
    def test_on_curvature_circle(self, R, theta):
        p = tip_position(R, theta)
        assert p.x_p**2 + (R - p.y_p) ** 2 == pytest.approx(R**2, rel=1e-9)

    def test_small_angle_ratio(self):
        p = tip_position(0.12, 1e-4)
        assert p.y_p / p.x_p == pytest.approx(1e-4 / 2, abs=1e-6)


class TestStaticDeflection:
    values = dict(E=1e6, I=1e-9, K=0.9, A=1e-4, G=4e5, L=0.12, rho=1000.0)

    def test_zero_load(self, small_section):
        assert static_deflection_point_load(small_section, 0.0, 0.06) == 0.0

    def test_root_value(self, small_section):
        s = small_section
        expected = s.L / s.KAG + s.L**3 / (3 * s.EI)
        assert static_deflection_point_load(s, 1.0, 0.0) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, 0.03, 0.06, 0.12])
    def test_symbolic_substitution(self, small_section, x):
        expected = _sympy_eq4(self.values, 0.5, x)
        assert static_deflection_point_load(small_section, 0.5, x) == pytest.approx(expected, rel=1e-12, abs=1e-15)

    def test_at_free_end_terms_cancel(self, small_section):
        # term-by-term: shear 0, bending -F L^3/(3EI), constant +F L^3/(3EI)
        assert _sympy_eq4(self.values, 0.5, 0.12) == 0.0
        assert static_deflection_point_load(small_section, 0.5, 0.12) == pytest.approx(0.0, abs=1e-12)

    def test_domain(self, small_section):
        with pytest.raises(DomainError):
            static_deflection_point_load(small_section, 1.0, 0.13)


class TestShearTip:
    def test_zero(self, small_section):
        assert shear_tip_deflection(small_section, 0.0) == 0.0

    def test_arithmetic(self, small_section):
        assert shear_tip_deflection(small_section, 1.0) == pytest.approx(8.8 * 0.12 / (7.8 * 40), rel=1e-14)

    def test_non_finite(self, small_section):
        with pytest.raises(DomainError):
            shear_tip_deflection(small_section, math.inf)


class TestMomentTip:
    def test_zero(self, small_section):
        assert moment_tip_deflection(small_section, LoadCase(M=0.0)) == 0.0

    def test_arithmetic(self, small_section):
        assert moment_tip_deflection(small_section, LoadCase(M=1.0)) == pytest.approx(7.2, rel=1e-14)

    def test_force_radius_form(self, small_section):
        assert moment_tip_deflection(small_section, LoadCase(F=2.0), R=0.05) == pytest.approx(
            moment_tip_deflection(small_section, LoadCase(M=0.1)), rel=1e-14)

    def test_bad_radius(self, small_section):
        with pytest.raises(DomainError):
            moment_tip_deflection(small_section, LoadCase(F=1.0), R=0.0)


class TestDesiredAngle:
    def test_zero(self, section):
        assert desired_bending_angle(section, 0.0, 0.08) == 0.0

    def test_inverse_by_bisection(self, section):
        target = 0.5236
        force = bisect(lambda f: desired_bending_angle(section, f, 0.08) - target, 0.0, 10.0, xtol=1e-15)
        assert desired_bending_angle(section, force, 0.08) == pytest.approx(target, rel=1e-9)
        # closed-form check of the same inverse
        assert force == pytest.approx(target * 2 * section.EI / (0.08 * section.L), rel=1e-9)

    def test_propagates_domain_error(self, section):
        with pytest.raises(DomainError):
            desired_bending_angle(section, 1.0, -0.1)


@given(loads, scales)
def test_linearity(F, a):
    s = BeamSection(E=1e6, I=1e-9, K=0.9, A=1e-4, G=4e5, L=0.12, rho=1000.0)
    tol = dict(rel=1e-9, abs=1e-12)
    assert static_deflection_point_load(s, a * F, 0.05) == pytest.approx(a * static_deflection_point_load(s, F, 0.05), **tol)
    assert shear_tip_deflection(s, a * F) == pytest.approx(a * shear_tip_deflection(s, F), **tol)
    assert moment_tip_deflection(s, LoadCase(M=a * F)) == pytest.approx(a * moment_tip_deflection(s, LoadCase(M=F)), **tol)
    assert desired_bending_angle(s, a * F, 0.08) == pytest.approx(a * desired_bending_angle(s, F, 0.08), **tol)
