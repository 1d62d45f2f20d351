"""Beam statics: tip pose, deflection curve and the force-to-angle map.

Run with ``python3 demos/01_beam_statics.py``.
"""
import numpy as np

from wristsmc.beam import (LoadCase, desired_bending_angle, moment_tip_deflection,
                           shear_tip_deflection, static_deflection_point_load, tip_position)
from wristsmc.scenario import default_section, defaults

section = default_section()
print(section)
print(f"EI = {section.EI:.3g} N m^2, KAG = {section.KAG:.3g} N, lumped inertia = {section.lumped_inertia:.4g}")

# %% constant-curvature tip pose for a few bending angles
for theta in (0.1, 0.3, 0.5236):
    pose = tip_position(section.L / theta, theta)
    print(f"theta={theta:.4f}  x={pose.x_p:.4f} m  y={pose.y_p:.4f} m")

# %% deflection under a 10 mN tip load; x is measured from the loaded end
F = 0.01
x = np.linspace(0.0, section.L, 7)
for xi in x:
    print(f"x={xi:.3f}  y={static_deflection_point_load(section, F, xi):.3e}")

# %% how much of the tip deflection comes from shear vs bending
R = defaults()["tmb_radius"]
print("shear tip deflection  ", shear_tip_deflection(section, F))
print("moment tip deflection ", moment_tip_deflection(section, LoadCase(F), R))

# %% the feedforward block: desired tendon force -> desired bending angle
for f_des in (0.05, 0.1, 0.2):
    print(f"F_des={f_des:.2f} N -> theta_des={desired_bending_angle(section, f_des, R):.4f} rad")
