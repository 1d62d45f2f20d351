"""Closed-loop step response of the sliding mode controller.

The default scenario: 30 degree step, lumped plant, gains (50, 1, 40).
"""
import numpy as np

from wristsmc import Scenario, run

sc = Scenario.default()
rec = run(sc)
print(rec.metrics)

cols = rec.columns
print(f"{'t':>6} {'theta':>9} {'sigma':>10} {'u':>9}")
for k in range(0, len(cols["t"]), 250):
    print(f"{cols['t'][k]:6.2f} {cols['theta'][k]:9.5f} {cols['sigma'][k]:10.4f} {cols['u_applied'][k]:9.5f}")

# %% the switching term drives sigma toward zero at rate P3 while far from it
p3 = sc.controller.gains[2]
sigma = cols["sigma"]
print("initial sigma", sigma[0], "-> rough reaching time", abs(sigma[0]) / p3, "s")
print("first sample with |sigma| < 1:", cols["t"][np.argmax(np.abs(sigma) < 1)], "s")
# on this plant sigma does not reach zero: P3 tanh(sigma) balances the spring
print("final sigma", sigma[-1])

# %% the steady error is left by the stiffness the nominal model ignores;
# the augmented model cancels it
aug = run(sc.replace(controller={**sc.to_dict()["controller"], "model": "augmented"}))
print("nominal model sse  ", rec.metrics.steady_state_error)
print("augmented model sse", aug.metrics.steady_state_error)
