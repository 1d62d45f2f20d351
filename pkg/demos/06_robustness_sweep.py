"""Robustness of the fixed-gain SMC to +/-30% inertia and stiffness errors."""
from wristsmc import Scenario, run, sweep

base = Scenario.default()
factors = (0.7, 1.0, 1.3)
print(f"{'inertia':>8} {'stiffness':>9} {'settling':>9} {'sse':>9}")
for inertia in factors:
    for stiffness, rec in sweep(base.with_value("perturbation.inertia", inertia),
                                "perturbation.stiffness", factors):
        m = rec.metrics
        print(f"{inertia:8.1f} {stiffness:9.1f} {m.settling_time:9.3f} {m.steady_state_error:9.5f}")

# %% a constant disturbance torque
dist = base.replace(disturbance={"kind": "constant", "value": 0.05, "start": 0.0, "width": 0.0})
print("with 0.05 N m disturbance:", run(dist).metrics)
