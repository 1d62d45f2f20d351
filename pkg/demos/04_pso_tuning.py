"""Tune the SMC gains with particle swarm optimization.

The full budget (20 particles x 40 iterations) takes under a minute.
"""
from wristsmc import Scenario, run
from wristsmc.tuning import PsoConfig, objective, pso_minimize

sc = Scenario.default()
cfg = PsoConfig.for_controller("smc", seed=0)
result = pso_minimize(cfg, sc)

print("objective at (50, 1, 40):", objective(sc, [50.0, 1.0, 40.0]))
print("best gains:", result.best_gains, "objective:", result.best_objective)
print("gbest history (every 5th):", [round(h, 5) for h in result.history[::5]])

tuned = run(sc.replace(controller={**sc.to_dict()["controller"], "gains": list(result.best_gains)}))
print(tuned.metrics)
