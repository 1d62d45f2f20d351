"""The distributed beam: static check and closed loop on the PDE plant."""
from wristsmc import Scenario, run
from wristsmc.plant import settle_pde
from wristsmc.scenario import default_section

section = default_section()
F = 0.01
exact = F * section.L**3 / (3 * section.EI)
for nodes in (21, 41, 81):
    tip = settle_pde(section, F, nodes).y[-1]
    print(f"{nodes:3d} nodes: tip {tip:.6e} m, relative error {abs(tip - exact) / exact:.2e}")

# %% the same controller driving the beam model instead of the lumped plant
sc = Scenario.from_dict({"plant": {"kind": "pde"}, "duration": 2.0, "reference": {"final": 0.2}})
rec = run(sc)
print(rec.metrics)
print("final angle", rec.columns["theta"][-1])
