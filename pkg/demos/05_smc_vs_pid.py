"""Side-by-side comparison of SMC and PID on the same plant and reference."""
from wristsmc import Scenario, compare

base = Scenario.default()
ctrl = base.to_dict()["controller"]
smc = base.replace(label="smc")
pid = base.replace(label="pid", controller={**ctrl, "kind": "pid", "gains": [12.9, 8.4, 0.83]})

report = compare([smc, pid])
print(report.format())
