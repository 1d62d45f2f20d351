"""Chattering: smooth tanh switching against the discontinuous sign function."""
import numpy as np

from wristsmc import Scenario, run

sc = Scenario.default()
ctrl = sc.to_dict()["controller"]
for kind in ("tanh", "sgn"):
    rec = run(sc.replace(controller={**ctrl, "switching": kind}))
    u = rec.columns["u_applied"]
    tail = u[len(u) // 2:]
    print(f"{kind:5s} chattering={rec.metrics.chattering_index:10.4f}  "
          f"rmse={rec.metrics.rmse:.4f}  tail u range=[{tail.min():.4f}, {tail.max():.4f}]  "
          f"sign changes in tail={int(np.sum(np.diff(np.sign(tail)) != 0))}")
