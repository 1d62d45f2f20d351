"""Closed-loop runner: reference (optionally via the force-to-angle block),
controller, saturation, plant, logging and metrics.

On the lumped plant the controller is part of the closed-loop vector field,
so it is re-evaluated at every Runge-Kutta stage (a continuous-time
controller sampled for logging). The PID integrator is the exception: it is
a discrete accumulator updated once per sample. On the PDE plant the
controller is re-evaluated at every beam sub-step; the sub-step is limited
both by the beam's stability bound and by the controller's velocity gain.
"""

from __future__ import annotations

import datetime as _dt
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .beam import BeamSection
from .control import PidGains, SmcGains, clamp_integral, pid_control, smc_control
from .errors import MismatchedScenarios, SimulationError
from .metrics import MetricsSummary, TrajectoryLog, chattering_index, rmse, summarize
from .plant import (
    THETA_RANGE,
    AffineDynamics,
    PdePlantState,
    PlantState,
    bending_angle_from_pde,
    max_stable_dt,
    nominal_dynamics,
    pde_step,
    rk4_step,
    truth_acceleration,
)
from .scenario import Scenario

_ERRSTATE = {
    True: {"over": "raise", "invalid": "raise", "divide": "raise", "under": "ignore"},
    False: {"all": "ignore"},
}

COLUMNS = ("t", "theta_ref", "theta", "theta_dot", "error", "sigma", "u_eq", "u_sw", "u_applied")

#: Published comparison values (RMSE rad, settling s, steady-state error rad).
#: Printed for reference only; the GVSC column is not reproduced here.
PUBLISHED_TABLE = {
    "GVSC": {"rmse": 0.029, "settling_time": 3.180, "steady_state_error": 0.014},
    "PID": {"rmse": 0.266, "settling_time": 5.740, "steady_state_error": 1.210},
    "SMC": {"rmse": 0.016, "settling_time": 1.900, "steady_state_error": 0.003},
}


@dataclass
class RunRecord:
    scenario: Scenario
    columns: dict
    metrics: MetricsSummary
    provenance: dict
    range_exceeded: bool = False

    @property
    def log(self) -> TrajectoryLog:
        c = self.columns
        sigma = None if self.scenario.controller.kind == "pid" else c["sigma"]
        return TrajectoryLog(c["t"], c["theta_ref"], c["theta"], c["u_applied"], sigma)

    def recompute_metrics(self) -> MetricsSummary:
        m = self.scenario.metrics
        return summarize(self.log, m.settling_band, m.tail_fraction)

    def summary(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "metrics": self.metrics.as_dict(),
            "range_exceeded": self.range_exceeded,
            "provenance": self.provenance,
        }


def _provenance(scenario: Scenario) -> dict:
    return {
        "tool": "wristsmc",
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config_hash": scenario.config_hash,
    }


class _Controller:
    """Evaluates the configured controller on (possibly batched) states."""

    def __init__(self, scenario: Scenario, gains: np.ndarray):
        self.kind = scenario.controller.kind
        self.reference = scenario.resolved_reference()
        nominal = scenario.nominal_params()
        self.nominal = nominal
        self.augmented = scenario.controller.model == "augmented"
        a, b, c = gains
        if self.kind == "smc":
            self.gains = SmcGains(a, b, c, scenario.controller.switching)
        else:
            self.gains = PidGains(a, b, c, scenario.controller.integral_limit)

    def dynamics(self, state: PlantState) -> AffineDynamics:
        nominal = nominal_dynamics(state, self.nominal)
        if not self.augmented:
            return nominal
        p = self.nominal
        drift = -(p.damping * state.theta2 + p.stiffness * state.theta1) / p.inertia
        return AffineDynamics(f=(state.theta2, drift), g=nominal.g)

    def __call__(self, state: PlantState, integral):
        """Return (u, sigma, u_eq, u_sw); the last three are None for PID."""
        ref = self.reference.value_at(state.t)
        if self.kind == "smc":
            out = smc_control(self.gains, state, ref, self.dynamics(state))
            return out.u, out.sigma, out.u_equivalent, out.u_switching
        err = ref - state.theta1
        err_rate = self.reference.rate_at(state.t) - state.theta2
        return pid_control(self.gains, err, integral, err_rate), None, None, None


def _sample_count(scenario: Scenario) -> int:
    return int(round(scenario.duration / scenario.dt))


def simulate_lumped(scenario: Scenario, gains=None, strict: bool = True) -> dict:
    """Simulate the lumped plant for one gain vector or a (B, 3) batch.

    Returns columns of shape (n,) for a single gain vector or (n, B) for a
    batch. With ``strict`` a non-finite state raises SimulationError;
    otherwise the affected runs are left as NaN/inf.
    """
    g = np.asarray(scenario.controller.gains if gains is None else gains, dtype=float)
    single = g.ndim == 1
    g2 = np.atleast_2d(g)
    batch = g2.shape[0]
    ctrl = _Controller(scenario, g2.T if not single else g)
    truth = scenario.truth_params()
    reference = ctrl.reference
    disturbance = scenario.disturbance
    dt = scenario.dt
    n = _sample_count(scenario)
    limit = scenario.controller.integral_limit
    shape = () if single else (batch,)

    cols = {name: np.empty((n + 1,) + shape) for name in COLUMNS}
    cols["t"] = np.empty(n + 1)
    state = PlantState(np.zeros(shape) if shape else 0.0, np.zeros(shape) if shape else 0.0, 0.0)
    integral = np.zeros(shape) if shape else 0.0
    cache = {}

    def derivative(s: PlantState):
        if s is cache.get("state"):
            u = cache["u"]
        else:
            u = ctrl(s, integral)[0]
        return s.theta2, truth_acceleration(s.theta1, s.theta2, u, disturbance.value_at(s.t), truth)

    with np.errstate(**_ERRSTATE[strict]):
        for k in range(n + 1):
            t = k * dt
            state = PlantState(state.theta1, state.theta2, t)
            try:
                u, sigma, u_eq, u_sw = ctrl(state, integral)
            except FloatingPointError as exc:
                raise SimulationError(f"simulation diverged at t={t:.6g}: {exc}") from exc
            ref = reference.value_at(t)
            cols["t"][k] = t
            cols["theta_ref"][k] = ref
            cols["theta"][k] = state.theta1
            cols["theta_dot"][k] = state.theta2
            cols["error"][k] = state.theta1 - ref
            cols["sigma"][k] = np.nan if sigma is None else sigma
            cols["u_eq"][k] = np.nan if u_eq is None else u_eq
            cols["u_sw"][k] = np.nan if u_sw is None else u_sw
            cols["u_applied"][k] = np.clip(u, -truth.f_max, truth.f_max)
            if k == n:
                break
            cache["state"], cache["u"] = state, u
            try:
                state = rk4_step(derivative, state, dt, check_finite=strict)
            except FloatingPointError as exc:
                raise SimulationError(f"simulation diverged at t={t:.6g}: {exc}") from exc
            if ctrl.kind == "pid":
                integral = clamp_integral(integral + dt * (ref - cols["theta"][k]), limit)
    return cols


def simulate_pde(scenario: Scenario) -> dict:
    section = scenario.beam_section()
    q = scenario.perturbation
    # perturbations act on the beam's mass and bending stiffness
    beam = BeamSection(section.E * q.stiffness, section.I, section.K, section.A, section.G,
                       section.L, section.rho * q.inertia)
    damping = scenario.plant.pde_damping * q.damping
    ctrl = _Controller(scenario, np.asarray(scenario.controller.gains, dtype=float))
    reference = ctrl.reference
    f_max = scenario.plant.f_max
    dt = scenario.dt
    n = _sample_count(scenario)
    h_beam = max_stable_dt(beam, scenario.plant.nodes)
    tip_mass = beam.mass_per_length * beam.L / (scenario.plant.nodes - 1) / 2
    beam_state = PdePlantState.at_rest(beam, scenario.plant.nodes)
    integral = 0.0
    cols = {name: np.empty(n + 1) for name in COLUMNS}

    def measure(s: PdePlantState, t: float) -> PlantState:
        return PlantState(bending_angle_from_pde(s, beam), float(s.y_dot[-1] / beam.L), t)

    for k in range(n + 1):
        t = k * dt
        state = measure(beam_state, t)
        u, sigma, u_eq, u_sw = ctrl(state, integral)
        ref = reference.value_at(t)
        applied = float(np.clip(u, -f_max, f_max))
        row = (t, ref, state.theta1, state.theta2, state.theta1 - ref,
               np.nan if sigma is None else sigma,
               np.nan if u_eq is None else u_eq,
               np.nan if u_sw is None else u_sw, applied)
        for name, value in zip(COLUMNS, row):
            cols[name][k] = value
        if not (math.isfinite(state.theta1) and math.isfinite(state.theta2)):
            raise SimulationError(f"beam simulation diverged at t={t:.6g}")
        if k == n:
            break
        # velocity feedback acts as a damper on the light tip node; the
        # explicit step must stay below tip_mass / gain for that damper
        probe = 1e-6
        bumped = ctrl(PlantState(state.theta1, state.theta2 + probe, t), integral)[0]
        gain = abs(bumped - u) / probe / beam.L
        h_max = h_beam if gain == 0 else min(h_beam, tip_mass / gain)
        sub = max(1, math.ceil(dt / h_max))
        h = dt / sub
        for j in range(sub):
            tj = t + j * h
            if j:
                u = ctrl(measure(beam_state, tj), integral)[0]
            tip = float(np.clip(u, -f_max, f_max)) + scenario.disturbance.value_at(tj) / beam.L
            beam_state = pde_step(beam_state, beam, tip, h, damping)
        if ctrl.kind == "pid":
            integral = float(clamp_integral(integral + dt * (ref - state.theta1), scenario.controller.integral_limit))
    return cols


def run(scenario: Scenario) -> RunRecord:
    """Execute one closed-loop experiment and compute its metrics."""
    if scenario.plant.kind == "pde":
        cols = simulate_pde(scenario)
    else:
        cols = simulate_lumped(scenario)
    m = scenario.metrics
    record = RunRecord(scenario, cols, None, _provenance(scenario),
                       bool(np.any(np.abs(cols["theta"]) > THETA_RANGE)))
    record.metrics = summarize(record.log, m.settling_band, m.tail_fraction)
    return record


def batch_objective(scenario: Scenario, gains: np.ndarray) -> np.ndarray:
    """RMSE + weight * chattering index for each row of ``gains``; inf on divergence."""
    cols = simulate_lumped(scenario, np.atleast_2d(gains), strict=False)
    log = TrajectoryLog(cols["t"], cols["theta_ref"], cols["theta"], cols["u_applied"])
    with np.errstate(all="ignore"):
        j = rmse(log) + scenario.metrics.chattering_weight * chattering_index(log)
    return np.where(np.isfinite(j), j, np.inf)


# --------------------------------------------------------------------------
# experiments


METRIC_ROWS = ("rmse", "settling_time", "steady_state_error", "chattering_index")


@dataclass
class ComparisonReport:
    labels: list
    records: list
    published: dict = field(default_factory=lambda: PUBLISHED_TABLE)

    def table(self) -> dict:
        return {row: [getattr(r.metrics, row) for r in self.records] for row in METRIC_ROWS}

    def as_dict(self) -> dict:
        return {
            "columns": self.labels,
            "table": self.table(),
            "runs": [r.summary() for r in self.records],
            "published_reference": {
                "note": "published values, not reproduced by this run",
                "values": self.published,
            },
        }

    def format(self) -> str:
        width = max(12, *(len(label) for label in self.labels))
        lines = ["metric".ljust(20) + "".join(label.rjust(width + 2) for label in self.labels)]
        for row, values in self.table().items():
            cells = "".join(("never" if v is None else f"{v:.6g}").rjust(width + 2) for v in values)
            lines.append(row.ljust(20) + cells)
        lines.append("")
        lines.append("published reference values (not reproduced):")
        names = list(self.published)
        lines.append("metric".ljust(20) + "".join(n.rjust(10) for n in names))
        for row in ("rmse", "settling_time", "steady_state_error"):
            lines.append(row.ljust(20) + "".join(f"{self.published[n][row]:10.3f}" for n in names))
        return "\n".join(lines)


def compare(scenarios, labels=None) -> ComparisonReport:
    scenarios = list(scenarios)
    if len(scenarios) < 2:
        raise MismatchedScenarios("compare needs at least two scenarios")
    first = scenarios[0]
    for sc in scenarios[1:]:
        if sc.resolved_reference() != first.resolved_reference() or sc.duration != first.duration:
            raise MismatchedScenarios("scenarios must share reference and duration")
    if labels is None:
        labels = [sc.label for sc in scenarios]
    return ComparisonReport(list(labels), [run(sc) for sc in scenarios])


def sweep(base: Scenario, parameter: str, values) -> list:
    """One run per value of the dotted scenario field ``parameter``.

    Returns a list of (value, RunRecord) pairs in input order.
    """
    variants = [(v, base.with_value(parameter, v)) for v in values]
    return [(v, run(sc)) for v, sc in variants]
