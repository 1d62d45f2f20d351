"""Timoshenko-beam wrist model, sliding mode control and PSO gain tuning."""

__version__ = "0.1.0"

from .beam import (
    BeamSection,
    LoadCase,
    TipPose,
    desired_bending_angle,
    moment_tip_deflection,
    shear_tip_deflection,
    static_deflection_point_load,
    tip_position,
)
from .control import (
    PidGains,
    SmcGains,
    SmcOutput,
    Switching,
    pid_control,
    reaching_condition_check,
    sliding_surface,
    smc_control,
)
from .harness import ComparisonReport, RunRecord, compare, run, sweep
from .metrics import (
    MetricsSummary,
    TrajectoryLog,
    chattering_index,
    rmse,
    settling_time,
    steady_state_error,
)
from .plant import (
    AffineDynamics,
    LumpedPlantParams,
    PdePlantState,
    PlantState,
    bending_angle_from_pde,
    nominal_dynamics,
    pde_step,
    rk4_step,
    truth_step,
)
from .scenario import Scenario
from .tuning import PsoConfig, TuningResult, objective, pso_minimize
