"""Roll-aware nonlinear MPC for a twin-thruster USV in regular waves."""
from .coupling import effective_attitude, plant_step, simulate_moored, wave_force
from .nmpc import (
    CostWeights,
    NmpcConfig,
    NmpcSolution,
    build_ocp,
    receding_horizon_step,
    solve,
)
from .sim import Metrics, Scenario, TrajectoryRecord, compare_runs, compute_metrics, run_closed_loop
from .vessel import ControlInput, Pose, Twist, VesselParams
from .waves import CALM, REFERENCE_WAVE, WaveParams, elevation, slope, wave_angle

__all__ = [
    "CALM", "ControlInput", "CostWeights", "Metrics", "NmpcConfig", "NmpcSolution", "Pose",
    "Scenario", "REFERENCE_WAVE", "TrajectoryRecord", "Twist", "VesselParams", "WaveParams",
    "build_ocp", "compare_runs", "compute_metrics", "effective_attitude", "plant_step",
    "receding_horizon_step", "run_closed_loop", "simulate_moored", "solve", "wave_force",
    "elevation", "slope", "wave_angle",
]
