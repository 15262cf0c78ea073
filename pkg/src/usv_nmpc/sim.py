"""Closed-loop simulation of the NMPC-controlled vessel and run metrics."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .coupling import plant_step
from .nmpc import (
    CostWeights,
    NmpcConfig,
    NmpcSolution,
    distance_to_waypoint,
    receding_horizon_step,
    stage_cost,
)
from .vessel import VesselParams
from .waves import WaveParams, wave_angle

log = logging.getLogger(__name__)

INITIAL_POSE = (0.0, 0.0, 0.0, 0.0, 0.0, math.pi / 2)


@dataclass(frozen=True)
class Scenario:
    """Everything one closed-loop run depends on.

    The waypoint lives in ``nmpc`` (the controller needs it); ``seed`` is
    carried for bookkeeping only since the simulation is deterministic.
    """

    params: VesselParams
    wave: WaveParams
    weights: CostWeights
    nmpc: NmpcConfig = NmpcConfig()
    eta0: tuple = INITIAL_POSE
    nu0: tuple = (0.0,) * 6
    arrival_radius: float = 2.0
    t_max: float = 180.0
    seed: int = 0
    label: str = "run"

    def __post_init__(self):
        object.__setattr__(self, "eta0", tuple(float(v) for v in self.eta0))
        object.__setattr__(self, "nu0", tuple(float(v) for v in self.nu0))
        if len(self.eta0) != 6 or len(self.nu0) != 6:
            raise ValueError("initial pose and twist must have 6 components")
        if not all(map(math.isfinite, self.eta0 + self.nu0)):
            raise ValueError("initial pose and twist must be finite")
        if not self.arrival_radius > 0:
            raise ValueError("arrival radius > 0 required")
        if not self.t_max > 0:
            raise ValueError("t_max > 0 required")

    @property
    def waypoint(self) -> tuple:
        return self.nmpc.waypoint

    @property
    def T(self) -> float:
        return self.nmpc.T


COLUMNS = ("t", "x", "y", "z", "phi", "theta", "psi", "u", "v", "w", "p", "q", "r",
           "tau_X", "tau_N", "alpha", "stage_cost", "solve_time", "solver_converged")


@dataclass
class TrajectoryRecord:
    """Per-step log, one row per sampling instant from t = 0.

    Row k holds the state at ``t_k = k T``, the input applied over
    ``[t_k, t_k + T)`` and the stats of the solve that produced it. The last
    row is the terminal state: no input is applied from it, so its input is
    zero, its solve time zero and its converged flag false.
    """

    t: np.ndarray
    eta: np.ndarray          # (n, 6)
    nu: np.ndarray           # (n, 6)
    tau: np.ndarray          # (n, 2)
    alpha: np.ndarray
    stage_cost: np.ndarray
    solve_time: np.ndarray
    converged: np.ndarray    # bool
    fallback: np.ndarray     # bool, not serialized

    def __len__(self) -> int:
        return len(self.t)

    @property
    def phi(self) -> np.ndarray:
        return self.eta[:, 3]

    @property
    def n_solves(self) -> int:
        return max(len(self) - 1, 0)

    def as_array(self) -> np.ndarray:
        """Rows in ``COLUMNS`` order."""
        return np.column_stack([self.t, self.eta, self.nu, self.tau, self.alpha, self.stage_cost,
                                self.solve_time, self.converged.astype(float)])

    @classmethod
    def from_array(cls, rows) -> "TrajectoryRecord":
        a = np.asarray(rows, dtype=float).reshape(-1, len(COLUMNS))
        return cls(t=a[:, 0], eta=a[:, 1:7], nu=a[:, 7:13], tau=a[:, 13:15], alpha=a[:, 15],
                   stage_cost=a[:, 16], solve_time=a[:, 17], converged=a[:, 18] != 0,
                   fallback=np.zeros(len(a), dtype=bool))


@dataclass(frozen=True)
class Metrics:
    avg_roll_deg: float
    max_roll_deg: float
    time_to_waypoint: float | None
    mean_solve_time: float
    max_solve_time: float
    fallbacks: int = 0
    error: str | None = None

    @property
    def reached_waypoint(self) -> bool:
        return self.time_to_waypoint is not None


class _Log:
    def __init__(self):
        self.rows, self.fallback = [], []

    def add(self, t, eta, nu, tau, alpha, cost, sol: NmpcSolution | None):
        solve_time = sol.solve_time if sol is not None else 0.0
        conv = float(sol.converged) if sol is not None else 0.0
        self.rows.append([t, *eta, *nu, *tau, alpha, cost, solve_time, conv])
        self.fallback.append(bool(sol is not None and sol.fallback))

    def record(self) -> TrajectoryRecord:
        rec = TrajectoryRecord.from_array(self.rows)
        rec.fallback = np.array(self.fallback, dtype=bool)
        return rec


def _logged_cost(eta, rate, scenario: Scenario) -> float:
    cfg = scenario.nmpc
    # heading is undefined exactly on the waypoint; drop that term there
    if distance_to_waypoint(eta, scenario.waypoint) < 1e-6:
        w = scenario.weights
        weights = CostWeights(0.0, w.R, w.S, w.W)
    else:
        weights = scenario.weights
    return stage_cost(eta, rate, weights, scenario.waypoint, cfg.rate_scale(scenario.params))


def run_closed_loop(scenario: Scenario) -> tuple[TrajectoryRecord, Metrics]:
    """Run the receding-horizon loop until arrival, ``t_max`` or an error.

    Errors (singular attitude, solver aborts, ...) end the run; the log up to
    the failing instant is kept and the message is stored in ``Metrics.error``.
    """
    T = scenario.T
    n_max = math.floor(scenario.t_max / T + 1e-9)
    eta = np.array(scenario.eta0)
    nu = np.array(scenario.nu0)
    u_prev = (0.0, 0.0)
    prev = None
    out = _Log()
    error = None
    k = 0
    while True:
        t = k * T
        alpha = float(wave_angle(scenario.wave, eta[1], t))
        done = (distance_to_waypoint(eta, scenario.waypoint) <= scenario.arrival_radius
                or k >= n_max)
        if not done:
            try:
                u, sol = receding_horizon_step((eta, nu), scenario.wave, t, scenario.weights,
                                               scenario.nmpc, scenario.params, prev, u_prev)
                eta_next, nu_next = plant_step(eta, nu, u, scenario.wave, t, T, scenario.params,
                                               semi_implicit=scenario.nmpc.semi_implicit)
            except Exception as exc:  # the run is aborted, not the program
                error = f"{type(exc).__name__}: {exc}"
                log.error("run %r aborted at t=%.2f: %s", scenario.label, t, error)
                done = True
        if done:
            out.add(t, eta, nu, (0.0, 0.0), alpha, _logged_cost(eta, (0.0, 0.0), scenario), None)
            break
        rate = ((u[0] - u_prev[0]) / T, (u[1] - u_prev[1]) / T)
        out.add(t, eta, nu, u, alpha, _logged_cost(eta, rate, scenario), sol)
        eta, nu, u_prev, prev = eta_next, nu_next, u, sol
        k += 1
    traj = out.record()
    metrics = compute_metrics(traj, scenario)
    if error is not None:
        metrics = replace(metrics, error=error)
    return traj, metrics


def compute_metrics(traj: TrajectoryRecord, scenario: Scenario) -> Metrics:
    """Mean and max absolute roll (deg), arrival time and solve-time stats."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    roll = np.degrees(np.abs(traj.phi))
    d = np.hypot(scenario.waypoint[0] - traj.eta[:, 0], scenario.waypoint[1] - traj.eta[:, 1])
    hits = np.flatnonzero(d <= scenario.arrival_radius)
    ttw = float(traj.t[hits[0]]) if hits.size else None
    solves = traj.solve_time[:traj.n_solves]
    return Metrics(
        avg_roll_deg=float(np.mean(roll)),
        max_roll_deg=float(np.max(roll)),
        time_to_waypoint=ttw,
        mean_solve_time=float(np.mean(solves)) if solves.size else 0.0,
        max_solve_time=float(np.max(solves)) if solves.size else 0.0,
        fallbacks=int(np.count_nonzero(traj.fallback)),
    )


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    metrics: Metrics
    avg_roll_change_pct: float
    max_roll_change_pct: float


@dataclass
class Comparison:
    baseline: str
    rows: list[ComparisonRow]
    failed: list[str] = field(default_factory=list)

    def row(self, label: str) -> ComparisonRow:
        return next(r for r in self.rows if r.label == label)

    def format(self) -> str:
        head = f"{'label':<14}{'avg roll':>10}{'max roll':>10}{'time to wpt':>13}{'d avg %':>10}{'d max %':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            m = r.metrics
            ttw = f"{m.time_to_waypoint:.1f}" if m.reached_waypoint else "N/A"
            lines.append(f"{r.label:<14}{m.avg_roll_deg:>10.2f}{m.max_roll_deg:>10.2f}{ttw:>13}"
                         f"{r.avg_roll_change_pct:>+10.1f}{r.max_roll_change_pct:>+10.1f}")
        lines += [f"{label:<14}  run failed, excluded" for label in self.failed]
        return "\n".join(lines)


def percent_change(baseline: float, value: float) -> float:
    """Relative change in percent; increases are positive."""
    if baseline == 0:
        return 0.0 if value == 0 else math.copysign(math.inf, value)
    return 100.0 * (value - baseline) / baseline


def compare_runs(results, baseline: str = "Direct") -> Comparison:
    """Tabulate ``(label, Metrics)`` pairs against the ``baseline`` label.

    Runs that ended in an error are excluded from the table and listed in
    ``Comparison.failed``.
    """
    results = list(results)
    if len(results) < 2:
        raise ValueError("need at least two results to compare")
    by_label = dict(results)
    if baseline not in by_label:
        raise KeyError(f"baseline {baseline!r} not among results")
    base = by_label[baseline]
    if base.error is not None:
        raise ValueError(f"baseline {baseline!r} ended in an error: {base.error}")
    rows, failed = [], []
    for label, m in results:
        if m.error is not None:
            failed.append(label)
            continue
        rows.append(ComparisonRow(label, m, percent_change(base.avg_roll_deg, m.avg_roll_deg),
                                  percent_change(base.max_roll_deg, m.max_roll_deg)))
    return Comparison(baseline, rows, failed)


def timed_run(scenario: Scenario) -> tuple[TrajectoryRecord, Metrics, float]:
    start = time.perf_counter()
    traj, metrics = run_closed_loop(scenario)
    return traj, metrics, time.perf_counter() - start
