"""Receding-horizon NMPC for roll-aware waypoint transit.

The optimal control problem is transcribed by multiple shooting: decision
variables are the P controls and the P predicted states after the (fixed)
initial state, linked by the same Euler recursion the plant uses. IPOPT
(through CasADi) solves it; one NLP is built per vessel/wave/horizon and
reused with numeric parameters for the state, time, weights and waypoint.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import casadi as ca
import numpy as np

from .coupling import clamp_input, plant_step
from .vessel import SingularAttitudeError, VesselParams, check_attitude, transform_cg, wrap_angle
from .waves import WaveParams

log = logging.getLogger(__name__)

NX, NU = 12, 2


class NoFeasiblePointError(RuntimeError):
    """The solver returned no point satisfying the constraints."""


class DegeneratePositionError(ValueError):
    """Heading error is undefined at the waypoint itself."""


@dataclass(frozen=True)
class CostWeights:
    """Heading (Q), roll (R), distance (S) and input-rate (W, 2x2) weights."""

    Q: float
    R: float
    S: float
    W: tuple = ((1.0, 0.0), (0.0, 1.0))

    def __post_init__(self):
        W = np.asarray(self.W, dtype=float)
        if W.shape != (2, 2):
            raise ValueError("W must be 2x2")
        object.__setattr__(self, "W", tuple(map(tuple, W.tolist())))
        if min(self.Q, self.R, self.S) < 0:
            raise ValueError("Q, R, S >= 0 required")
        if not np.allclose(W, W.T) or np.linalg.eigvalsh(W).min() < -1e-12:
            raise ValueError("W must be symmetric positive semidefinite")

    def scaled(self, c: float) -> "CostWeights":
        W = (c * np.asarray(self.W)).tolist()
        return CostWeights(c * self.Q, c * self.R, c * self.S, W)

    def vector(self) -> np.ndarray:
        return np.array([self.Q, self.R, self.S, *np.asarray(self.W).ravel()])


@dataclass(frozen=True)
class NmpcConfig:
    """Horizon, sampling period, waypoint, min-speed rule and solver limits.

    With ``normalize_input_rate`` the input-rate term uses rates divided by
    the actuator limits (1/s), so ``W`` weighs both inputs on the same scale.

    The minimum-speed bound on predicted knot k is
    ``min(u_min, u_0 + min_speed_ramp * k * T)``, so a vessel that starts (or
    is pushed) below ``u_min`` is asked to regain it at a bounded acceleration
    instead of facing an infeasible problem.
    """

    P: int = 40
    T: float = 0.1
    waypoint: tuple = (85.0, 75.0)
    u_min: float = 0.5
    min_speed_enabled: bool = True
    min_speed_ramp: float = 0.5
    max_iterations: int = 200
    kkt_tolerance: float = 1e-8
    constraint_tolerance: float = 1e-6
    solve_time_budget: float = 5.0
    semi_implicit: bool = True
    normalize_input_rate: bool = True

    def __post_init__(self):
        object.__setattr__(self, "waypoint", tuple(float(v) for v in self.waypoint))
        if self.P < 1:
            raise ValueError("P >= 1 required")
        if not self.T > 0:
            raise ValueError("T > 0 required")
        if not (self.kkt_tolerance > 0 and self.constraint_tolerance > 0 and self.solve_time_budget > 0):
            raise ValueError("tolerances and time budget must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations >= 1 required")
        if self.min_speed_ramp <= 0:
            raise ValueError("min_speed_ramp > 0 required")

    def speed_bounds(self, u0: float) -> np.ndarray:
        """Lower bounds on predicted surge speed at knots 1..P."""
        k = np.arange(1, self.P + 1)
        if not self.min_speed_enabled:
            return np.full(self.P, -np.inf)
        return np.minimum(self.u_min, u0 + self.min_speed_ramp * k * self.T)

    def rate_scale(self, params: VesselParams) -> tuple[float, float]:
        if self.normalize_input_rate:
            return params.tau_X_max, params.tau_N_max
        return 1.0, 1.0


@dataclass
class NmpcSolution:
    controls: np.ndarray          # (P, 2) tau_X, tau_N
    states: np.ndarray            # (P + 1, 12) eta then nu
    cost: float
    iterations: int
    converged: bool
    solve_time: float
    t0: float = 0.0
    initial_cost: float = math.nan
    status: str = ""
    fallback: bool = False
    lam_x: np.ndarray | None = field(default=None, repr=False)
    lam_g: np.ndarray | None = field(default=None, repr=False)

    @property
    def first_control(self) -> tuple[float, float]:
        return float(self.controls[0, 0]), float(self.controls[0, 1])


# ---------------------------------------------------------------------------
# cost terms (numeric)

def heading_error(eta, waypoint) -> float:
    """Bearing to the waypoint minus yaw, wrapped to (-pi, pi]."""
    dx = waypoint[0] - eta[0]
    dy = waypoint[1] - eta[1]
    if math.hypot(dx, dy) < 1e-6:
        raise DegeneratePositionError("vessel is at the waypoint; heading error undefined")
    return float(wrap_angle(math.atan2(dy, dx) - eta[5]))


def distance_to_waypoint(eta, waypoint) -> float:
    return math.hypot(waypoint[0] - eta[0], waypoint[1] - eta[1])


def stage_cost(eta, u_rate, weights: CostWeights, waypoint, rate_scale=(1.0, 1.0)) -> float:
    """Q e_psi^2 + R phi^2 + S d + u_dot' W u_dot, with u_dot = u_rate / rate_scale."""
    e = heading_error(eta, waypoint)
    ud = np.asarray(u_rate, dtype=float) / np.asarray(rate_scale, dtype=float)
    return (weights.Q * e * e + weights.R * eta[3] ** 2 + weights.S * distance_to_waypoint(eta, waypoint)
            + float(ud @ np.asarray(weights.W) @ ud))


def trajectory_cost(states, controls, u_prev, weights: CostWeights, waypoint, T: float,
                    rate_scale=(1.0, 1.0)) -> float:
    """Transcribed objective: stage costs at knots 0..P, input rates on 0..P-1."""
    controls = np.asarray(controls, dtype=float)
    prev = np.vstack([np.asarray(u_prev, dtype=float), controls[:-1]])
    rates = (controls - prev) / T
    total = 0.0
    for i, x in enumerate(states):
        rate = rates[i] if i < len(rates) else np.zeros(2)
        total += stage_cost(x[:6], rate, weights, waypoint, rate_scale)
    return total


# ---------------------------------------------------------------------------
# symbolic prediction model

def _sx_skew(a):
    return ca.vertcat(ca.horzcat(0, -a[2], a[1]),
                      ca.horzcat(a[2], 0, -a[0]),
                      ca.horzcat(-a[1], a[0], 0))


def symbolic_step(params: VesselParams, wave: WaveParams, T: float, semi_implicit: bool = True) -> ca.Function:
    """CasADi function ``F(x, u, t) -> x_next`` mirroring ``plant_step``."""
    x = ca.SX.sym("x", NX)
    u = ca.SX.sym("u", NU)
    t = ca.SX.sym("t")
    eta, nu = x[0:6], x[6:12]
    phi, theta, psi = eta[3], eta[4], eta[5]

    alpha = ca.atan(wave.max_slope * ca.cos(2 * math.pi * eta[1] / wave.lam
                                            + wave.time_sign * 2 * math.pi * t / wave.T_w))
    phi_eff = phi - alpha * ca.cos(psi)
    theta_eff = theta - alpha * ca.sin(psi)
    W = params.rho * params.g * params.displaced_volume
    G = ca.vertcat(0, 0, params.heave_stiffness * eta[2],
                   W * params.GM_T * ca.sin(phi_eff), W * params.GM_L * ca.sin(theta_eff), 0)
    F_w = wave.force_sign * 0.5 * params.m * params.g * ca.sin(2 * alpha)
    tau_wave = ca.vertcat(F_w * ca.sin(psi), F_w * ca.cos(psi), 0, 0, 0, 0)

    nu1, nu2 = nu[0:3], nu[3:6]
    H = ca.DM(transform_cg(params.r_g))
    CRB_CG = ca.SX.zeros(6, 6)
    CRB_CG[0:3, 0:3] = params.m * _sx_skew(nu2)
    CRB_CG[3:6, 3:6] = -_sx_skew(ca.mtimes(ca.DM(params.I_b), nu2))
    CRB = ca.mtimes([H.T, CRB_CG, H])
    MA = params.M_A
    a1 = ca.mtimes(ca.DM(MA[0:3, 0:3]), nu1) + ca.mtimes(ca.DM(MA[0:3, 3:6]), nu2)
    a2 = ca.mtimes(ca.DM(MA[3:6, 0:3]), nu1) + ca.mtimes(ca.DM(MA[3:6, 3:6]), nu2)
    CA = ca.SX.zeros(6, 6)
    CA[0:3, 3:6] = -_sx_skew(a1)
    CA[3:6, 0:3] = -_sx_skew(a1)
    CA[3:6, 3:6] = -_sx_skew(a2)
    if params.neglect_munk_moment:
        for i, j in ((5, 0), (5, 1), (0, 5), (1, 5)):
            CA[i, j] = 0
    Cnu = ca.mtimes(CRB + CA, nu)
    Dnu = ca.mtimes(ca.DM(params.D_lin), nu) - ca.DM(params.quadratic_damping) * ca.fabs(nu) * nu
    U = ca.vertcat(u[0], 0, 0, 0, 0, u[1])
    nu_dot = ca.mtimes(ca.DM(params.M_inv), U + tau_wave - Cnu - Dnu - G)
    nu_next = nu + T * nu_dot

    cphi, sphi, cth, sth, cpsi, spsi = ca.cos(phi), ca.sin(phi), ca.cos(theta), ca.sin(theta), ca.cos(psi), ca.sin(psi)
    R = ca.vertcat(
        ca.horzcat(cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth),
        ca.horzcat(spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi),
        ca.horzcat(-sth, cth * sphi, cth * cphi))
    Tm = ca.vertcat(ca.horzcat(1, sphi * sth / cth, cphi * sth / cth),
                    ca.horzcat(0, cphi, -sphi),
                    ca.horzcat(0, sphi / cth, cphi / cth))
    v = nu_next if semi_implicit else nu
    eta_next = eta + T * ca.vertcat(ca.mtimes(R, v[0:3]), ca.mtimes(Tm, v[3:6]))
    return ca.Function("F", [x, u, t], [ca.vertcat(eta_next, nu_next)], ["x", "u", "t"], ["x_next"])


# Smooths the distance cone at the waypoint so gradients stay finite there.
DISTANCE_SMOOTHING = 1e-2


def _sx_stage(x, rate, wp, weights_sym):
    Q, R, S = weights_sym[0], weights_sym[1], weights_sym[2]
    Wm = ca.reshape(weights_sym[3:7], 2, 2).T
    dx, dy = wp[0] - x[0], wp[1] - x[1]
    # A plan may put a knot exactly on the waypoint, where the bearing has a
    # 0/0 gradient; evaluate atan2(0, 1) there instead.
    at_wp = dx * dx + dy * dy < 1e-18
    a = ca.atan2(ca.if_else(at_wp, 0.0, dy), ca.if_else(at_wp, 1.0, dx)) - x[5]
    e = ca.atan2(ca.sin(a), ca.cos(a))
    d = ca.sqrt(dx * dx + dy * dy + DISTANCE_SMOOTHING ** 2)
    cost = Q * e * e + R * x[3] * x[3] + S * d
    if rate is not None:
        cost += ca.mtimes([rate.T, Wm, rate])
    return cost


class Transcription:
    """Multiple-shooting NLP for a fixed vessel, wave, horizon and period.

    Decision vector ``w = [vec(U), vec(X_1..X_P)]`` (column-major, one column
    per step); parameter vector ``p = [x0, t0, u_prev, Q, R, S, vec(W), x_d, y_d]``.
    """

    def __init__(self, params: VesselParams, wave: WaveParams, P: int, T: float, semi_implicit: bool,
                 rate_scale: tuple, solver_key: tuple):
        self.params, self.wave, self.P, self.T = params, wave, P, T
        self.F = symbolic_step(params, wave, T, semi_implicit)
        U = ca.SX.sym("U", NU, P)
        X = ca.SX.sym("X", NX, P)
        p = ca.SX.sym("p", NX + 1 + NU + 7 + 2)
        x0, t0, u_prev = p[0:NX], p[NX], p[NX + 1:NX + 3]
        wsym, wp = p[NX + 3:NX + 10], p[NX + 10:NX + 12]

        Xfull = ca.horzcat(x0, X)
        g, J = [], 0
        for k in range(P):
            g.append(X[:, k] - self.F(Xfull[:, k], U[:, k], t0 + k * T))
            last = u_prev if k == 0 else U[:, k - 1]
            rate = (U[:, k] - last) / T / ca.DM(rate_scale)
            J += _sx_stage(Xfull[:, k], rate, wp, wsym)
        J += _sx_stage(Xfull[:, P], None, wp, wsym)

        self.w = ca.vertcat(ca.vec(U), ca.vec(X))
        self.p = p
        self.nw = self.w.shape[0]
        self.ng = NX * P
        self.objective = ca.Function("J", [self.w, p], [J])
        self.gradient = ca.Function("gradJ", [self.w, p], [ca.gradient(J, self.w)])

        # The NLP sees J divided by the total weight, so multiplying all weights
        # by c > 0 hands IPOPT the identical problem (same iterates, same plan).
        weight_sum = wsym[0] + wsym[1] + wsym[2] + ca.sum1(ca.fabs(wsym[3:7]))
        nlp = {"x": self.w, "p": p, "f": J / ca.fmax(weight_sum, 1e-12), "g": ca.vertcat(*g)}
        max_iter, tol, ctol, budget = solver_key
        base = {
            "ipopt.print_level": 0, "print_time": False, "ipopt.sb": "yes",
            "ipopt.max_iter": max_iter, "ipopt.tol": tol, "ipopt.constr_viol_tol": ctol * 1e-2,
            "ipopt.max_wall_time": budget, "ipopt.acceptable_iter": 0,
            "ipopt.bound_relax_factor": 0.0, "ipopt.honor_original_bounds": "yes",
            "calc_lam_p": False,
        }
        self.cold = ca.nlpsol("nmpc_cold", "ipopt", nlp, base)
        warm = dict(base)
        warm.update({
            "ipopt.warm_start_init_point": "yes", "ipopt.mu_init": 1e-6,
            "ipopt.warm_start_bound_push": 1e-9, "ipopt.warm_start_mult_bound_push": 1e-9,
            "ipopt.warm_start_slack_bound_push": 1e-9,
        })
        self.warm = ca.nlpsol("nmpc_warm", "ipopt", nlp, warm)

        Ur = ca.SX.sym("U", NU, P)
        xr, tr = ca.SX.sym("x0", NX), ca.SX.sym("t0")
        xs, xk = [], xr
        for k in range(P):
            xk = self.F(xk, Ur[:, k], tr + k * T)
            xs.append(xk)
        self.rollout = ca.Function("rollout", [xr, Ur, tr], [ca.horzcat(*xs)])

    def pack(self, controls: np.ndarray, states: np.ndarray) -> np.ndarray:
        return np.concatenate([controls.ravel(), states[1:].ravel()])

    def unpack(self, w) -> tuple[np.ndarray, np.ndarray]:
        w = np.asarray(w, dtype=float).ravel()
        controls = w[:NU * self.P].reshape(self.P, NU)
        states = w[NU * self.P:].reshape(self.P, NX)
        return controls, states


@lru_cache(maxsize=16)
def _transcription(params, wave, P, T, semi_implicit, rate_scale, solver_key) -> Transcription:
    return Transcription(params, wave, P, T, semi_implicit, rate_scale, solver_key)


@dataclass
class OcpProblem:
    """A fully specified OCP instance: transcription plus numeric data."""

    transcription: Transcription
    x0: np.ndarray
    t0: float
    u_prev: np.ndarray
    weights: CostWeights
    cfg: NmpcConfig
    params: VesselParams
    wave: WaveParams
    lbw: np.ndarray
    ubw: np.ndarray

    @property
    def n_controls(self) -> int:
        return NU * self.cfg.P

    def parameter_vector(self) -> np.ndarray:
        return np.concatenate([self.x0, [self.t0], self.u_prev, self.weights.vector(), self.cfg.waypoint])

    def objective(self, w) -> float:
        return float(self.transcription.objective(w, self.parameter_vector()))

    def gradient(self, w) -> np.ndarray:
        return np.asarray(self.transcription.gradient(w, self.parameter_vector())).ravel()

    def rollout(self, controls) -> np.ndarray:
        """Predicted states at knots 0..P for a control sequence (P, 2)."""
        X = np.asarray(self.transcription.rollout(self.x0, np.asarray(controls).T, self.t0)).T
        return np.vstack([self.x0, X])

    def control_objective(self, controls) -> float:
        """Single-shooting view of the objective as a function of controls only."""
        controls = np.asarray(controls, dtype=float).reshape(self.cfg.P, NU)
        return self.objective(self.transcription.pack(controls, self.rollout(controls)))


def build_ocp(state, wave: WaveParams, t0: float, weights: CostWeights, cfg: NmpcConfig,
              params: VesselParams, u_prev=(0.0, 0.0)) -> OcpProblem:
    """Set up the horizon problem from the current (eta, nu) at time ``t0``."""
    eta, nu = state
    x0 = np.concatenate([np.asarray(eta, dtype=float), np.asarray(nu, dtype=float)])
    if x0.shape != (NX,) or not np.all(np.isfinite(x0)):
        raise ValueError("state must be finite (eta, nu) 6-vectors")
    check_attitude(x0[4])
    solver_key = (cfg.max_iterations, cfg.kkt_tolerance, cfg.constraint_tolerance, cfg.solve_time_budget)
    tr = _transcription(params, wave, cfg.P, cfg.T, cfg.semi_implicit, cfg.rate_scale(params), solver_key)

    P = cfg.P
    lbU = np.tile([-params.tau_X_max, -params.tau_N_max], P)
    ubU = -lbU
    lbX = np.full((P, NX), -np.inf)
    ubX = np.full((P, NX), np.inf)
    lbX[:, 6] = cfg.speed_bounds(x0[6])
    lbw = np.concatenate([lbU, lbX.ravel()])
    ubw = np.concatenate([ubU, ubX.ravel()])
    return OcpProblem(tr, x0, float(t0), np.asarray(u_prev, dtype=float), weights, cfg, params, wave, lbw, ubw)


def _initial_guess(problem: OcpProblem, warm_start: NmpcSolution | None):
    P = problem.cfg.P
    lam_x = lam_g = None
    if warm_start is None:
        controls = np.zeros((P, NU))
        controls[:, 0] = np.clip(problem.u_prev[0], -problem.params.tau_X_max, problem.params.tau_X_max)
        controls[:, 1] = np.clip(problem.u_prev[1], -problem.params.tau_N_max, problem.params.tau_N_max)
    else:
        shift = int(round((problem.t0 - warm_start.t0) / problem.cfg.T))
        shift = min(max(shift, 0), P)
        prev = warm_start.controls
        controls = np.vstack([prev[shift:], np.repeat(prev[-1:], shift, axis=0)])
        if shift == 0 and warm_start.lam_x is not None:
            lam_x, lam_g = warm_start.lam_x, warm_start.lam_g
        elif warm_start.lam_x is not None:
            lam_x, lam_g = _shift_multipliers(warm_start, shift, P)
    states = problem.rollout(controls)
    return controls, states, lam_x, lam_g


def _shift_multipliers(sol: NmpcSolution, shift: int, P: int):
    lu = sol.lam_x[:NU * P].reshape(P, NU)
    lx = sol.lam_x[NU * P:].reshape(P, NX)
    lg = sol.lam_g.reshape(P, NX)
    sh = lambda a: np.vstack([a[shift:], np.repeat(a[-1:], shift, axis=0)])
    return np.concatenate([sh(lu).ravel(), sh(lx).ravel()]), sh(lg).ravel()


def solve(problem: OcpProblem, warm_start: NmpcSolution | None = None) -> NmpcSolution:
    """Solve the horizon problem, optionally warm-started from a previous plan.

    Returns the solver's point when it converges. Otherwise the controls of
    the best iterate are re-simulated so the returned trajectory satisfies the
    dynamics exactly; if that trajectory breaks the speed or input bounds,
    :class:`NoFeasiblePointError` is raised.
    """
    tr = problem.transcription
    cfg = problem.cfg
    controls0, states0, lam_x, lam_g = _initial_guess(problem, warm_start)
    w0 = np.clip(tr.pack(controls0, states0), problem.lbw, problem.ubw)
    pvec = problem.parameter_vector()
    initial_cost = float(tr.objective(tr.pack(controls0, states0), pvec))

    args = dict(x0=w0, p=pvec, lbx=problem.lbw, ubx=problem.ubw, lbg=0.0, ubg=0.0)
    solver = tr.cold
    if lam_x is not None:
        solver = tr.warm
        args.update(lam_x0=lam_x, lam_g0=lam_g)
    start = time.perf_counter()
    res = solver(**args)
    elapsed = time.perf_counter() - start
    stats = solver.stats()

    w = np.asarray(res["x"]).ravel()
    controls, X = tr.unpack(w)
    states = np.vstack([problem.x0, X])
    converged = bool(stats.get("success", False))
    if not converged or not np.all(np.isfinite(w)):
        controls = np.clip(np.nan_to_num(controls), problem.lbw[:NU * cfg.P].reshape(-1, NU),
                           problem.ubw[:NU * cfg.P].reshape(-1, NU))
        states = problem.rollout(controls)
        lb_speed = problem.lbw[NU * cfg.P:].reshape(cfg.P, NX)[:, 6]
        if not np.all(np.isfinite(states)) or np.any(states[1:, 6] < lb_speed - cfg.constraint_tolerance):
            raise NoFeasiblePointError(f"solver status {stats.get('return_status')}: no feasible plan")
        w = tr.pack(controls, states)
    cost = float(tr.objective(w, pvec))
    return NmpcSolution(
        controls=controls, states=states, cost=cost, iterations=int(stats.get("iter_count", 0)),
        converged=converged, solve_time=elapsed, t0=problem.t0, initial_cost=initial_cost,
        status=str(stats.get("return_status", "")),
        lam_x=np.asarray(res["lam_x"]).ravel(), lam_g=np.asarray(res["lam_g"]).ravel(),
    )


def receding_horizon_step(state, wave: WaveParams, t: float, weights: CostWeights, cfg: NmpcConfig,
                          params: VesselParams, prev: NmpcSolution | None = None,
                          u_prev=(0.0, 0.0)) -> tuple[tuple[float, float], NmpcSolution]:
    """Plan over the horizon from ``state`` at time ``t`` and return the first control.

    On solver failure the previous plan's second control is reused (or zero
    thrust if there is no previous plan) and the returned solution is flagged
    with ``fallback=True``.
    """
    problem = build_ocp(state, wave, t, weights, cfg, params, u_prev)
    start = time.perf_counter()
    try:
        sol = solve(problem, prev)
    except (NoFeasiblePointError, RuntimeError, SingularAttitudeError) as exc:
        log.warning("NMPC solve failed at t=%.2f (%s); using fallback control", t, exc)
        if prev is not None and len(prev.controls) > 1:
            controls = np.vstack([prev.controls[1:], prev.controls[-1:]])
        else:
            controls = np.zeros((cfg.P, NU))
        states = problem.rollout(controls)
        sol = NmpcSolution(controls=controls, states=states,
                           cost=problem.control_objective(controls), iterations=0, converged=False,
                           solve_time=time.perf_counter() - start, t0=t, status=str(exc), fallback=True)
    return clamp_input(sol.first_control, params), sol


def simulate_plan(problem: OcpProblem, controls) -> np.ndarray:
    """Reference rollout of a plan through the numpy plant (for cross-checks)."""
    cfg = problem.cfg
    states = [problem.x0]
    eta, nu = problem.x0[:6], problem.x0[6:]
    for k, u in enumerate(np.asarray(controls)):
        eta, nu = plant_step(eta, nu, u, problem.wave, problem.t0 + k * cfg.T, cfg.T, problem.params,
                             semi_implicit=cfg.semi_implicit)
        states.append(np.concatenate([eta, nu]))
    return np.array(states)


__all__ = [
    "CostWeights", "NmpcConfig", "NmpcSolution", "OcpProblem", "NoFeasiblePointError",
    "DegeneratePositionError", "heading_error", "distance_to_waypoint", "stage_cost",
    "trajectory_cost", "build_ocp", "solve", "receding_horizon_step", "symbolic_step",
    "simulate_plan",
]
