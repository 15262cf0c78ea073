"""Wave-to-vessel coupling and the disturbed plant step.

Wave-induced roll and pitch enter only through the restoring term, which is
evaluated at the attitude relative to the local water surface. The slope of
the surface also produces a lateral buoyancy force along world y.
"""
from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np

from .vessel import (
    SINGULARITY_MARGIN,
    SingularAttitudeError,
    VesselParams,
    check_attitude,
    dynamics,
    euler_step,
    restoring_force,
)
from .waves import WaveParams, lateral_force_magnitude, wave_angle

log = logging.getLogger(__name__)


class EffectiveAttitude(NamedTuple):
    phi_eff: float
    theta_eff: float


def effective_attitude(eta, alpha: float) -> EffectiveAttitude:
    phi, theta, psi = eta[3], eta[4], eta[5]
    phi_eff = phi - alpha * math.cos(psi)
    theta_eff = theta - alpha * math.sin(psi)
    limit = math.pi / 2 - SINGULARITY_MARGIN
    if abs(phi_eff) >= limit or abs(theta_eff) >= limit:
        raise SingularAttitudeError("wave-relative attitude outside the singularity guard")
    return EffectiveAttitude(phi_eff, theta_eff)


def wave_force(alpha: float, psi: float, params: VesselParams, sign: float = 1.0) -> np.ndarray:
    """Body-frame lateral slope force; world-frame (0, F_w, 0) rotated by yaw only."""
    F_w = sign * float(lateral_force_magnitude(alpha, params.m, params.g))
    return np.array([F_w * math.sin(psi), F_w * math.cos(psi), 0.0, 0.0, 0.0, 0.0])


def clamp_input(u_in, params: VesselParams) -> tuple[float, float]:
    tau_X, tau_N = float(u_in[0]), float(u_in[1])
    cX = min(max(tau_X, -params.tau_X_max), params.tau_X_max)
    cN = min(max(tau_N, -params.tau_N_max), params.tau_N_max)
    if cX != tau_X or cN != tau_N:
        log.warning("control input (%g, %g) outside actuator limits; clamped", tau_X, tau_N)
    return cX, cN


def plant_rates(eta, nu, u_in, wave: WaveParams, t: float,
                params: VesselParams) -> tuple[np.ndarray, float]:
    """Body acceleration under waves and the wave angle at the vessel."""
    alpha = float(wave_angle(wave, eta[1], t))
    att = effective_attitude(eta, alpha)
    g_force = restoring_force(params, att.phi_eff, att.theta_eff, eta[2])
    tau_wave = wave_force(alpha, eta[5], params, wave.force_sign)
    return dynamics(params, nu, g_force, u_in, tau_wave), alpha


def plant_step(eta, nu, u_in, wave: WaveParams, t: float, T: float, params: VesselParams,
               substeps: int = 1, semi_implicit: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Advance the wave-disturbed vessel by one sampling period ``T``.

    The input is held constant over the period. With ``substeps > 1`` the
    period is split into equal Euler sub-steps (the controller model always
    uses a single step). ``semi_implicit`` selects the Euler variant, see
    :func:`usv_nmpc.vessel.euler_step`.
    """
    u_in = clamp_input(u_in, params)
    eta = np.asarray(eta, dtype=float)
    nu = np.asarray(nu, dtype=float)
    check_attitude(eta[4])
    h = T / substeps
    for i in range(substeps):
        nu_dot, _ = plant_rates(eta, nu, u_in, wave, t + i * h, params)
        eta, nu = euler_step(eta, nu, nu_dot, h, semi_implicit)
    return eta, nu


def simulate_moored(params: VesselParams, wave: WaveParams, duration: float, T: float = 0.01,
                    y0: float = 0.0, psi: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Roll/pitch/heave response of a vessel held at fixed (x, y, psi).

    Returns the time grid and the roll history. The planar degrees of freedom
    (surge, sway, yaw) are reset after every step, which models a stiff mooring.
    """
    n = int(round(duration / T))
    eta = np.array([0.0, y0, 0.0, 0.0, 0.0, psi])
    nu = np.zeros(6)
    phi = np.empty(n + 1)
    phi[0] = eta[3]
    for k in range(n):
        eta, nu = plant_step(eta, nu, (0.0, 0.0), wave, k * T, T, params)
        eta[[0, 1, 5]] = (0.0, y0, psi)
        nu[[0, 1, 5]] = 0.0
        phi[k + 1] = eta[3]
    return np.arange(n + 1) * T, phi
