import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq
from scipy.spatial.transform import Rotation

from usv_nmpc.vessel import (
    SingularAttitudeError,
    VesselParams,
    coriolis_matrix,
    damping_matrix,
    dynamics,
    euler_step,
    mass_matrix,
    restoring_force,
    rotation_matrix,
    wrap_angle,
)

finite = st.floats(-5.0, 5.0, allow_nan=False)
twists = st.lists(finite, min_size=6, max_size=6).map(np.array)
guarded = st.floats(-math.pi / 2 + 0.011, math.pi / 2 - 0.011)
angles = st.floats(-math.pi, math.pi)


def diagonal_vessel(otter, **changes):
    """Otter variant with the CG at the body origin and a diagonal inertia tensor."""
    base = dict(r_g=np.zeros(3), I_b=np.diag(np.diag(otter.I_b)))
    base.update(changes)
    return otter.replace(**base)


# --- parameters --------------------------------------------------------------

def test_reference_params_load(otter):
    assert otter.m == 80.0
    assert otter.M.shape == (6, 6)
    np.testing.assert_array_equal(otter.M_A, -np.diag(otter.added_mass))


def test_mass_matrix_symmetric_positive_definite(otter):
    M = mass_matrix(otter)
    np.testing.assert_allclose(M, M.T, atol=1e-12)
    assert np.linalg.eigvalsh(M).min() > 0


def test_mass_matrix_without_added_mass_is_rigid_body(otter):
    M = mass_matrix(otter.replace(added_mass=np.zeros(6)))
    # oracle: rigid-body inertia written out about the body origin
    m, rg, Ib = otter.m, otter.r_g, otter.I_b
    S = np.array([[0, -rg[2], rg[1]], [rg[2], 0, -rg[0]], [-rg[1], rg[0], 0]])
    expect = np.block([[m * np.eye(3), -m * S], [m * S, Ib - m * S @ S]])
    np.testing.assert_allclose(M, expect, rtol=0, atol=1e-12)


def test_surge_mass_entry(otter):
    assert mass_matrix(otter)[0, 0] == pytest.approx(otter.m - otter.added_mass[0], abs=1e-12)


@pytest.mark.parametrize("bad", [
    dict(m=-1.0),
    dict(I_b=np.diag([1.0, -1.0, 1.0])),
    dict(I_b=np.array([[1.0, 0.5, 0], [0, 1.0, 0], [0, 0, 1.0]])),
    dict(tau_X_max=0.0),
    dict(tau_N_max=-3.0),
    dict(added_mass=np.array([200.0, 0, 0, 0, 0, 0])),
])
def test_invalid_params_rejected(otter, bad):
    with pytest.raises(ValueError):
        otter.replace(**bad)


def test_unknown_param_key_rejected():
    with pytest.raises(ValueError, match="bogus"):
        VesselParams.from_dict({"bogus": 1})


# --- kinematics --------------------------------------------------------------

def test_rotation_identity_at_zero_attitude():
    np.testing.assert_array_equal(rotation_matrix(0, 0, 0), np.eye(6))


def test_rotation_pure_yaw_quarter_turn():
    R = rotation_matrix(0, 0, math.pi / 2)[:3, :3]
    assert R[1, 0] == pytest.approx(1.0, abs=1e-15)
    assert R[0, 0] == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=1000)
@given(guarded, guarded, angles)
def test_rotation_orthonormal_and_matches_composed_rotations(phi, theta, psi):
    R = rotation_matrix(phi, theta, psi)[:3, :3]
    np.testing.assert_allclose(R.T @ R, np.eye(3), atol=1e-12)
    assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-12)
    oracle = Rotation.from_euler("ZYX", [psi, theta, phi]).as_matrix()
    np.testing.assert_allclose(R, oracle, atol=1e-12)


def test_euler_rate_block_maps_rates():
    # pure yaw rate in a level attitude is pure psi_dot
    J = rotation_matrix(0.0, 0.0, 0.3)
    np.testing.assert_allclose(J @ np.array([0, 0, 0, 0, 0, 0.7]), [0, 0, 0, 0, 0, 0.7], atol=1e-15)


def test_singular_pitch_rejected():
    with pytest.raises(SingularAttitudeError):
        rotation_matrix(0.0, math.pi / 2 - 0.005, 0.0)


@given(st.floats(-50, 50))
def test_wrap_angle_range(a):
    w = float(wrap_angle(a))
    assert -math.pi < w <= math.pi
    assert math.isclose(math.cos(w), math.cos(a), abs_tol=1e-9)
    assert math.isclose(math.sin(w), math.sin(a), abs_tol=1e-9)


def test_wrap_angle_boundary():
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)


# --- Coriolis and damping ----------------------------------------------------

def test_coriolis_vanishes_at_rest(otter):
    np.testing.assert_array_equal(coriolis_matrix(otter, np.zeros(6)), np.zeros((6, 6)))


@settings(max_examples=1000)
@given(twists)
def test_coriolis_does_no_work(otter, nu):
    assert abs(nu @ coriolis_matrix(otter, nu) @ nu) < 1e-9


@settings(max_examples=200)
@given(twists)
def test_coriolis_does_no_work_with_munk_moment(otter, nu):
    p = otter.replace(neglect_munk_moment=False)
    assert abs(nu @ coriolis_matrix(p, nu) @ nu) < 1e-9


def test_pure_surge_sway_yaw_coupling(otter):
    nu = np.array([2.0, 0, 0, 0, 0, 0])
    # rigid-body part depends on angular velocity only, so at pure surge the
    # sway-yaw entries come from the added-mass (Munk) terms: +-(-X_udot) u
    full = coriolis_matrix(otter.replace(neglect_munk_moment=False), nu)
    assert full[1, 5] == pytest.approx(-otter.added_mass[0] * 2.0, abs=1e-12)
    assert full[5, 1] == pytest.approx(otter.added_mass[0] * 2.0, abs=1e-12)
    reduced = coriolis_matrix(otter, nu)
    assert reduced[1, 5] == 0.0 and reduced[5, 1] == 0.0


def test_damping_at_rest_is_linear(otter):
    np.testing.assert_array_equal(damping_matrix(otter, np.zeros(6)), otter.D_lin)


@settings(max_examples=1000)
@given(twists)
def test_damping_dissipative(otter, nu):
    assert nu @ damping_matrix(otter, nu) @ nu >= 0.0


@pytest.mark.parametrize("u", [0.3, 1.0, 2.5])
def test_surge_drag_superlinear(otter, u):
    drag = lambda s: (damping_matrix(otter, [s, 0, 0, 0, 0, 0]) @ [s, 0, 0, 0, 0, 0])[0]
    assert drag(2 * u) >= 2 * drag(u)


# --- restoring ---------------------------------------------------------------

def test_restoring_zero_at_equilibrium(otter):
    assert np.array_equal(restoring_force(otter, 0.0, 0.0, 0.0), np.zeros(6))


def test_restoring_rights_the_hull(otter):
    G = restoring_force(otter, 0.05, 0.0, 0.0)
    assert G[3] < 0
    assert restoring_force(otter, 0.0, 0.02, 0.0)[4] < 0
    assert restoring_force(otter, 0.0, 0.0, 0.01)[2] < 0
    np.testing.assert_array_equal(G[[0, 1, 5]], 0.0)


@given(st.floats(-1.5, 1.5))
def test_restoring_roll_odd(otter, phi):
    assert restoring_force(otter, phi, 0, 0)[3] == -restoring_force(otter, -phi, 0, 0)[3]


def test_roll_stiffness_value(otter):
    # rho g nabla GM_T = m g GM_T since nabla = m / rho
    K = restoring_force(otter, 1e-6, 0, 0)[3] / 1e-6
    assert K == pytest.approx(-otter.m * otter.g * otter.GM_T, rel=1e-6)


# --- dynamics ----------------------------------------------------------------

def test_rest_stays_at_rest(otter):
    np.testing.assert_array_equal(dynamics(otter, np.zeros(6), np.zeros(6), (0, 0), np.zeros(6)), np.zeros(6))


def test_surge_thrust_from_rest_diagonal_mass(otter):
    p = diagonal_vessel(otter)
    F = 60.0
    nu_dot = dynamics(p, np.zeros(6), np.zeros(6), (F, 0.0))
    assert nu_dot[0] == pytest.approx(F / p.M[0, 0], rel=1e-10)
    np.testing.assert_allclose(nu_dot[1:], 0.0, atol=1e-10)


def test_thrust_from_rest_matches_linear_solve(otter):
    u_in = (60.0, -7.0)
    tau = np.array([u_in[0], 0, 0, 0, 0, u_in[1]])
    np.testing.assert_allclose(dynamics(otter, np.zeros(6), np.zeros(6), u_in),
                               np.linalg.solve(otter.M, tau), rtol=1e-10, atol=1e-12)


def test_steady_surge_speed_balances_drag(otter):
    drag = lambda u: (damping_matrix(otter, [u, 0, 0, 0, 0, 0]) @ [u, 0, 0, 0, 0, 0])[0]
    u_star = brentq(lambda u: drag(u) - otter.tau_X_max, 0.0, 20.0, xtol=1e-14)
    nu_dot = dynamics(otter, [u_star, 0, 0, 0, 0, 0], np.zeros(6), (otter.tau_X_max, 0.0))
    assert abs(nu_dot[0]) < 1e-9


# --- Euler step --------------------------------------------------------------

def test_euler_fixed_point():
    eta = np.array([1.0, 2.0, 0.0, 0.1, -0.05, 0.4])
    e2, n2 = euler_step(eta, np.zeros(6), np.zeros(6), 0.1)
    np.testing.assert_array_equal(e2, eta)
    np.testing.assert_array_equal(n2, np.zeros(6))


def test_euler_unit_surge():
    e2, _ = euler_step(np.zeros(6), [1, 0, 0, 0, 0, 0], np.zeros(6), 0.1)
    assert e2[0] == pytest.approx(0.1, abs=1e-15)


def test_euler_surge_heading_east():
    eta = np.array([0, 0, 0, 0, 0, math.pi / 2])
    e2, _ = euler_step(eta, [1, 0, 0, 0, 0, 0], np.zeros(6), 0.1)
    assert e2[1] == pytest.approx(0.1, abs=1e-12)
    assert abs(e2[0]) < 1e-12


def test_euler_semi_implicit_uses_new_velocity():
    e_exp, _ = euler_step(np.zeros(6), np.zeros(6), [2, 0, 0, 0, 0, 0], 0.1)
    e_si, n_si = euler_step(np.zeros(6), np.zeros(6), [2, 0, 0, 0, 0, 0], 0.1, semi_implicit=True)
    assert e_exp[0] == 0.0
    assert e_si[0] == pytest.approx(0.1 * n_si[0])


def test_euler_wraps_yaw():
    e2, _ = euler_step([0, 0, 0, 0, 0, 3.1], [0, 0, 0, 0, 0, 1.0], np.zeros(6), 0.1)
    assert -math.pi < e2[5] <= math.pi
    assert e2[5] == pytest.approx(3.2 - 2 * math.pi)


def test_euler_rejects_nonpositive_period():
    with pytest.raises(ValueError):
        euler_step(np.zeros(6), np.zeros(6), np.zeros(6), 0.0)


def test_flat_water_roll_decay(otter):
    eta = np.array([0, 0, 0, 0.2, 0, 0])
    nu = np.zeros(6)
    phi = [eta[3]]
    for _ in range(3000):
        nu_dot = dynamics(otter, nu, restoring_force(otter, eta[3], eta[4], eta[2]), (0, 0))
        eta, nu = euler_step(eta, nu, nu_dot, 0.01)
        phi.append(eta[3])
    a = np.abs(np.array(phi))
    peaks = [a[i] for i in range(1, len(a) - 1) if a[i] >= a[i - 1] and a[i] > a[i + 1]]
    # below ~1e-3 of the start the residual pitch/heave coupling dominates
    peaks = [p for p in peaks if p > 1e-3 * a[0]]
    assert len(peaks) >= 8
    assert all(p2 < p1 for p1, p2 in zip(peaks, peaks[1:]))
    assert a[-1] < 0.2 * a[0]
