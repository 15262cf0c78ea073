"""6-DOF rigid-body and hydrodynamic model of a twin-thruster USV.

State follows Fossen's notation: ``eta = [x, y, z, phi, theta, psi]`` is the
NED world-frame pose and ``nu = [u, v, w, p, q, r]`` the body-frame velocity.
All functions accept any length-6 array-like (including the ``Pose`` /
``Twist`` tuples below) and return numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np
import yaml

# Euler-angle kinematics blow up at |theta| = pi/2.
SINGULARITY_MARGIN = 0.01


class SingularAttitudeError(ArithmeticError):
    """Pitch too close to +-pi/2 for the ZYX Euler-angle kinematics."""


class Pose(NamedTuple):
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0


class Twist(NamedTuple):
    u: float = 0.0
    v: float = 0.0
    w: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0


class GeneralizedForce(NamedTuple):
    X: float = 0.0
    Y: float = 0.0
    Z: float = 0.0
    K: float = 0.0
    M: float = 0.0
    N: float = 0.0


class ControlInput(NamedTuple):
    tau_X: float = 0.0
    tau_N: float = 0.0


def wrap_angle(a):
    """Wrap an angle (scalar or array) to (-pi, pi]; in-range values pass through unchanged."""
    a = np.asarray(a, dtype=float)
    inside = (a > -math.pi) & (a <= math.pi)
    return np.where(inside, a, math.pi - np.mod(math.pi - a, 2.0 * math.pi))


def skew(a) -> np.ndarray:
    """Cross-product matrix: ``skew(a) @ b == np.cross(a, b)``."""
    return np.array([[0.0, -a[2], a[1]],
                     [a[2], 0.0, -a[0]],
                     [-a[1], a[0], 0.0]])


def transform_cg(r_g) -> np.ndarray:
    """System transformation matrix from the body origin to a point ``r_g``."""
    H = np.eye(6)
    H[0:3, 3:6] = skew(r_g).T
    return H


@dataclass(frozen=True, eq=False)
class VesselParams:
    """Mass, hydrodynamic, restoring and actuator coefficients of a vessel.

    Hydrodynamic derivatives use Fossen's sign convention (negative values):
    ``added_mass`` holds X_udot..N_rdot, ``linear_damping`` X_u..N_r and
    ``quadratic_damping`` X_|u|u..N_|r|r, all in DOF order.
    """

    m: float
    r_g: np.ndarray
    I_b: np.ndarray
    added_mass: np.ndarray
    linear_damping: np.ndarray
    quadratic_damping: np.ndarray
    displaced_volume: float
    GM_T: float
    GM_L: float
    heave_stiffness: float
    tau_X_max: float
    tau_N_max: float
    g: float = 9.81
    rho: float = 1026.0
    neglect_munk_moment: bool = True
    name: str = "vessel"
    M: np.ndarray = field(init=False, repr=False)
    M_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for key in ("r_g", "I_b", "added_mass", "linear_damping", "quadratic_damping"):
            arr = np.array(getattr(self, key), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, key, arr)
        self._validate()
        M = mass_matrix(self)
        if not np.all(np.linalg.eigvalsh(M) > 0.0):
            raise ValueError("assembled mass matrix M = M_RB + M_A is not positive definite")
        M_inv = np.linalg.inv(M)
        M.setflags(write=False)
        M_inv.setflags(write=False)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "M_inv", M_inv)

    def _validate(self):
        if not self.m > 0:
            raise ValueError("m > 0 required")
        if self.r_g.shape != (3,):
            raise ValueError("r_g must be a 3-vector")
        if self.I_b.shape != (3, 3) or not np.allclose(self.I_b, self.I_b.T):
            raise ValueError("I_b must be a symmetric 3x3 matrix")
        if not np.all(np.linalg.eigvalsh(self.I_b) > 0.0):
            raise ValueError("I_b must be positive definite")
        for key in ("added_mass", "linear_damping", "quadratic_damping"):
            if getattr(self, key).shape != (6,):
                raise ValueError(f"{key} must have 6 entries")
        if np.any(self.linear_damping > 0) or np.any(self.quadratic_damping > 0):
            raise ValueError("damping derivatives must be <= 0")
        if not (self.tau_X_max > 0 and self.tau_N_max > 0):
            raise ValueError("tau_X_max > 0 and tau_N_max > 0 required")
        if not (self.g > 0 and self.rho > 0 and self.displaced_volume > 0):
            raise ValueError("g, rho and displaced_volume must be positive")

    @property
    def M_A(self) -> np.ndarray:
        return -np.diag(self.added_mass)

    @property
    def D_lin(self) -> np.ndarray:
        return -np.diag(self.linear_damping)

    @classmethod
    def from_dict(cls, d: dict) -> "VesselParams":
        d = dict(d)
        restoring = d.pop("restoring", {})
        d.update(restoring)
        known = {f for f in cls.__dataclass_fields__ if f not in ("M", "M_inv")}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown vessel parameter(s): {', '.join(sorted(unknown))}")
        return cls(**d)

    @classmethod
    def from_yaml(cls, path) -> "VesselParams":
        with open(path) as fh:
            return cls.from_dict(yaml.safe_load(fh))

    @classmethod
    def otter(cls) -> "VesselParams":
        """Reference Otter USV parameters shipped with the package."""
        ref = resources.files("usv_nmpc") / "data" / "otter.yaml"
        with resources.as_file(ref) as path:
            return cls.from_yaml(Path(path))

    def replace(self, **changes) -> "VesselParams":
        kwargs = {f: getattr(self, f) for f in self.__dataclass_fields__ if f not in ("M", "M_inv")}
        kwargs.update(changes)
        return type(self)(**kwargs)


def check_attitude(theta: float) -> None:
    if abs(theta) >= math.pi / 2 - SINGULARITY_MARGIN:
        raise SingularAttitudeError(f"pitch {theta:.4f} rad within {SINGULARITY_MARGIN} rad of +-pi/2")


def Rzyx(phi: float, theta: float, psi: float) -> np.ndarray:
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, sth = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    return np.array([
        [cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth],
        [spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi],
        [-sth, cth * sphi, cth * cphi],
    ])


def Tzyx(phi: float, theta: float) -> np.ndarray:
    check_attitude(theta)
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, tth = math.cos(theta), math.tan(theta)
    return np.array([
        [1.0, sphi * tth, cphi * tth],
        [0.0, cphi, -sphi],
        [0.0, sphi / cth, cphi / cth],
    ])


def rotation_matrix(phi: float, theta: float, psi: float) -> np.ndarray:
    """6x6 kinematic transform J(eta) with ``eta_dot = J @ nu``."""
    J = np.zeros((6, 6))
    J[0:3, 0:3] = Rzyx(phi, theta, psi)
    J[3:6, 3:6] = Tzyx(phi, theta)
    return J


def mass_matrix(params: VesselParams) -> np.ndarray:
    """M = M_RB + M_A, with M_RB moved from the CG to the body origin."""
    MRB_CG = np.zeros((6, 6))
    MRB_CG[0:3, 0:3] = params.m * np.eye(3)
    MRB_CG[3:6, 3:6] = params.I_b
    H = transform_cg(params.r_g)
    return H.T @ MRB_CG @ H + params.M_A


def coriolis_matrix(params: VesselParams, nu) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    nu2 = nu[3:6]
    CRB_CG = np.zeros((6, 6))
    CRB_CG[0:3, 0:3] = params.m * skew(nu2)
    CRB_CG[3:6, 3:6] = -skew(params.I_b @ nu2)
    H = transform_cg(params.r_g)
    CRB = H.T @ CRB_CG @ H

    MA = params.M_A
    a1 = MA[0:3, 0:3] @ nu[0:3] + MA[0:3, 3:6] @ nu2
    a2 = MA[3:6, 0:3] @ nu[0:3] + MA[3:6, 3:6] @ nu2
    CA = np.zeros((6, 6))
    CA[0:3, 3:6] = -skew(a1)
    CA[3:6, 0:3] = -skew(a1)
    CA[3:6, 3:6] = -skew(a2)
    if params.neglect_munk_moment:
        CA[5, 0] = CA[5, 1] = 0.0
        CA[0, 5] = CA[1, 5] = 0.0
    return CRB + CA


def damping_matrix(params: VesselParams, nu) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    return params.D_lin - np.diag(params.quadratic_damping * np.abs(nu))


def restoring_force(params: VesselParams, phi_eff: float, theta_eff: float, z: float) -> np.ndarray:
    """Hydrostatic force and moments acting on the hull (righting, so they
    oppose heave, roll and pitch displacements) for a possibly wave-relative
    attitude."""
    W = params.rho * params.g * params.displaced_volume
    return np.array([
        0.0,
        0.0,
        -params.heave_stiffness * z,
        -W * params.GM_T * math.sin(phi_eff),
        -W * params.GM_L * math.sin(theta_eff),
        0.0,
    ])


def control_force(u_in) -> np.ndarray:
    tau_X, tau_N = u_in
    return np.array([tau_X, 0.0, 0.0, 0.0, 0.0, tau_N])


def dynamics(params: VesselParams, nu, g_force, u_in, tau_wave=None) -> np.ndarray:
    """Body-frame acceleration nu_dot = M^-1 (U + tau_wave + g_force - C nu - D nu).

    ``g_force`` is the restoring force as returned by :func:`restoring_force`,
    i.e. minus Fossen's G vector.
    """
    nu = np.asarray(nu, dtype=float)
    rhs = control_force(u_in) + np.asarray(g_force, dtype=float)
    if tau_wave is not None:
        rhs = rhs + np.asarray(tau_wave, dtype=float)
    rhs -= coriolis_matrix(params, nu) @ nu
    rhs -= damping_matrix(params, nu) @ nu
    return params.M_inv @ rhs


def euler_step(eta, nu, nu_dot, T: float, semi_implicit: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """One Euler step of pose and velocity; yaw is re-wrapped.

    The explicit form moves the pose with the current velocity ``nu``. The
    semi-implicit (symplectic) form moves it with the updated velocity, which
    stays stable for the stiff roll/heave modes at T = 0.1 s where the
    explicit form diverges.
    """
    if not T > 0:
        raise ValueError("T > 0 required")
    eta = np.asarray(eta, dtype=float)
    nu = np.asarray(nu, dtype=float)
    nu_next = nu + T * np.asarray(nu_dot, dtype=float)
    J = rotation_matrix(eta[3], eta[4], eta[5])
    eta_next = eta + T * (J @ (nu_next if semi_implicit else nu))
    eta_next[5] = wrap_angle(eta_next[5])
    return eta_next, nu_next
