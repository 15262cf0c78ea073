"""Single-sinusoid long-crested wave field varying along world y."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

BREAKING_STEEPNESS = 1.0 / 7.0


@dataclass(frozen=True)
class WaveParams:
    """Wave height ``H_w`` (m), wavelength ``lam`` (m) and period ``T_w`` (s).

    ``time_sign`` flips the temporal phase term; +1 reproduces the phase
    ``2*pi*y/lam + 2*pi*t/T_w`` (crests travelling towards -y).
    ``force_sign`` orients the slope-induced lateral force: +1 pushes towards
    world +y where the wave angle is positive.
    """

    H_w: float
    lam: float
    T_w: float
    time_sign: float = 1.0
    force_sign: float = 1.0

    def __post_init__(self):
        if not self.H_w >= 0:
            raise ValueError("H_w >= 0 required")
        if not self.lam > 0:
            raise ValueError("lambda > 0 required")
        if not self.T_w > 0:
            raise ValueError("T_w > 0 required")
        if self.time_sign not in (1.0, -1.0):
            raise ValueError("time_sign must be +1 or -1")
        if self.force_sign not in (1.0, -1.0):
            raise ValueError("force_sign must be +1 or -1")
        if self.H_w / self.lam >= BREAKING_STEEPNESS:
            warnings.warn(
                f"wave steepness H_w/lambda = {self.H_w / self.lam:.3f} exceeds the breaking limit 1/7",
                stacklevel=2,
            )

    @property
    def max_slope(self) -> float:
        return self.H_w * math.pi / self.lam

    def phase(self, y, t):
        return 2.0 * math.pi * np.asarray(y) / self.lam + self.time_sign * 2.0 * math.pi * np.asarray(t) / self.T_w


# Regular sea-state-4 wave used by the shipped scenarios.
REFERENCE_WAVE = WaveParams(H_w=1.75, lam=35.0, T_w=6.0)
CALM = WaveParams(H_w=0.0, lam=35.0, T_w=6.0)


def elevation(wave: WaveParams, y, t):
    return 0.5 * wave.H_w * np.sin(wave.phase(y, t))


def slope(wave: WaveParams, y, t):
    """Spatial gradient of the surface elevation along y."""
    return wave.max_slope * np.cos(wave.phase(y, t))


def wave_angle(wave: WaveParams, y, t):
    """Local tilt of the water surface (rad)."""
    return np.arctan(slope(wave, y, t))


def lateral_force_magnitude(alpha, m: float, g: float):
    """Signed slope-induced buoyancy force (m g / 2) sin(2 alpha)."""
    return 0.5 * m * g * np.sin(2.0 * np.asarray(alpha))
