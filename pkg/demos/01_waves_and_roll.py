"""How the wave model makes the Otter roll.

The wave field is a single sinusoid travelling along world y. The hull does
not see wave pressure directly; instead its restoring moment is computed
against the local surface tilt, so a vessel lying beam-on to the waves is
pushed to follow the slope. This script prints the slope and wave angle at a
few points and then holds the vessel in place to show that its roll locks on
to the wave period.

    python demos/01_waves_and_roll.py
"""
import math

import numpy as np

from usv_nmpc import REFERENCE_WAVE, VesselParams, simulate_moored, slope, wave_angle

wave = REFERENCE_WAVE
print(f"wave: H_w = {wave.H_w} m, lambda = {wave.lam} m, T_w = {wave.T_w} s, "
      f"steepness {wave.H_w / wave.lam:.3f}")

for y in np.linspace(0.0, wave.lam, 5):
    a = wave_angle(wave, y, 0.0)
    print(f"  y = {y:5.2f} m   slope {slope(wave, y, 0.0):+.4f}   wave angle {math.degrees(a):+6.2f} deg")

otter = VesselParams.otter()
# beam-on (psi = 0): the wave front runs along x, so the tilt acts on roll
t, phi = simulate_moored(otter, wave, duration=60.0, T=0.01)
late = t > 30.0
x = phi[late] - phi[late].mean()
crossings = t[late][1:][(x[:-1] < 0) & (x[1:] >= 0)]
print(f"\nmoored beam-on: roll amplitude {math.degrees(np.abs(phi[late]).max()):.2f} deg, "
      f"mean period {np.diff(crossings).mean():.2f} s (wave period {wave.T_w} s)")

# head-on (psi = pi/2): the same tilt now pitches the hull and roll stays small
t, phi = simulate_moored(otter, wave, duration=60.0, T=0.01, psi=math.pi / 2)
print(f"moored head-on: roll amplitude {math.degrees(np.abs(phi[t > 30]).max()):.3f} deg")
