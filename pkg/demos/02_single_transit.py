"""One closed-loop transit to the waypoint, step by step.

Loads the shipped "Direct" scenario (no roll penalty), runs the receding-horizon
loop and prints a coarse log: position, heading, roll and the applied thrust
every ten seconds. The full log is written as CSV next to this script's
working directory so it can be plotted with any tool.

    python demos/02_single_transit.py [scenario]      # default: direct.scenario
"""
import math
import sys

import numpy as np

from usv_nmpc.config import builtin_scenario_path, load_scenario
from usv_nmpc.results import write_trajectory_csv
from usv_nmpc.sim import run_closed_loop

name = sys.argv[1] if len(sys.argv) > 1 else "direct.scenario"
scenario = load_scenario(builtin_scenario_path(name))
w = scenario.weights
print(f"{scenario.label}: Q={w.Q:g} R={w.R:g} S={w.S:g}, waypoint {scenario.waypoint}, "
      f"horizon {scenario.nmpc.P} x {scenario.T} s")

traj, m = run_closed_loop(scenario)

print(f"\n{'t':>6} {'x':>7} {'y':>7} {'psi':>7} {'roll':>7} {'tau_X':>7} {'tau_N':>7}")
for k in range(0, len(traj), 100):
    x, y, psi, phi = traj.eta[k, 0], traj.eta[k, 1], traj.eta[k, 5], traj.eta[k, 3]
    print(f"{traj.t[k]:6.1f} {x:7.1f} {y:7.1f} {math.degrees(psi):7.1f} {math.degrees(phi):7.2f} "
          f"{traj.tau[k, 0]:7.1f} {traj.tau[k, 1]:7.1f}")

ttw = f"{m.time_to_waypoint:.1f} s" if m.reached_waypoint else "not reached"
solves = traj.solve_time[:traj.n_solves]
print(f"\ntime to waypoint {ttw}; roll mean {m.avg_roll_deg:.2f} deg, max {m.max_roll_deg:.2f} deg")
print(f"{solves.size} solves, median {1e3 * np.median(solves):.1f} ms, {m.fallbacks} fallbacks")

out = f"{name.split('.')[0]}_demo.csv"
write_trajectory_csv(traj, out)
print(f"trajectory written to {out}")
