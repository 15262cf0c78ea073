import functools
import math
import time
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from usv_nmpc.config import builtin_scenario_path, load_scenario
from usv_nmpc.sim import run_closed_loop
from usv_nmpc.vessel import VesselParams
from usv_nmpc.waves import CALM

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def otter():
    return VesselParams.otter()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@functools.lru_cache(maxsize=None)
def reference_run(label: str, calm: bool = False):
    """Closed-loop run of a shipped scenario, cached for the whole session."""
    scenario = load_scenario(builtin_scenario_path(label))
    if calm:
        scenario = replace(scenario, wave=CALM, label=f"{label} (calm)")
    start = time.perf_counter()
    traj, metrics = run_closed_loop(scenario)
    WALL_TIME[scenario.label] = time.perf_counter() - start
    return scenario, traj, metrics


WALL_TIME: dict[str, float] = {}


def planar_distance(traj, waypoint):
    return np.hypot(waypoint[0] - traj.eta[:, 0], waypoint[1] - traj.eta[:, 1])


def deg(x):
    return math.degrees(x)


# acceptance criteria report their verdicts here; printed after the run
_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    def report(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash.setdefault(_CRITERIA, {})[number] = line
        print(line)
        assert ok, line
    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
