"""Run every cell of a weight/wave/horizon sweep and aggregate the results."""
from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .config import SweepSpec
from .results import output_stem, write_metrics_json, write_trajectory_csv
from .sim import Metrics, Scenario, TrajectoryRecord, run_closed_loop

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepCell:
    values: dict
    label: str
    metrics: Metrics | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.metrics is not None and self.metrics.error is None


def run_one(scenario: Scenario) -> tuple[TrajectoryRecord | None, Metrics | None, str | None]:
    """Closed-loop run that never raises; failures come back as a message."""
    try:
        traj, metrics = run_closed_loop(scenario)
    except Exception as exc:
        return None, None, f"{type(exc).__name__}: {exc}"
    return traj, metrics, metrics.error


def run_many(scenarios, parallel: int = 1):
    """``run_one`` over scenarios, results in input order whatever ``parallel`` is."""
    scenarios = list(scenarios)
    if parallel <= 1 or len(scenarios) <= 1:
        return [run_one(s) for s in scenarios]
    with ProcessPoolExecutor(max_workers=min(parallel, len(scenarios))) as pool:
        return list(pool.map(run_one, scenarios))


def run_sweep(spec: SweepSpec, out_dir=None, parallel: int | None = None,
              write_trajectories: bool = False) -> list[SweepCell]:
    """Run all cells; write one metrics JSON per cell and a summary table.

    Returns the cells sorted by average roll (failed cells last).
    """
    cells = spec.cells()
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    outcomes = run_many([s for _, s in cells], parallel or spec.parallel)
    result = []
    for (values, scenario), (traj, metrics, err) in zip(cells, outcomes):
        if err:
            log.warning("sweep cell %s failed: %s", scenario.label, err)
        result.append(SweepCell(values, scenario.label, metrics, err))
        if out_dir is not None and metrics is not None:
            stem = output_stem(scenario.label)
            write_metrics_json(metrics, scenario.label, Path(out_dir) / f"{stem}.metrics.json")
            if write_trajectories and traj is not None:
                write_trajectory_csv(traj, Path(out_dir) / f"{stem}.csv")
    result = sort_cells(result)
    if out_dir is not None:
        write_summary(result, list(spec.axes), Path(out_dir) / "sweep_summary.csv")
    return result


def sort_cells(cells: list[SweepCell]) -> list[SweepCell]:
    return sorted(cells, key=lambda c: (not c.ok, c.metrics.avg_roll_deg if c.ok else 0.0))


def write_summary(cells: list[SweepCell], axes: list[str], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", *axes, "avg_roll_deg", "max_roll_deg", "time_to_waypoint_s",
                    "reached_waypoint", "error"])
        for c in cells:
            m = c.metrics
            vals = [c.values.get(a, "") for a in axes]
            if m is None:
                w.writerow([c.label, *vals, "", "", "", "false", c.error])
                continue
            ttw = "" if m.time_to_waypoint is None else format(m.time_to_waypoint, ".17g")
            w.writerow([c.label, *vals, format(m.avg_roll_deg, ".17g"), format(m.max_roll_deg, ".17g"),
                        ttw, str(m.reached_waypoint).lower(), c.error or ""])


def format_cells(cells: list[SweepCell], axes: list[str]) -> str:
    head = "".join(f"{a:>9}" for a in axes) + f"{'avg roll':>10}{'max roll':>10}{'time to wpt':>13}  note"
    lines = [head, "-" * len(head)]
    for c in cells:
        vals = "".join(f"{c.values[a]:>9g}" for a in axes)
        if c.metrics is None:
            lines.append(f"{vals}{'':>33}  FAILED: {c.error}")
            continue
        m = c.metrics
        ttw = f"{m.time_to_waypoint:.1f}" if m.reached_waypoint else "N/A"
        note = "FAILED: " + c.error if c.error else ("" if m.reached_waypoint else "not reached")
        lines.append(f"{vals}{m.avg_roll_deg:>10.2f}{m.max_roll_deg:>10.2f}{ttw:>13}  {note}")
    return "\n".join(lines)
