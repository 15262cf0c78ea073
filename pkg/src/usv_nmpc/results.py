"""CSV trajectory logs and JSON metrics files."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .sim import COLUMNS, Metrics, TrajectoryRecord

METRICS_KEYS = ("label", "avg_roll_deg", "max_roll_deg", "time_to_waypoint_s", "mean_solve_time_s",
                "max_solve_time_s", "reached_waypoint")


def _fmt(v: float) -> str:
    # 17 significant digits round-trip any double exactly
    return format(float(v), ".17g")


def write_trajectory_csv(traj: TrajectoryRecord, path) -> None:
    """Header plus one row per step, columns as in :data:`usv_nmpc.sim.COLUMNS`."""
    rows = traj.as_array()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([*map(_fmt, row[:-1]), int(row[-1])])


def read_trajectory_csv(path) -> TrajectoryRecord:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"{path}: unexpected columns {header}")
        rows = [[float(v) for v in row] for row in reader]
    return TrajectoryRecord.from_array(np.array(rows).reshape(-1, len(COLUMNS)))


def metrics_document(metrics: Metrics, label: str) -> dict:
    return {
        "label": label,
        "avg_roll_deg": metrics.avg_roll_deg,
        "max_roll_deg": metrics.max_roll_deg,
        "time_to_waypoint_s": metrics.time_to_waypoint,
        "mean_solve_time_s": metrics.mean_solve_time,
        "max_solve_time_s": metrics.max_solve_time,
        "reached_waypoint": metrics.reached_waypoint,
    }


def write_metrics_json(metrics: Metrics, label: str, path) -> None:
    Path(path).write_text(json.dumps(metrics_document(metrics, label), indent=2) + "\n")


def read_metrics_json(path) -> tuple[str, Metrics]:
    doc = json.loads(Path(path).read_text())
    missing = [k for k in METRICS_KEYS if k not in doc]
    if missing:
        raise ValueError(f"{path}: missing key '{missing[0]}'")
    ttw = doc["time_to_waypoint_s"]
    if (ttw is not None) != bool(doc["reached_waypoint"]):
        raise ValueError(f"{path}: reached_waypoint inconsistent with time_to_waypoint_s")
    return doc["label"], Metrics(
        avg_roll_deg=float(doc["avg_roll_deg"]), max_roll_deg=float(doc["max_roll_deg"]),
        time_to_waypoint=None if ttw is None else float(ttw),
        mean_solve_time=float(doc["mean_solve_time_s"]), max_solve_time=float(doc["max_solve_time_s"]),
    )


def output_stem(label: str) -> str:
    """File-system friendly form of a run label."""
    keep = "".join(c if c.isalnum() or c in "-_.=," else "_" for c in label.strip())
    return keep.strip("_").lower() or "run"
