"""Command-line entry point: ``usv-nmpc run|sweep|compare|table3``.

Exit codes: 0 success, 1 invalid input (scenario, sweep or metrics files),
2 a run aborted or the solver failed.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import (
    REFERENCE_LABELS,
    ConfigError,
    OutputOptions,
    builtin_scenario_path,
    load_scenario_file,
    load_sweep,
)
from .results import output_stem, read_metrics_json, write_metrics_json, write_trajectory_csv
from .sim import Metrics, TrajectoryRecord, compare_runs
from .sweep import format_cells, run_many, run_sweep

OUT_DIR_ENV = "USV_NMPC_OUT_DIR"
EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2

log = logging.getLogger("usv_nmpc")


def _out_dir(args, output: OutputOptions | None = None) -> Path:
    if args.out_dir is not None:
        d = Path(args.out_dir)
    elif output is not None and output.directory is not None:
        d = output.directory
    else:
        d = Path(os.environ.get(OUT_DIR_ENV, "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


def _resolve_scenario(name: str):
    path = Path(name)
    if not path.exists():
        try:
            path = builtin_scenario_path(name)
        except ConfigError:
            raise ConfigError(f"{name}: no such scenario file") from None
    return load_scenario_file(path)


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text)


def _write_run(out: Path, label: str, traj: TrajectoryRecord | None, metrics: Metrics,
               formats=("csv", "json")) -> list[Path]:
    stem = output_stem(label)
    written = []
    if "csv" in formats and traj is not None:
        written.append(out / f"{stem}.csv")
        write_trajectory_csv(traj, written[-1])
    if "json" in formats:
        written.append(out / f"{stem}.metrics.json")
        write_metrics_json(metrics, label, written[-1])
    return written


def _summary(label: str, m: Metrics) -> str:
    ttw = f"{m.time_to_waypoint:.1f} s" if m.reached_waypoint else "not reached"
    return (f"{label}: avg roll {m.avg_roll_deg:.2f} deg, max roll {m.max_roll_deg:.2f} deg, "
            f"time to waypoint {ttw}, mean solve {1e3 * m.mean_solve_time:.1f} ms")


def cmd_run(args) -> int:
    sf = _resolve_scenario(args.scenario)
    scenario = replace(sf.scenario, seed=args.seed) if args.seed is not None else sf.scenario
    out = _out_dir(args, sf.output)
    traj, metrics, err = run_many([scenario])[0]
    if metrics is None:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    for path in _write_run(out, scenario.label, traj, metrics, sf.output.formats):
        _say(args, f"wrote {path}")
    _say(args, _summary(scenario.label, metrics))
    if err:
        print(f"error: run aborted: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec, output = load_sweep(args.spec)
    if args.seed is not None:
        spec = replace(spec, base=replace(spec.base, seed=args.seed))
    out = _out_dir(args, output)
    cells = run_sweep(spec, out, parallel=args.parallel or spec.parallel)
    _say(args, format_cells(cells, list(spec.axes)))
    _say(args, f"wrote {out / 'sweep_summary.csv'}")
    failed = [c for c in cells if not c.ok]
    for c in failed:
        print(f"warning: cell {c.label} failed: {c.error}", file=sys.stderr)
    return EXIT_RUNTIME if len(failed) == len(cells) else EXIT_OK


def cmd_compare(args) -> int:
    results = []
    try:
        for path in [args.baseline, *args.candidates]:
            results.append(read_metrics_json(path))
    except (OSError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    try:
        table = compare_runs(results, baseline=results[0][0])
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    print(table.format())
    return EXIT_OK


def cmd_table3(args) -> int:
    files = [load_scenario_file(builtin_scenario_path(label)) for label in REFERENCE_LABELS]
    scenarios = [f.scenario if args.seed is None else replace(f.scenario, seed=args.seed) for f in files]
    out = _out_dir(args)
    outcomes = run_many(scenarios, args.parallel or 1)
    results, status = [], EXIT_OK
    for s, (traj, metrics, err) in zip(scenarios, outcomes):
        if metrics is None:
            print(f"error: {s.label}: {err}", file=sys.stderr)
            status = EXIT_RUNTIME
            continue
        _write_run(out, s.label, traj, metrics)
        if err:
            print(f"error: {s.label} aborted: {err}", file=sys.stderr)
            status = EXIT_RUNTIME
        results.append((s.label, metrics))
    try:
        print(compare_runs(results, baseline="Direct").format())
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    _say(args, f"metrics and trajectories written to {out}")
    return status


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input, not the runtime-abort code argparse uses
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out-dir", help=f"output directory (default: ${OUT_DIR_ENV} or the current directory)")
    common.add_argument("--seed", type=int, help="recorded with the run; the simulation itself is deterministic")
    common.add_argument("--parallel", type=int, metavar="N", help="run up to N scenarios at once")
    common.add_argument("--quiet", action="store_true", help="only print errors and requested tables")

    parser = _Parser(prog="usv-nmpc", description="Roll-aware NMPC simulations of a small USV in waves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("run", parents=[common], help="run one scenario, write CSV and metrics JSON")
    p.add_argument("scenario", help="scenario file, or the name of a shipped one (e.g. direct.scenario)")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("sweep", parents=[common], help="run the cross product described by a sweep file")
    p.add_argument("spec")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("compare", parents=[common], help="compare stored metrics files against a baseline")
    p.add_argument("baseline")
    p.add_argument("candidates", nargs="+")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("table3", parents=[common], help="run the six reference weight settings and compare")
    p.set_defaults(func=cmd_table3)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.parallel is not None and args.parallel < 1:
        parser.error("--parallel must be >= 1")
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
