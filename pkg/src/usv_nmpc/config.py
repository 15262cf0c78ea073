"""Scenario and sweep files (YAML) and their validation.

A scenario file has the sections ``vessel``, ``wave``, ``nmpc``, ``sim`` and
an optional ``output``. Angles are radians and all units SI. Defaults exist
only for: g = 9.81 (vessel), arrival_radius = 2, t_max = 180, T = 0.1,
P = 40, W = [[1, 0], [0, 1]], the controller's solver settings and the
output section.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import yaml

from .nmpc import CostWeights, NmpcConfig
from .sim import Scenario
from .vessel import VesselParams
from .waves import WaveParams

BUILTIN_VESSELS = ("otter",)
SWEEP_AXES = ("Q", "R", "S", "H_w", "T_w", "lambda", "P")
DEFAULT_SWEEP_CAP = 512

_REQUIRED = object()

# keys and defaults per section
_SCHEMA = {
    "vessel": {"params": _REQUIRED},
    "wave": {"H_w": _REQUIRED, "lambda": _REQUIRED, "T_w": _REQUIRED, "time_sign": 1.0, "force_sign": 1.0},
    "nmpc": {
        "P": 40, "T": 0.1, "Q": _REQUIRED, "R": _REQUIRED, "S": _REQUIRED, "W": [[1.0, 0.0], [0.0, 1.0]],
        "u_min": 0.5, "min_speed_enabled": True, "min_speed_ramp": 0.5, "max_iterations": 200,
        "kkt_tolerance": 1e-8, "constraint_tolerance": 1e-6, "solve_time_budget": 5.0,
        "semi_implicit": True, "normalize_input_rate": True,
    },
    "sim": {
        "waypoint": _REQUIRED, "arrival_radius": 2.0, "t_max": 180.0, "initial_pose": _REQUIRED,
        "initial_twist": _REQUIRED, "seed": 0, "label": None,
    },
    "output": {"directory": None, "formats": ["csv", "json"]},
}
_REQUIRED_SECTIONS = ("vessel", "wave", "nmpc", "sim")
OUTPUT_FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """A scenario or sweep file could not be parsed or failed validation."""


@dataclass(frozen=True)
class OutputOptions:
    directory: Path | None = None
    formats: tuple = OUTPUT_FORMATS


@dataclass(frozen=True)
class ScenarioFile:
    scenario: Scenario
    output: OutputOptions
    path: Path | None = None


def _read_yaml(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read file ({exc.strerror or exc})") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a mapping of sections at top level")
    return doc


def _section(doc: dict, name: str, where: str) -> dict:
    raw = doc.get(name)
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: section '{name}' must be a mapping")
    schema = _SCHEMA[name]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"{where}: unknown key '{name}.{unknown[0]}'")
    out = {}
    for key, default in schema.items():
        if key in raw:
            out[key] = raw[key]
        elif default is _REQUIRED:
            raise ConfigError(f"{where}: missing required key '{name}.{key}'")
        else:
            out[key] = default
    return out


def _number(value, key: str, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: '{key}' must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where}: '{key}' must be finite")
    return float(value)


def _integer(value, key: str, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: '{key}' must be an integer, got {value!r}")
    return value


def _vector(value, n: int, key: str, where: str) -> tuple:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ConfigError(f"{where}: '{key}' must be a list of {n} numbers")
    return tuple(_number(v, key, where) for v in value)


def load_vessel(spec, base_dir: Path | None = None) -> VesselParams:
    """Builtin name, path to a vessel YAML file, or an inline mapping."""
    if isinstance(spec, dict):
        return VesselParams.from_dict(spec)
    if spec in BUILTIN_VESSELS:
        return VesselParams.otter()
    path = Path(spec)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return VesselParams.from_yaml(path)


def parse_scenario(doc: dict, where: str = "<scenario>", base_dir: Path | None = None) -> ScenarioFile:
    unknown = sorted(set(doc) - set(_SCHEMA))
    if unknown:
        raise ConfigError(f"{where}: unknown section '{unknown[0]}'")
    for name in _REQUIRED_SECTIONS:
        if name not in doc:
            raise ConfigError(f"{where}: missing required section '{name}'")
    vs, ws, ns, ss, os_ = (_section(doc, name, where) for name in _SCHEMA)

    try:
        params = load_vessel(vs["params"], base_dir)
    except (OSError, TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: vessel: {exc}") from exc

    num = lambda sec, key: _number(sec[key], key, where)  # noqa: E731
    try:
        wave = WaveParams(H_w=num(ws, "H_w"), lam=num(ws, "lambda"), T_w=num(ws, "T_w"),
                          time_sign=num(ws, "time_sign"), force_sign=num(ws, "force_sign"))
    except ValueError as exc:
        raise ConfigError(f"{where}: wave: {exc}") from exc

    try:
        W = [list(_vector(row, 2, "W", where)) for row in ns["W"]]
        weights = CostWeights(num(ns, "Q"), num(ns, "R"), num(ns, "S"), W)
        cfg = NmpcConfig(
            P=_integer(ns["P"], "P", where), T=num(ns, "T"),
            waypoint=_vector(ss["waypoint"], 2, "waypoint", where),
            u_min=num(ns, "u_min"), min_speed_enabled=bool(ns["min_speed_enabled"]),
            min_speed_ramp=num(ns, "min_speed_ramp"),
            max_iterations=_integer(ns["max_iterations"], "max_iterations", where),
            kkt_tolerance=num(ns, "kkt_tolerance"), constraint_tolerance=num(ns, "constraint_tolerance"),
            solve_time_budget=num(ns, "solve_time_budget"), semi_implicit=bool(ns["semi_implicit"]),
            normalize_input_rate=bool(ns["normalize_input_rate"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{where}: nmpc: {exc}") from exc

    label = ss["label"] if ss["label"] is not None else Path(where).stem
    try:
        scenario = Scenario(
            params=params, wave=wave, weights=weights, nmpc=cfg,
            eta0=_vector(ss["initial_pose"], 6, "initial_pose", where),
            nu0=_vector(ss["initial_twist"], 6, "initial_twist", where),
            arrival_radius=num(ss, "arrival_radius"), t_max=num(ss, "t_max"),
            seed=_integer(ss["seed"], "seed", where), label=str(label),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{where}: sim: {exc}") from exc

    formats = os_["formats"]
    if not isinstance(formats, list) or not formats:
        raise ConfigError(f"{where}: output.formats must be a non-empty list")
    formats = tuple(formats)
    bad = [f for f in formats if f not in OUTPUT_FORMATS]
    if bad:
        raise ConfigError(f"{where}: output.formats: unsupported format '{bad[0]}'")
    directory = os_["directory"]
    if directory is not None and not isinstance(directory, str):
        raise ConfigError(f"{where}: output.directory must be a path string")
    if directory is not None:
        directory = Path(directory)
        if not directory.is_absolute() and base_dir is not None:
            directory = base_dir / directory
    return ScenarioFile(scenario, OutputOptions(directory, formats))


def load_scenario_file(path) -> ScenarioFile:
    path = Path(path)
    sf = parse_scenario(_read_yaml(path), str(path), path.parent)
    return replace(sf, path=path)


def load_scenario(path) -> Scenario:
    """Read and validate a scenario file."""
    return load_scenario_file(path).scenario


# ---------------------------------------------------------------------------
# shipped scenarios

REFERENCE_LABELS = ("Direct", "Indirect", "Low Roll", "Low Q", "Low Tack", "Balanced")
_TABLE3_FILES = {
    "Direct": "direct.scenario", "Indirect": "indirect.scenario", "Low Roll": "low_roll.scenario",
    "Low Q": "low_q.scenario", "Low Tack": "low_tack.scenario", "Balanced": "balanced.scenario",
}


def builtin_scenario_path(name: str) -> Path:
    """Path of a shipped scenario, by file name or by its run label (e.g. "Low Roll")."""
    fname = _TABLE3_FILES.get(name, name)
    ref = resources.files("usv_nmpc") / "scenarios" / fname
    if not ref.is_file():
        raise ConfigError(f"no shipped scenario named {name!r}")
    return Path(str(ref))


def table3_scenarios() -> list[Scenario]:
    return [load_scenario(builtin_scenario_path(label)) for label in REFERENCE_LABELS]


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepSpec:
    """Cross product of axis values applied to a base scenario."""

    base: Scenario
    axes: dict = field(default_factory=dict)
    parallel: int = 1
    cap: int = DEFAULT_SWEEP_CAP

    def __post_init__(self):
        axes = {}
        for name, values in self.axes.items():
            if name not in SWEEP_AXES:
                raise ConfigError(f"unknown sweep axis '{name}' (allowed: {', '.join(SWEEP_AXES)})")
            values = list(values) if isinstance(values, (list, tuple)) else [values]
            if not values:
                raise ConfigError(f"sweep axis '{name}' has no values")
            axes[name] = tuple(values)
        object.__setattr__(self, "axes", axes)
        if self.parallel < 1:
            raise ConfigError("parallel >= 1 required")
        if self.cap < 1:
            raise ConfigError("cap >= 1 required")
        if self.size > self.cap:
            raise ConfigError(f"sweep has {self.size} cells, above the cap of {self.cap}")

    @property
    def size(self) -> int:
        return math.prod(len(v) for v in self.axes.values())

    def cells(self) -> list[tuple[dict, Scenario]]:
        """(axis values, scenario) for every cell, in a fixed order."""
        names = list(self.axes)
        out = []
        for combo in itertools.product(*(self.axes[n] for n in names)):
            values = dict(zip(names, combo))
            out.append((values, apply_axes(self.base, values)))
        return out


def apply_axes(base: Scenario, values: dict) -> Scenario:
    w, wave, cfg = base.weights, base.wave, base.nmpc
    try:
        weights = CostWeights(values.get("Q", w.Q), values.get("R", w.R), values.get("S", w.S), w.W)
        wave = WaveParams(values.get("H_w", wave.H_w), values.get("lambda", wave.lam),
                          values.get("T_w", wave.T_w), wave.time_sign, wave.force_sign)
        cfg = replace(cfg, P=int(values.get("P", cfg.P)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"sweep cell {values}: {exc}") from exc
    tag = ",".join(f"{k}={v:g}" for k, v in values.items())
    label = f"{base.label}[{tag}]" if tag else base.label
    return replace(base, weights=weights, wave=wave, nmpc=cfg, label=label)


def load_sweep(path) -> tuple[SweepSpec, OutputOptions]:
    """Sweep file: ``base`` (scenario path or shipped name), ``axes``, ``parallel``, ``cap``."""
    path = Path(path)
    doc = _read_yaml(path)
    unknown = sorted(set(doc) - {"base", "axes", "parallel", "cap"})
    if unknown:
        raise ConfigError(f"{path}: unknown key '{unknown[0]}'")
    if "base" not in doc:
        raise ConfigError(f"{path}: missing required key 'base'")
    base_path = Path(doc["base"])
    if not base_path.is_absolute():
        local = path.parent / base_path
        base_path = local if local.exists() else builtin_scenario_path(str(doc["base"]))
    sf = load_scenario_file(base_path)
    axes = doc.get("axes") or {}
    if not isinstance(axes, dict):
        raise ConfigError(f"{path}: 'axes' must be a mapping")
    for name, values in axes.items():
        for v in values if isinstance(values, list) else [values]:
            _number(v, f"axes.{name}", str(path))
    spec = SweepSpec(sf.scenario, axes, int(doc.get("parallel", 1)), int(doc.get("cap", DEFAULT_SWEEP_CAP)))
    return spec, sf.output
