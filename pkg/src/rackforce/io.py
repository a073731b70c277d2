"""CSV and scenario-directory reading and writing.

Signal files have a header ``t,<name>`` and one sample per row with time in
seconds in the first column. Numbers are written with nine significant
digits so output is identical across platforms.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .config import Config, load_config, save_config
from .errors import InvalidInputError
from .scenarios import Scenario
from .signals import Cleat, RoadProfile, SignalTrace, ensure_aligned, resample

FLOAT_FMT = "{:.9g}"

_UNITS = {"delta": "rad", "handwheel": "rad", "speed": "m/s", "slope": "rad", "grade": "rad"}


class SchemaError(InvalidInputError):
    """A CSV or JSON file does not follow the expected layout."""


def _fmt(x) -> str:
    # + 0.0 folds negative zero
    return FLOAT_FMT.format(float(x) + 0.0)


def write_table_csv(path, t, columns: dict) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[k], dtype=float) for k in names]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", *names])
        for i, ti in enumerate(np.asarray(t, dtype=float)):
            w.writerow([_fmt(ti), *(_fmt(a[i]) for a in arrays)])


def read_table_csv(path) -> tuple[np.ndarray, dict]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"missing file: {path}")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0].strip() != "t":
        raise SchemaError(f"{path.name}: header must start with 't'")
    header = [h.strip() for h in rows[0]]
    try:
        data = np.array([[float(x) for x in row] for row in rows[1:] if row], dtype=float)
    except ValueError as exc:
        raise SchemaError(f"{path.name}: non-numeric value ({exc})") from exc
    if data.size == 0:
        raise SchemaError(f"{path.name}: no samples")
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError(f"{path.name}: rows must have {len(header)} columns")
    return data[:, 0], {name: data[:, i] for i, name in enumerate(header[1:], start=1)}


def _rate_from_times(t, name) -> float:
    if t.size < 2:
        raise SchemaError(f"{name}: at least two samples needed to infer the sample rate")
    dt = np.diff(t)
    step = float(np.median(dt))
    if not step > 0 or np.max(np.abs(dt - step)) > 1e-6 * step + 1e-9:
        raise SchemaError(f"{name}: time column is not uniformly increasing")
    return round(1.0 / step, 6)


def write_trace_csv(path, trace: SignalTrace) -> None:
    write_table_csv(path, trace.times, {trace.name: trace.samples})


def read_trace_csv(path, unit: str | None = None) -> SignalTrace:
    t, cols = read_table_csv(path)
    if len(cols) != 1:
        raise SchemaError(f"{Path(path).name}: expected header 't,<name>'")
    (name, values), = cols.items()
    rate = _rate_from_times(t, Path(path).name)
    return SignalTrace(name, unit or _UNITS.get(name, ""), rate, values, float(t[0]))


def write_cleats_csv(path, cleats) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["position", "height", "length"])
        for c in cleats:
            w.writerow([_fmt(c.position), _fmt(c.height), _fmt(c.length)])


def read_cleats_csv(path) -> tuple:
    path = Path(path)
    if not path.is_file():
        return ()
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows or [h.strip() for h in rows[0]] != ["position", "height", "length"]:
        raise SchemaError(f"{path.name}: header must be 'position,height,length'")
    try:
        return tuple(Cleat(*(float(x) for x in r)) for r in rows[1:])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path.name}: bad cleat row ({exc})") from exc


def write_scenario(directory, scenario: Scenario, cfg: Config) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_trace_csv(d / "delta.csv", scenario.delta)
    write_trace_csv(d / "speed.csv", scenario.u)
    write_trace_csv(d / "slope.csv", scenario.road.slope)
    write_cleats_csv(d / "cleats.csv", scenario.road.cleats)
    save_config(cfg, d / "config.json")
    return d


def read_scenario(directory, cfg: Config | None = None) -> tuple[Scenario, Config]:
    """Load a scenario directory, resampling every trace to the sim rate.

    Steering may be given as ``t,delta`` (road wheel) or ``t,handwheel``, the
    latter divided by ``sim.steering_ratio``.
    """
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"scenario directory not found: {d}")
    if cfg is None:
        cfg = load_config(d / "config.json") if (d / "config.json").is_file() else load_config()
    steer = read_trace_csv(d / "delta.csv")
    if steer.name == "handwheel":
        steer = steer.replace(steer.samples / cfg.steering_ratio, name="delta")
    elif steer.name != "delta":
        raise SchemaError(f"delta.csv: column must be 'delta' or 'handwheel', got {steer.name!r}")
    speed = read_trace_csv(d / "speed.csv")
    slope = read_trace_csv(d / "slope.csv")
    traces = [resample(tr, cfg.rate_hz) for tr in (steer, speed, slope)]
    ensure_aligned(*traces)
    steer, speed, slope = traces
    grade = None
    if (d / "grade.csv").is_file():
        grade = resample(read_trace_csv(d / "grade.csv"), cfg.rate_hz)
        ensure_aligned(steer, grade)
    road = RoadProfile(slope.replace(name="slope"), read_cleats_csv(d / "cleats.csv"), grade)
    scenario = Scenario(d.name, steer, speed.replace(name="speed"), road, steer.duration, cfg.rate_hz)
    return scenario, cfg


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n")
