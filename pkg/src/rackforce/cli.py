"""Command-line front end.

Subcommands::

    rackforce gen exp1|exp2|exp3 --out DIR
    rackforce run --model lt|bt|rr --scenario DIR [--reference CSV]
    rackforce oracle --scenario DIR
    rackforce compare --scenario DIR
    rackforce decompose --model lt|bt|rr --scenario DIR
    rackforce tire-sweep --model lt|bt|rr [--out CSV]

Angles on the command line are degrees; files are radians. Results go to
``--out`` (default ``<scenario>/results``). ``compare`` reports models in the
fixed order lt, bt, rr.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import load_config
from .dynamics import normal_forces
from .errors import AlignmentError, ConfigError, InvalidInputError, RackForceError
from .estimator import EstimatorKind, decompose, run_estimator
from .io import SchemaError, read_scenario, read_table_csv, write_json, write_scenario, write_table_csv
from .metrics import MetricReport, nmae
from .oracle import OracleParams, run_oracle
from .scenarios import GENERATORS
from .tires import bt_tire, lt_tire, rr_tire

MODELS = ("lt", "bt", "rr")

# exit codes per failing stage
EXIT_CONFIG = 3
EXIT_INPUT = 4
EXIT_ALIGN = 5
EXIT_RUN = 6


class StageError(Exception):
    def __init__(self, stage, code, message):
        super().__init__(message)
        self.stage, self.code = stage, code


def _load(args):
    try:
        cfg = load_config(args.config) if args.config else None
    except ConfigError as exc:
        raise StageError("config", EXIT_CONFIG, str(exc)) from exc
    try:
        return read_scenario(args.scenario, cfg)
    except ConfigError as exc:
        raise StageError("config", EXIT_CONFIG, str(exc)) from exc
    except AlignmentError as exc:
        raise StageError("alignment", EXIT_ALIGN, str(exc)) from exc
    except (FileNotFoundError, SchemaError, InvalidInputError) as exc:
        raise StageError("input", EXIT_INPUT, str(exc)) from exc


def _out_dir(args):
    out = Path(args.out) if args.out else Path(args.scenario) / "results"
    out.mkdir(parents=True, exist_ok=True)
    return out


def _simulate(fn, *a, **kw):
    try:
        start = time.perf_counter()
        result = fn(*a, **kw)
        return result, time.perf_counter() - start
    except RackForceError as exc:
        raise StageError("estimation", EXIT_RUN, str(exc)) from exc


def _stats(x):
    x = np.asarray(x)
    return {"min": float(x.min()), "max": float(x.max()), "mean": float(x.mean())}


def cmd_gen(args):
    gen, cfg_cls = GENERATORS[args.experiment]
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        raise StageError("config", EXIT_CONFIG, str(exc)) from exc
    overrides = {"rate_hz": cfg.rate_hz}
    for key in ("speed_kmh", "slope_deg", "amplitude_deg", "steer_amplitude_deg", "period",
                "steer_period", "steer_offset_deg", "spacing", "crossing_time", "steering_ratio"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    known = {f.name for f in dataclasses.fields(cfg_cls)}
    bad = set(overrides) - known - {"rate_hz"}
    if bad:
        raise StageError("gen", EXIT_INPUT, f"{args.experiment} does not accept {sorted(bad)}")
    scenario = gen(cfg_cls(**{k: v for k, v in overrides.items() if k in known}))
    out = write_scenario(args.out, scenario, cfg)
    print(f"wrote {scenario.name} scenario ({len(scenario.delta)} samples) to {out}")


def cmd_run(args):
    scenario, cfg = _load(args)
    kind = EstimatorKind(args.model)
    res, dt = _simulate(run_estimator, kind, scenario.delta, scenario.road, scenario.u,
                        cfg.vehicle, cfg.tire_for(kind))
    out = _out_dir(args)
    write_table_csv(out / f"result_{kind}.csv", res.rf.times, res.columns())
    summary = {"model": kind.value, "scenario": str(args.scenario), "samples": len(res),
               "rate_hz": res.rf.rate_hz, "rf": _stats(res.rf.samples), "runtime_s": dt}
    if args.reference:
        try:
            _, cols = read_table_csv(args.reference)
            ref = cols["rf"]
        except (FileNotFoundError, SchemaError, KeyError) as exc:
            raise StageError("input", EXIT_INPUT, f"reference: {exc}") from exc
        try:
            summary["nmae_pct"] = nmae(ref, res.rf)
        except InvalidInputError as exc:
            raise StageError("metrics", EXIT_ALIGN, str(exc)) from exc
    write_json(out / "summary.json", summary)
    print(f"{kind}: rf min {summary['rf']['min']:.1f} N, max {summary['rf']['max']:.1f} N -> {out}")


def cmd_oracle(args):
    scenario, cfg = _load(args)
    params = OracleParams(cfg.vehicle, cfg.tire_bt, cfg.sigma_relax)
    res, dt = _simulate(run_oracle, scenario.delta, scenario.road, scenario.u, params)
    out = _out_dir(args)
    write_table_csv(out / "result_oracle.csv", res.rf.times, res.columns())
    write_json(out / "summary.json", {"model": "oracle", "scenario": str(args.scenario),
                                      "samples": len(res), "rate_hz": res.rf.rate_hz,
                                      "rf": _stats(res.rf.samples), "runtime_s": dt})
    print(f"oracle -> {out}")


def cmd_compare(args):
    scenario, cfg = _load(args)
    params = OracleParams(cfg.vehicle, cfg.tire_bt, cfg.sigma_relax)
    ref, t_ref = _simulate(run_oracle, scenario.delta, scenario.road, scenario.u, params)
    out = _out_dir(args)
    write_table_csv(out / "result_oracle.csv", ref.rf.times, ref.columns())
    report = MetricReport(reference="oracle")
    report.runtime["oracle"] = t_ref
    report.extrema["oracle"] = {"min": float(ref.rf.samples.min()), "max": float(ref.rf.samples.max())}
    for model in MODELS:
        res, dt = _simulate(run_estimator, model, scenario.delta, scenario.road, scenario.u,
                            cfg.vehicle, cfg.tire_for(model))
        write_table_csv(out / f"result_{model}.csv", res.rf.times, res.columns())
        try:
            report.nmae_pct[model] = nmae(ref.rf, res.rf)
        except InvalidInputError as exc:
            raise StageError("metrics", EXIT_RUN, str(exc)) from exc
        report.extrema[model] = {"min": float(res.rf.samples.min()), "max": float(res.rf.samples.max())}
        report.runtime[model] = dt
    doc = {"scenario": str(args.scenario), "models": list(MODELS), **report.to_dict()}
    write_json(out / "summary.json", doc)
    for model in MODELS:
        print(f"{model}: NMAE {report.nmae_pct[model]:.2f} %")


def cmd_decompose(args):
    scenario, cfg = _load(args)
    kind = EstimatorKind(args.model)
    dec, dt = _simulate(decompose, kind, scenario.delta, scenario.road, scenario.u,
                        cfg.vehicle, cfg.tire_for(kind))
    out = _out_dir(args)
    write_table_csv(out / f"decomposition_{kind}.csv", dec.rf_total.times, dec.columns())
    summary = {"model": kind.value, "scenario": str(args.scenario), "runtime_s": dt,
               **{name: _stats(col) for name, col in dec.columns().items()}}
    try:
        summary["residual_nmae_pct"] = nmae(dec.rf_total, dec.rf_steering.samples + dec.rf_road.samples)
    except InvalidInputError:
        summary["residual_nmae_pct"] = None
    write_json(out / "summary.json", summary)
    print(f"{kind} decomposition -> {out}")


def cmd_tire_sweep(args):
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        raise StageError("config", EXIT_CONFIG, str(exc)) from exc
    load = args.load if args.load is not None else normal_forces(0.0, cfg.vehicle)[0]
    if not load > 0:
        raise StageError("input", EXIT_INPUT, f"--load must be > 0, got {load}")
    alpha = np.radians(np.linspace(-args.alpha_max_deg, args.alpha_max_deg, args.n))
    tire = cfg.tire_for(args.model)
    kernel = {
        "lt": lambda a: lt_tire(a, load, tire, True, cfg.vehicle.t_m),
        "bt": lambda a: bt_tire(a, load, tire, True, cfg.vehicle.t_m),
        "rr": lambda a: rr_tire(a, load, None, tire, True),
    }[args.model]
    try:
        rows = [kernel(float(a)) for a in alpha]
    except RackForceError as exc:
        raise StageError("tire", EXIT_RUN, str(exc)) from exc
    cols = {"alpha": alpha, "F_y": [r.F_y for r in rows], "t_p": [r.t_p for r in rows],
            "M_zf": [r.M_zf for r in rows]}
    names = list(cols)
    lines = [",".join(names)]
    lines += [",".join(f"{float(cols[k][i]) + 0.0:.9g}" for k in names) for i in range(len(alpha))]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rackforce", description="Rack-force estimation toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        p.add_argument("--config", help="JSON config (overridden by $RACKFORCE_CONFIG)")
        if scenario:
            p.add_argument("--scenario", required=True, help="scenario directory")
            p.add_argument("--out", help="results directory (default <scenario>/results)")

    p = sub.add_parser("gen", help="write a synthetic experiment scenario")
    p.add_argument("experiment", choices=sorted(GENERATORS))
    p.add_argument("--out", required=True)
    p.add_argument("--speed-kmh", dest="speed_kmh", type=float)
    p.add_argument("--slope-deg", dest="slope_deg", type=float)
    p.add_argument("--amplitude-deg", dest="amplitude_deg", type=float)
    p.add_argument("--steer-amplitude-deg", dest="steer_amplitude_deg", type=float)
    p.add_argument("--period", type=float)
    p.add_argument("--steer-period", dest="steer_period", type=float)
    p.add_argument("--steer-offset-deg", dest="steer_offset_deg", type=float)
    p.add_argument("--spacing", type=float)
    p.add_argument("--crossing-time", dest="crossing_time", type=float)
    p.add_argument("--steering-ratio", dest="steering_ratio", type=float)
    common(p, scenario=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run one estimator")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--reference", help="result CSV whose rf column is the NMAE reference")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle", help="run the reference simulation")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="all estimators against the reference")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("decompose", help="steering / road / residual rack force")
    p.add_argument("--model", required=True, choices=MODELS)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tire-sweep", help="tire curves versus slip angle")
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--alpha-max-deg", dest="alpha_max_deg", type=float, default=15.0)
    p.add_argument("--n", type=int, default=121)
    p.add_argument("--load", type=float, help="normal load in N (default: static front tire load)")
    p.add_argument("--out", help="CSV path (default stdout)")
    common(p, scenario=False)
    p.set_defaults(func=cmd_tire_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except StageError as exc:
        print(f"rackforce: error [{exc.stage}]: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
