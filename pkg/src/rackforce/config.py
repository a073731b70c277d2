"""JSON configuration: vehicle, three tire parameter sets, oracle and sim settings.

Vehicle mass, yaw inertia and wheelbase are those of the instrumented test
SUV. The axle split, rack ratio and trails are not published for that car; the
defaults below are a plausible front-heavy split and must be overridden for a
real vehicle. The rigid-ring Magic-Formula coefficients were least-squares
fitted to the brush-tire force and total aligning moment at the nominal front
tire load, so the three tire models agree at small slip.
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import ConfigError
from .signals import TireParamsBT, TireParamsLT, TireParamsRR, VehicleParams, validate_params

CONFIG_ENV = "RACKFORCE_CONFIG"

DEFAULT_CONFIG = {
    "vehicle": {
        "m": 1972.0,
        "I": 3600.0,
        # 1.30 + 1.58 = 2.88 m wheelbase
        "l_f": 1.30,
        "l_r": 1.58,
        "i_p": 7.0,
        "t_m": 0.025,
        "g": 9.81,
    },
    "tire_lt": {"C_af": 80000.0, "C_ar": 80000.0, "t_p0": 0.08 / 3.0, "mu": 1.0},
    "tire_bt": {"c_p": 6.25e6, "a": 0.08, "mu": 1.0},
    "tire_rr": {
        "B_y": 11.18, "C_y": 1.35, "D_y": 1.0, "E_y": 0.37,
        "S_Hy": 0.0, "S_Vy": 0.0,
        "B_t": 26.7, "C_t": 1.05, "D_t": 0.0517, "E_t": 0.96, "S_Ht": 0.0,
        "B_r": 10.0, "D_r": 0.0,
        "k_z": 250000.0, "c_z": 300.0, "r0": 0.373, "a": 0.08, "ls": 0.13,
    },
    "oracle": {"sigma_relax": 0.3},
    "sim": {"rate_hz": 250.0, "duration": None, "steering_ratio": 1.0},
}


@dataclass(frozen=True)
class Config:
    vehicle: VehicleParams
    tire_lt: TireParamsLT
    tire_bt: TireParamsBT
    tire_rr: TireParamsRR
    sigma_relax: float = 0.3
    rate_hz: float = 250.0
    duration: float | None = None
    steering_ratio: float = 1.0

    def tire_for(self, kind) -> object:
        return getattr(self, "tire_" + str(getattr(kind, "value", kind)).lower())

    def to_dict(self) -> dict:
        return {
            "vehicle": asdict(self.vehicle),
            "tire_lt": asdict(self.tire_lt),
            "tire_bt": asdict(self.tire_bt),
            "tire_rr": asdict(self.tire_rr),
            "oracle": {"sigma_relax": self.sigma_relax},
            "sim": {"rate_hz": self.rate_hz, "duration": self.duration,
                    "steering_ratio": self.steering_ratio},
        }


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _build(cls, section, doc):
    data = doc.get(section, {})
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"section {section!r}: unknown keys {sorted(unknown)}")
    try:
        return cls(**{k: float(v) for k, v in data.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"section {section!r}: {exc}") from exc


def config_from_dict(doc: dict, validate: bool = True) -> Config:
    """Build a :class:`Config` from a (possibly partial) JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    doc = _merge(DEFAULT_CONFIG, doc)
    sim = doc.get("sim", {})
    cfg = Config(
        vehicle=_build(VehicleParams, "vehicle", doc),
        tire_lt=_build(TireParamsLT, "tire_lt", doc),
        tire_bt=_build(TireParamsBT, "tire_bt", doc),
        tire_rr=_build(TireParamsRR, "tire_rr", doc),
        sigma_relax=float(doc.get("oracle", {}).get("sigma_relax", 0.3)),
        rate_hz=float(sim.get("rate_hz", 250.0)),
        duration=None if sim.get("duration") is None else float(sim["duration"]),
        steering_ratio=float(sim.get("steering_ratio", 1.0)),
    )
    if validate:
        report = validate_params(cfg.vehicle, cfg.tire_lt, cfg.tire_bt, cfg.tire_rr)
        if not cfg.sigma_relax > 0:
            report.violations.append(("oracle.sigma_relax", f"must be > 0, got {cfg.sigma_relax}"))
        if not cfg.rate_hz > 0:
            report.violations.append(("sim.rate_hz", f"must be > 0, got {cfg.rate_hz}"))
        if not report.ok:
            raise ConfigError(f"parameter validation failed: {report}")
    return cfg


def default_config() -> Config:
    return config_from_dict({})


def load_config(path=None) -> Config:
    """Read a JSON config; ``$RACKFORCE_CONFIG`` takes precedence over ``path``."""
    path = os.environ.get(CONFIG_ENV) or path
    if path is None:
        return default_config()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(doc)


def save_config(cfg: Config, path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2) + "\n")
