"""Shared value types: sampled traces, parameter sets and road description.

Everything here is immutable. Angles are radians, all other quantities SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Union

import numpy as np

from .errors import AlignmentError, InvalidInputError


@dataclass(frozen=True)
class SignalTrace:
    """Uniformly sampled time series of one physical quantity."""

    name: str
    unit: str
    rate_hz: float
    samples: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float).reshape(-1)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        if not self.rate_hz > 0:
            raise InvalidInputError(f"trace {self.name!r}: rate_hz must be > 0, got {self.rate_hz}")

    def __len__(self):
        return self.samples.size

    @property
    def dt(self) -> float:
        return 1.0 / self.rate_hz

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self)) / self.rate_hz

    @property
    def duration(self) -> float:
        return (len(self) - 1) / self.rate_hz

    def replace(self, samples=None, name=None, unit=None) -> "SignalTrace":
        return SignalTrace(
            name=self.name if name is None else name,
            unit=self.unit if unit is None else unit,
            rate_hz=self.rate_hz,
            samples=self.samples if samples is None else samples,
            t0=self.t0,
        )

    def zeros_like(self, name=None, unit=None) -> "SignalTrace":
        return self.replace(np.zeros(len(self)), name=name, unit=unit)

    @classmethod
    def constant(cls, name, unit, value, rate_hz, n, t0=0.0) -> "SignalTrace":
        return cls(name, unit, rate_hz, np.full(n, float(value)), t0)


def resample(trace: SignalTrace, target_hz: float) -> SignalTrace:
    """Linearly interpolate ``trace`` onto a uniform grid at ``target_hz``.

    The grid starts at ``trace.t0`` and covers the original time span; the last
    original sample lands on the grid whenever the span is a whole number of
    target periods.
    """
    if not target_hz > 0:
        raise InvalidInputError(f"target_hz must be > 0, got {target_hz}")
    if len(trace) < 2:
        raise InvalidInputError(f"trace {trace.name!r} needs at least 2 samples to resample")
    if target_hz == trace.rate_hz:
        return trace
    n = int(math.floor(trace.duration * target_hz + 1e-9)) + 1
    t_new = np.arange(n) / target_hz
    y = np.interp(t_new, np.arange(len(trace)) / trace.rate_hz, trace.samples)
    return SignalTrace(trace.name, trace.unit, float(target_hz), y, trace.t0)


@dataclass(frozen=True)
class VehicleParams:
    """Bicycle-model vehicle constants.

    ``i_p`` maps the front aligning moment to rack force and ``t_m`` is the
    mechanical (caster) trail of the front wheels.
    """

    m: float
    I: float
    l_f: float
    l_r: float
    i_p: float
    t_m: float
    g: float = 9.81

    @property
    def wheelbase(self) -> float:
        return self.l_f + self.l_r


@dataclass(frozen=True)
class TireParamsLT:
    C_af: float
    C_ar: float
    t_p0: float
    mu: float = 1.0


@dataclass(frozen=True)
class TireParamsBT:
    """Brush tire: tread stiffness per unit length and contact half-length."""

    c_p: float
    a: float
    mu: float = 1.0

    def theta_s(self, F_z: float) -> float:
        return (2.0 / 3.0) * self.c_p * self.a**2 / (self.mu * F_z)

    @property
    def cornering_stiffness(self) -> float:
        return 2.0 * self.c_p * self.a**2


@dataclass(frozen=True)
class TireParamsRR:
    """Magic-Formula coefficients plus vertical and enveloping constants.

    The peak values scale with the contact-patch normal force: the lateral
    peak is ``D_y * F_cN`` and the residual-moment peak ``D_r * a * F_cN``.
    ``D_t`` is the zero-slip pneumatic trail in metres.
    """

    B_y: float
    C_y: float
    D_y: float
    E_y: float
    B_t: float
    C_t: float
    D_t: float
    E_t: float
    B_r: float
    D_r: float
    k_z: float
    c_z: float
    r0: float
    a: float
    ls: float
    S_Hy: float = 0.0
    S_Vy: float = 0.0
    S_Ht: float = 0.0


TireParams = Union[TireParamsLT, TireParamsBT, TireParamsRR]


@dataclass(frozen=True)
class Cleat:
    position: float
    height: float
    length: float


@dataclass(frozen=True)
class RoadProfile:
    """Lateral slope trace, cleats along the track and (inert) grade."""

    slope: SignalTrace
    cleats: tuple = ()
    grade: SignalTrace | None = None

    def __post_init__(self):
        object.__setattr__(self, "cleats", tuple(self.cleats))
        if self.grade is None:
            object.__setattr__(self, "grade", self.slope.zeros_like("grade", "rad"))
        if np.any(np.abs(self.slope.samples) >= math.pi / 2):
            raise InvalidInputError("lateral slope must satisfy |theta| < pi/2")
        for c in self.cleats:
            if not (c.height > 0 and c.length > 0):
                raise InvalidInputError(f"cleat at {c.position} m needs positive height and length")
        pos = [c.position for c in self.cleats]
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise InvalidInputError("cleat positions must be strictly increasing")

    @classmethod
    def flat(cls, like: SignalTrace) -> "RoadProfile":
        return cls(like.zeros_like("slope", "rad"))

    def without_cleats(self) -> "RoadProfile":
        return RoadProfile(self.slope, (), self.grade)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        return "; ".join(f"{name}: {msg}" for name, msg in self.violations)


_POSITIVE = {
    VehicleParams: ("m", "I", "l_f", "l_r", "i_p", "g"),
    TireParamsLT: ("C_af", "C_ar", "t_p0", "mu"),
    TireParamsBT: ("c_p", "a", "mu"),
    TireParamsRR: ("D_y", "D_t", "k_z", "r0", "a", "ls"),
}
_NON_NEGATIVE = {
    VehicleParams: ("t_m",),
    TireParamsRR: ("c_z", "D_r"),
}


def _check(obj, prefix, report):
    cls = type(obj)
    for f in fields(obj):
        value = getattr(obj, f.name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            report.violations.append((prefix + f.name, f"must be a finite number, got {value!r}"))
    for name in _POSITIVE.get(cls, ()):
        value = getattr(obj, name)
        if isinstance(value, (int, float)) and not value > 0:
            report.violations.append((prefix + name, f"must be > 0, got {value}"))
    for name in _NON_NEGATIVE.get(cls, ()):
        value = getattr(obj, name)
        if isinstance(value, (int, float)) and not value >= 0:
            report.violations.append((prefix + name, f"must be >= 0, got {value}"))
    if cls is TireParamsRR:
        for name in ("C_y", "C_t"):
            if not getattr(obj, name) >= 1:
                report.violations.append((prefix + name, f"must be >= 1, got {getattr(obj, name)}"))
        if not obj.r0 > obj.a:
            report.violations.append((prefix + "r0", f"must exceed contact half-length a={obj.a}"))


def validate_params(vehicle: VehicleParams, *tires: TireParams) -> ValidationReport:
    """Check parameter sets against their sign constraints; never raises."""
    report = ValidationReport()
    _check(vehicle, "vehicle.", report)
    for tire in tires:
        if tire is None:
            continue
        prefix = {TireParamsLT: "tire_lt.", TireParamsBT: "tire_bt.", TireParamsRR: "tire_rr."}[type(tire)]
        _check(tire, prefix, report)
    return report


def ensure_aligned(*traces: SignalTrace) -> None:
    """Raise AlignmentError unless all traces share rate and length."""
    ref = traces[0]
    for tr in traces[1:]:
        if tr.rate_hz != ref.rate_hz or len(tr) != len(ref):
            raise AlignmentError(
                f"traces not aligned: {ref.name!r} has {len(ref)} samples at {ref.rate_hz} Hz, "
                f"{tr.name!r} has {len(tr)} samples at {tr.rate_hz} Hz"
            )
    if len(ref) == 0:
        raise InvalidInputError("traces are empty")

