"""Closed-loop rack-force estimators and rack-force decomposition.

Each estimator couples the small-angle bicycle model with one tire kernel.
Per sample: slip angles from the current state, static normal loads from the
lateral slope, per-tire forces from the kernel, axle forces (two tires per
axle) into the lateral dynamics, an RK4 step, and the rack force
``RF = i_p * 2 * M_zf`` from the axle aligning moment.

Exogenous inputs (steer, slope, speed, contact force) are linearly
interpolated inside each step.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dynamics import AxleForces, VehicleState, deriv_small_angle, normal_forces, step_rk4, U_MIN
from .enveloping import EffectiveRoadPoint, envelope_road
from .errors import InvalidInputError, SpeedTooLowError
from .signals import (RoadProfile, SignalTrace, TireParamsBT, TireParamsLT, TireParamsRR,
                      VehicleParams, ensure_aligned)
from .tires import bt_tire, lt_tire, rr_tire, slip_angles


class EstimatorKind(str, enum.Enum):
    LT = "lt"
    BT = "bt"
    RR = "rr"

    def __str__(self):
        return self.value


_TIRE_TYPES = {EstimatorKind.LT: TireParamsLT, EstimatorKind.BT: TireParamsBT, EstimatorKind.RR: TireParamsRR}


@dataclass(frozen=True)
class EstimationResult:
    """Per-sample outputs of one estimator (or oracle) run.

    ``f_yf`` and ``f_yr`` are the axle lateral forces acting on the chassis;
    ``states`` holds ``(v, psi_dot)`` rows.
    """

    rf: SignalTrace
    m_zf: SignalTrace
    slip_f: SignalTrace
    slip_r: SignalTrace
    f_yf: SignalTrace
    f_yr: SignalTrace
    states: np.ndarray
    f_cn: SignalTrace | None = None
    label: str = ""

    def __len__(self):
        return len(self.rf)

    def columns(self) -> dict:
        cols = {
            "rf": self.rf.samples, "m_zf": self.m_zf.samples,
            "slip_f": self.slip_f.samples, "slip_r": self.slip_r.samples,
            "f_yf": self.f_yf.samples, "f_yr": self.f_yr.samples,
            "v": self.states[:, 0], "psi_dot": self.states[:, 1],
        }
        if self.f_cn is not None:
            cols["f_cn"] = self.f_cn.samples
        return cols


@dataclass(frozen=True)
class Decomposition:
    rf_steering: SignalTrace
    rf_road: SignalTrace
    rf_total: SignalTrace
    residual: SignalTrace

    def columns(self) -> dict:
        return {
            "rf_steering": self.rf_steering.samples, "rf_road": self.rf_road.samples,
            "rf_total": self.rf_total.samples, "residual": self.residual.samples,
        }


def half_grid(samples) -> np.ndarray:
    """Samples interleaved with midpoints: length ``2n - 1``."""
    x = np.asarray(samples, dtype=float)
    out = np.empty(2 * x.size - 1)
    out[0::2] = x
    out[1::2] = 0.5 * (x[:-1] + x[1:])
    return out


def track_position(u: SignalTrace) -> np.ndarray:
    """Distance travelled at each sample (trapezoidal integral of speed)."""
    s = u.samples
    x = np.zeros(len(s))
    x[1:] = np.cumsum(0.5 * (s[:-1] + s[1:])) * u.dt
    return x


def check_inputs(delta: SignalTrace, road: RoadProfile, u: SignalTrace) -> None:
    ensure_aligned(delta, road.slope, u)
    if len(delta) < 2:
        raise InvalidInputError("at least two samples are needed")
    low = np.flatnonzero(~(u.samples >= U_MIN))
    if low.size:
        k = int(low[0])
        raise SpeedTooLowError(f"speed {u.samples[k]} m/s below {U_MIN} m/s at sample {k}")
    for name, tr in (("delta", delta), ("slope", road.slope)):
        if not np.all(np.isfinite(tr.samples)):
            raise InvalidInputError(f"{name} trace contains non-finite values")


def front_contact(road: RoadProfile, u: SignalTrace, tire: TireParamsRR, F_zf_half) -> list:
    """Effective road points for the front tire on the half-sample grid."""
    x = half_grid(track_position(u))
    eff = envelope_road(road.cleats, x, half_grid(u.samples), tire, np.asarray(F_zf_half))
    return [EffectiveRoadPoint(*row) for row in zip(eff.w.tolist(), eff.beta_slope.tolist(), eff.F_cN.tolist())]


def _kernels(kind, tire, vehicle, F_zf, F_zr, eff):
    t_m = vehicle.t_m
    if kind is EstimatorKind.LT:
        return (lambda a, j: lt_tire(a, F_zf[j], tire, True, t_m),
                lambda a, j: lt_tire(a, F_zr[j], tire, False))
    if kind is EstimatorKind.BT:
        return (lambda a, j: bt_tire(a, F_zf[j], tire, True, t_m),
                lambda a, j: bt_tire(a, F_zr[j], tire, False))
    # rear tire rolls on the static load; only the front axle sees the enveloped profile
    return (lambda a, j: rr_tire(a, F_zf[j], eff[j], tire, True),
            lambda a, j: rr_tire(a, F_zr[j], None, tire, False))


def run_estimator(kind, delta: SignalTrace, road: RoadProfile, u: SignalTrace,
                  vehicle: VehicleParams, tire) -> EstimationResult:
    """Simulate one estimator over aligned input traces, starting from rest."""
    kind = EstimatorKind(str(kind).lower())
    if not isinstance(tire, _TIRE_TYPES[kind]):
        raise InvalidInputError(f"{kind.name} estimator needs {_TIRE_TYPES[kind].__name__}, got {type(tire).__name__}")
    check_inputs(delta, road, u)
    n, dt = len(delta), delta.dt
    p = vehicle

    d_h = half_grid(delta.samples).tolist()
    th_h = half_grid(road.slope.samples).tolist()
    u_h = half_grid(u.samples).tolist()
    loads = [normal_forces(th, p) for th in th_h]
    F_zf = [f for f, _ in loads]
    F_zr = [r for _, r in loads]
    eff = front_contact(road, u, tire, F_zf) if kind is EstimatorKind.RR else None
    front, rear = _kernels(kind, tire, p, F_zf, F_zr, eff)

    base = 0

    def deriv(h, st):
        j = base if h == 0.0 else (base + 1 if h < dt else base + 2)
        uj = u_h[j]
        sa = slip_angles(st, uj, d_h[j], p)
        forces = AxleForces(-2.0 * front(sa.alpha_f, j).F_y, -2.0 * rear(sa.alpha_r, j).F_y)
        return deriv_small_angle(st, forces, uj, th_h[j], p)

    rf, mz, af, ar, fyf, fyr, states = ([] for _ in range(7))
    state = VehicleState(0.0, 0.0)
    two_ip = 2.0 * p.i_p
    for k in range(n):
        base = 2 * k
        sa = slip_angles(state, u_h[base], d_h[base], p)
        out_f = front(sa.alpha_f, base)
        out_r = rear(sa.alpha_r, base)
        rf.append(two_ip * out_f.M_zf)
        mz.append(2.0 * out_f.M_zf)
        af.append(sa.alpha_f)
        ar.append(sa.alpha_r)
        fyf.append(-2.0 * out_f.F_y)
        fyr.append(-2.0 * out_r.F_y)
        states.append(state)
        if k + 1 < n:
            state = step_rk4(state, deriv, dt, k)

    f_cn = None
    if eff is not None:
        f_cn = _trace(delta, [e.F_cN for e in eff[0::2]], "f_cn", "N")
    return EstimationResult(
        rf=_trace(delta, rf, "rf", "N"),
        m_zf=_trace(delta, mz, "m_zf", "N*m"),
        slip_f=_trace(delta, af, "slip_f", "rad"),
        slip_r=_trace(delta, ar, "slip_r", "rad"),
        f_yf=_trace(delta, fyf, "f_yf", "N"),
        f_yr=_trace(delta, fyr, "f_yr", "N"),
        states=np.array(states, dtype=float).reshape(n, 2),
        f_cn=f_cn,
        label=kind.value,
    )


def _trace(like: SignalTrace, values, name, unit) -> SignalTrace:
    return SignalTrace(name, unit, like.rate_hz, np.asarray(values, dtype=float), like.t0)


def decompose_with(run: Callable[[SignalTrace, RoadProfile, SignalTrace], EstimationResult],
                   delta: SignalTrace, road: RoadProfile, u: SignalTrace) -> Decomposition:
    """Split rack force into steering, road and residual parts.

    ``run(delta, road, u)`` is evaluated three times from rest: steering only
    on a flat road, road only with zero steer (cleats count as road), and both
    inputs together. The residual is whatever the two single-input runs miss.
    """
    steering = run(delta, RoadProfile.flat(road.slope), u).rf
    road_only = run(delta.zeros_like(), road, u).rf
    total = run(delta, road, u).rf
    residual = total.samples - steering.samples - road_only.samples
    return Decomposition(
        rf_steering=steering.replace(name="rf_steering"),
        rf_road=road_only.replace(name="rf_road"),
        rf_total=total.replace(name="rf_total"),
        residual=total.replace(residual, name="residual"),
    )


def decompose(kind, delta: SignalTrace, road: RoadProfile, u: SignalTrace,
              vehicle: VehicleParams, tire) -> Decomposition:
    return decompose_with(lambda d, r, s: run_estimator(kind, d, r, s, vehicle, tire), delta, road, u)
