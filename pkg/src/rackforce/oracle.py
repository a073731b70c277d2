"""Higher-fidelity reference simulation used to score the estimators.

Differs from the brush-tire estimator in exactly three places: steer-angle
trigonometry is kept in the chassis equations, slip angles use the exact
arctangent form, and tire slip builds up through a first-order relaxation
length lag. It is a desk-scale stand-in for a full multibody reference, not
a replacement for one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import AxleForces, VehicleState, check_speed, deriv_full, normal_forces, step_rk4
from .errors import InvalidInputError
from .estimator import EstimationResult, Decomposition, check_inputs, decompose_with, half_grid, _trace
from .signals import RoadProfile, SignalTrace, TireParamsBT, VehicleParams
from .tires import bt_tire


@dataclass(frozen=True)
class OracleParams:
    base: VehicleParams
    tire: TireParamsBT
    sigma_relax: float = 0.3

    def __post_init__(self):
        if not self.sigma_relax > 0:
            raise InvalidInputError(f"sigma_relax must be > 0, got {self.sigma_relax}")


def _exact_slip(st, u, delta, p):
    check_speed(u)
    v, r = st
    return math.atan((v + p.l_f * r) / u) - delta, math.atan((v - p.l_r * r) / u)


def _linear_slip(st, u, delta, p):
    check_speed(u)
    v, r = st
    return (v + p.l_f * r) / u - delta, (v - p.l_r * r) / u


def relax(lagged0: float, slip0: float, slip1: float, z: float) -> float:
    """Lagged slip after ``z = u * h / sigma`` relaxation lengths.

    Exact solution of ``d(lagged)/dt = (u / sigma) * (slip - lagged)`` when the
    instantaneous slip moves linearly from ``slip0`` to ``slip1``. Stable for
    any ``z``, and reduces to ``slip1`` as ``z`` grows.
    """
    if z == 0.0:
        return lagged0
    e = math.exp(-z)
    phi = -math.expm1(-z) / z
    return slip1 + (lagged0 - slip0) * e - (slip1 - slip0) * phi


def run_oracle(delta: SignalTrace, road: RoadProfile, u: SignalTrace, params: OracleParams,
               f_xf: SignalTrace | None = None, exact_slip: bool = True) -> EstimationResult:
    """Reference rack force from rest over aligned input traces.

    ``f_xf`` is an optional front longitudinal axle force (zero by default).
    ``exact_slip=False`` swaps the arctangent slip for its small-angle form.
    """
    check_inputs(delta, road, u)
    p, tire = params.base, params.tire
    n, dt = len(delta), delta.dt
    slip = _exact_slip if exact_slip else _linear_slip

    d_h = half_grid(delta.samples).tolist()
    th_h = half_grid(road.slope.samples).tolist()
    u_h = half_grid(u.samples).tolist()
    fx_h = half_grid(f_xf.samples).tolist() if f_xf is not None else [0.0] * len(d_h)
    loads = [normal_forces(th, p) for th in th_h]
    F_zf = [f for f, _ in loads]
    F_zr = [r for _, r in loads]
    inv_sigma = 1.0 / params.sigma_relax

    base = 0
    lag_f = lag_r = 0.0
    s0_f = s0_r = 0.0

    def deriv(h, st):
        j = base if h == 0.0 else (base + 1 if h < dt else base + 2)
        a_f, a_r = slip(st, u_h[j], d_h[j], p)
        z = u_h[base] * h * inv_sigma
        lf = relax(lag_f, s0_f, a_f, z)
        lr = relax(lag_r, s0_r, a_r, z)
        forces = AxleForces(-2.0 * bt_tire(lf, F_zf[j], tire, False).F_y,
                            -2.0 * bt_tire(lr, F_zr[j], tire, False).F_y,
                            fx_h[j])
        return deriv_full(st, forces, u_h[j], th_h[j], d_h[j], p)

    rf, mz, af, ar, fyf, fyr, states = ([] for _ in range(7))
    state = VehicleState(0.0, 0.0)
    s0_f, s0_r = slip(state, u_h[0], d_h[0], p)
    lag_f, lag_r = s0_f, s0_r
    two_ip = 2.0 * p.i_p
    for k in range(n):
        base = 2 * k
        out_f = bt_tire(lag_f, F_zf[base], tire, True, p.t_m)
        out_r = bt_tire(lag_r, F_zr[base], tire, False)
        rf.append(two_ip * out_f.M_zf)
        mz.append(2.0 * out_f.M_zf)
        af.append(lag_f)
        ar.append(lag_r)
        fyf.append(-2.0 * out_f.F_y)
        fyr.append(-2.0 * out_r.F_y)
        states.append(state)
        if k + 1 < n:
            state = step_rk4(state, deriv, dt, k)
            s1_f, s1_r = slip(state, u_h[base + 2], d_h[base + 2], p)
            z = u_h[base] * dt * inv_sigma
            lag_f = relax(lag_f, s0_f, s1_f, z)
            lag_r = relax(lag_r, s0_r, s1_r, z)
            s0_f, s0_r = s1_f, s1_r

    return EstimationResult(
        rf=_trace(delta, rf, "rf", "N"),
        m_zf=_trace(delta, mz, "m_zf", "N*m"),
        slip_f=_trace(delta, af, "slip_f", "rad"),
        slip_r=_trace(delta, ar, "slip_r", "rad"),
        f_yf=_trace(delta, fyf, "f_yf", "N"),
        f_yr=_trace(delta, fyr, "f_yr", "N"),
        states=np.array(states, dtype=float).reshape(n, 2),
        label="oracle",
    )


def decompose_oracle(delta: SignalTrace, road: RoadProfile, u: SignalTrace,
                     params: OracleParams) -> Decomposition:
    return decompose_with(lambda d, r, s: run_oracle(d, r, s, params), delta, road, u)
