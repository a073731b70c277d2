"""Slip kinematics and the linear, brush and rigid-ring tire kernels.

Kernels work per tire and report the lateral force with the sign of the slip
angle, ``F_y = C * alpha`` near zero slip. Because slip is measured as
``(v + l_f * psi_dot) / u - delta`` the force acting on the chassis is the
reaction ``-F_y``; :mod:`rackforce.estimator` applies that sign.

Only the front tire carries a trail and aligning moment. Rear calls return
``t_p = M_zf = 0``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .dynamics import VehicleState, check_speed
from .errors import InvalidInputError, InvalidSlipError
from .signals import TireParamsBT, TireParamsLT, TireParamsRR, VehicleParams

_HALF_PI = 0.5 * math.pi


class SlipAngles(NamedTuple):
    alpha_f: float
    alpha_r: float


class TireOutputs(NamedTuple):
    F_y: float
    t_p: float
    M_zf: float


def slip_angles(state: VehicleState, u: float, delta: float, p: VehicleParams) -> SlipAngles:
    check_speed(u)
    v, r = state
    return SlipAngles((v + p.l_f * r) / u - delta, (v - p.l_r * r) / u)


def _check_load(F_z):
    if not F_z > 0:
        raise InvalidInputError(f"normal load must be > 0, got {F_z}")


def _sgn(x):
    return 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)


def lt_tire(alpha: float, F_z: float, params: TireParamsLT, is_front: bool = True,
            t_m: float = 0.0) -> TireOutputs:
    """Linear tire with a slip-dependent pneumatic trail on the front axle."""
    _check_load(F_z)
    if abs(alpha) >= _HALF_PI:
        raise InvalidSlipError(f"slip angle {alpha} rad at the tangent singularity")
    if not is_front:
        return TireOutputs(params.C_ar * alpha, 0.0, 0.0)
    F_y = params.C_af * alpha
    t_p = params.t_p0 * (1.0 - _sgn(alpha) * params.C_af / (3.0 * params.mu * F_z) * math.tan(alpha))
    return TireOutputs(F_y, t_p, -(t_p + t_m) * F_y)


def bt_tire(alpha: float, F_z: float, params: TireParamsBT, is_front: bool = True,
            t_m: float = 0.0) -> TireOutputs:
    """Brush tire: cubic adhesion law up to full sliding at ``|alpha| = 1/theta_s``."""
    _check_load(F_z)
    mu_fz = params.mu * F_z
    s = params.theta_s(F_z) * abs(alpha)
    sign = _sgn(alpha)
    if s <= 1.0:
        F_y = sign * mu_fz * (3.0 * s - 3.0 * s * s + s * s * s)
    else:
        F_y = sign * mu_fz
    if not is_front:
        return TireOutputs(F_y, 0.0, 0.0)
    if s < 1.0:
        t_p = params.a / 3.0 * (1.0 - 3.0 * s + 3.0 * s * s - s * s * s) / (1.0 - s + s * s / 3.0)
    else:
        # full sliding: no pneumatic trail
        t_p = 0.0
    return TireOutputs(F_y, t_p, -(t_p + t_m) * F_y)


def _magic(B, C, E, x):
    bx = B * x
    return C * math.atan(bx - E * (bx - math.atan(bx)))


def rr_tire(alpha: float, F_z: float, eff=None, params: TireParamsRR = None,
            is_front: bool = True) -> TireOutputs:
    """Rigid-ring tire: Magic-Formula force, trail and residual moment.

    ``eff`` is the :class:`~rackforce.enveloping.EffectiveRoadPoint` from the
    enveloping stage, or ``None`` for a flat road (contact force equals
    ``F_z``). The lateral and residual-moment peaks scale with the contact
    force.
    """
    _check_load(F_z)
    F_cN = F_z if eff is None else eff.F_cN
    if F_cN < 0:
        raise InvalidInputError(f"contact-patch normal force must be >= 0, got {F_cN}")
    if abs(alpha) >= _HALF_PI:
        raise InvalidSlipError(f"slip angle {alpha} rad at the tangent singularity")
    p = params
    tan_a = math.tan(alpha)
    F_y = p.D_y * F_cN * math.sin(_magic(p.B_y, p.C_y, p.E_y, p.S_Hy + tan_a)) + p.S_Vy
    if not is_front:
        return TireOutputs(F_y, 0.0, 0.0)
    t_p = p.D_t * math.cos(_magic(p.B_t, p.C_t, p.E_t, p.S_Ht + tan_a))
    M_r = p.D_r * p.a * F_cN * math.cos(math.atan(p.B_r * tan_a))
    return TireOutputs(F_y, t_p, -t_p * F_y + M_r)
