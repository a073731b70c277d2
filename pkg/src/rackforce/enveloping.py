"""Effective road profile for short obstacles (cleats).

A rigid circle of the unloaded tire radius rolled over each rectangular cleat
gives the lift seen by one probe point; two probes ``ls`` apart form a tandem
follower whose mean height and height difference are the effective road
height and slope. The contact-patch normal force follows from a quasi-static
radial spring-damper with the wheel centre held at its static height.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidInputError
from .signals import Cleat, TireParamsRR


class EffectiveRoadPoint(NamedTuple):
    w: float
    beta_slope: float
    F_cN: float


def _cleat_arrays(cleats):
    pos = np.array([c.position for c in cleats], dtype=float)
    ln = np.array([c.length for c in cleats], dtype=float)
    h = np.array([c.height for c in cleats], dtype=float)
    return pos, pos + ln, h


def probe_height(cleats: Sequence[Cleat], x, r0: float):
    """Lifted road height under a probe and its derivative along the track.

    Works elementwise on ``x``. Over a cleat top the height is the cleat
    height; beyond an edge it follows the quarter circle of radius ``r0``
    resting on that edge, until it meets the road surface.
    """
    x = np.asarray(x, dtype=float)
    if not cleats:
        return np.zeros_like(x), np.zeros_like(x)
    start, end, h = _cleat_arrays(cleats)
    xc = x[..., None]
    # horizontal distance to the nearest cleat corner, 0 on the top face
    d = np.maximum(np.maximum(start - xc, xc - end), 0.0)
    d = np.minimum(d, r0)
    root = np.sqrt(r0 * r0 - d * d)
    lift = h - r0 + root
    slope_mag = np.divide(d, root, out=np.full_like(d, np.inf), where=root > 0)
    direction = np.where(xc < start, 1.0, np.where(xc > end, -1.0, 0.0))
    dlift = direction * slope_mag
    lift = np.where(lift > 0, lift, 0.0)
    dlift = np.where(lift > 0, dlift, 0.0)
    idx = np.argmax(lift, axis=-1)
    height = np.take_along_axis(lift, idx[..., None], axis=-1)[..., 0]
    dheight = np.take_along_axis(dlift, idx[..., None], axis=-1)[..., 0]
    return height, dheight


def envelope_road(cleats: Sequence[Cleat], x, x_dot, params: TireParamsRR, F_z) -> EffectiveRoadPoint:
    """Effective height, slope and contact force at track position ``x``.

    Deflection rate is ``x_dot`` times the track derivative of the effective
    height, so the function has no memory. Accepts scalars or arrays.
    """
    if np.any(np.asarray(x_dot) <= 0):
        raise InvalidInputError("enveloping needs forward speed x_dot > 0")
    half = 0.5 * params.ls
    h_front, dh_front = probe_height(cleats, np.asarray(x) + half, params.r0)
    h_rear, dh_rear = probe_height(cleats, np.asarray(x) - half, params.r0)
    w = 0.5 * (h_front + h_rear)
    beta = (h_front - h_rear) / params.ls
    rho_dot = np.asarray(x_dot) * 0.5 * (dh_front + dh_rear)
    # static deflection F_z / k_z plus the effective height
    F_cN = np.maximum(F_z + params.k_z * w + params.c_z * rho_dot, 0.0)
    if np.ndim(F_cN) == 0:
        return EffectiveRoadPoint(float(w), float(beta), float(F_cN))
    return EffectiveRoadPoint(w, beta, F_cN)
