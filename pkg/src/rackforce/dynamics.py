"""Two-DOF bicycle lateral dynamics, axle normal loads and a fixed-step RK4."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .errors import NumericalError, SpeedTooLowError
from .signals import VehicleParams

#: Slip kinematics divide by speed; below this the model is not used.
U_MIN = 1.0
#: Loop rate of the estimators (CAN loop of the test vehicle).
DEFAULT_RATE_HZ = 250.0


class VehicleState(NamedTuple):
    v: float = 0.0
    psi_dot: float = 0.0


class AxleForces(NamedTuple):
    F_yf: float = 0.0
    F_yr: float = 0.0
    F_xf: float = 0.0


def check_speed(u: float, u_min: float = U_MIN) -> None:
    if not u >= u_min:
        raise SpeedTooLowError(f"speed {u} m/s is below the {u_min} m/s minimum")


def deriv_small_angle(state: VehicleState, forces: AxleForces, u: float, theta: float,
                      p: VehicleParams) -> tuple[float, float]:
    """Lateral and yaw accelerations with the small-steer-angle reduction.

    ``theta`` is the lateral road slope; with ``theta == 0`` this is the flat
    road model.
    """
    check_speed(u)
    v_dot = (forces.F_yf + forces.F_yr) / p.m - u * state.psi_dot - p.g * math.sin(theta)
    r_dot = (p.l_f * forces.F_yf - p.l_r * forces.F_yr) / p.I
    return v_dot, r_dot


def deriv_full(state: VehicleState, forces: AxleForces, u: float, theta: float,
               delta: float, p: VehicleParams) -> tuple[float, float]:
    """Lateral and yaw accelerations keeping the steer-angle trigonometry."""
    check_speed(u)
    s, c = math.sin(delta), math.cos(delta)
    front_lat = forces.F_xf * s + forces.F_yf * c
    v_dot = (front_lat + forces.F_yr) / p.m - u * state.psi_dot - p.g * math.sin(theta)
    r_dot = (p.l_f * front_lat - p.l_r * forces.F_yr) / p.I
    return v_dot, r_dot


def normal_forces(theta: float, p: VehicleParams) -> tuple[float, float]:
    """Static per-tire normal loads (front, rear) on a laterally sloped road."""
    w = p.m * p.g * math.cos(theta) / (2.0 * (p.l_f + p.l_r))
    return w * p.l_r, w * p.l_f


DerivFn = Callable[[float, VehicleState], tuple]


def step_rk4(state: VehicleState, deriv_fn: DerivFn, dt: float, index: int | None = None) -> VehicleState:
    """Advance ``state`` by one classical Runge-Kutta step.

    ``deriv_fn(h, state)`` returns the state derivative at offset ``h`` into the
    step (0, dt/2 or dt), which lets callers interpolate exogenous inputs.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    x0, y0 = state
    h2 = 0.5 * dt
    k1 = deriv_fn(0.0, state)
    k2 = deriv_fn(h2, VehicleState(x0 + h2 * k1[0], y0 + h2 * k1[1]))
    k3 = deriv_fn(h2, VehicleState(x0 + h2 * k2[0], y0 + h2 * k2[1]))
    k4 = deriv_fn(dt, VehicleState(x0 + dt * k3[0], y0 + dt * k3[1]))
    x1 = x0 + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    y1 = y0 + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    if not (math.isfinite(x1) and math.isfinite(y1)):
        raise NumericalError("non-finite state derivative", index)
    return VehicleState(x1, y1)
