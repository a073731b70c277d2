import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rackforce.dynamics import (AxleForces, VehicleState, deriv_full, deriv_small_angle,
                                normal_forces, step_rk4)
from rackforce.errors import NumericalError, SpeedTooLowError
from rackforce.estimator import run_estimator
from rackforce.signals import RoadProfile, SignalTrace


def test_yaw_coupling_on_flat_road(vehicle):
    v_dot, r_dot = deriv_small_angle(VehicleState(0.0, 0.1), AxleForces(), 10.0, 0.0, vehicle)
    assert v_dot == pytest.approx(-1.0)
    assert r_dot == 0.0


def test_gravity_on_eleven_degree_slope(vehicle):
    v_dot, _ = deriv_small_angle(VehicleState(), AxleForces(), 5.0, math.radians(11.0), vehicle)
    assert v_dot == pytest.approx(-1.8718, abs=1e-4)


def test_full_model_routes_longitudinal_force_at_right_angle(vehicle):
    p = dataclasses.replace(vehicle, m=1000.0, l_f=1.4, I=3500.0)
    v_dot, r_dot = deriv_full(VehicleState(), AxleForces(0.0, 0.0, 1000.0), 5.0, 0.0, math.pi / 2, p)
    assert v_dot == pytest.approx(1.0)
    assert r_dot == pytest.approx(0.4)


def test_full_matches_small_angle_at_zero_steer(vehicle):
    st_, f = VehicleState(0.3, -0.05), AxleForces(1200.0, -800.0, 500.0)
    assert deriv_full(st_, f, 8.0, 0.1, 0.0, vehicle) == pytest.approx(
        deriv_small_angle(st_, f, 8.0, 0.1, vehicle))


def test_low_speed_rejected(vehicle):
    with pytest.raises(SpeedTooLowError):
        deriv_small_angle(VehicleState(), AxleForces(), 0.5, 0.0, vehicle)


def test_symmetric_axle_loads(vehicle):
    p = dataclasses.replace(vehicle, l_f=1.44, l_r=1.44)
    f, r = normal_forces(0.0, p)
    assert f == pytest.approx(4836.33, abs=0.01) and r == pytest.approx(f)


def test_slope_scales_loads_by_cosine(vehicle):
    f0, _ = normal_forces(0.0, vehicle)
    f1, _ = normal_forces(math.radians(11.0), vehicle)
    assert f1 / f0 == pytest.approx(0.9816, abs=1e-4)


@given(st.floats(-1.5, 1.5))
def test_loads_carry_half_the_normal_weight(theta):
    from rackforce.config import default_config
    p = default_config().vehicle
    f, r = normal_forces(theta, p)
    assert f + r == pytest.approx(p.m * p.g * math.cos(theta) / 2, rel=1e-12, abs=1e-9)
    assert f * p.l_f == pytest.approx(r * p.l_r, rel=1e-12, abs=1e-9)


def test_rk4_exponential_decay():
    out = step_rk4(VehicleState(1.0, 2.0), lambda h, s: (-s[0], -s[1]), 0.004)
    assert out.v == pytest.approx(math.exp(-0.004), abs=1e-10)
    assert out.psi_dot == pytest.approx(2 * math.exp(-0.004), abs=1e-10)


def test_rk4_time_dependent_forcing_is_exact_for_cubics():
    # x' = t^2 integrates exactly with RK4
    out = step_rk4(VehicleState(0.0, 0.0), lambda h, s: (h * h, 0.0), 0.5)
    assert out.v == pytest.approx(0.5 ** 3 / 3, abs=1e-15)


def test_rk4_reports_nonfinite_sample():
    with pytest.raises(NumericalError) as err:
        step_rk4(VehicleState(1.0, 0.0), lambda h, s: (math.inf, 0.0), 0.004, index=17)
    assert err.value.index == 17
    assert "at sample 17" in str(err.value)


def test_rk4_rejects_nonpositive_step():
    with pytest.raises(ValueError):
        step_rk4(VehicleState(), lambda h, s: (0.0, 0.0), 0.0)


def test_grade_trace_does_not_change_results(cfg):
    n, rate = 500, 250.0
    t = np.arange(n) / rate
    delta = SignalTrace("delta", "rad", rate, 0.02 * np.sin(t))
    slope = SignalTrace("slope", "rad", rate, np.full(n, 0.05))
    u = SignalTrace("speed", "m/s", rate, np.full(n, 8.0))
    a = run_estimator("bt", delta, RoadProfile(slope), u, cfg.vehicle, cfg.tire_bt)
    b = run_estimator("bt", delta, RoadProfile(slope, grade=slope.replace(np.full(n, 0.1), name="grade")),
                      u, cfg.vehicle, cfg.tire_bt)
    np.testing.assert_array_equal(a.rf.samples, b.rf.samples)
