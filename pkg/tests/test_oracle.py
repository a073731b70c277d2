import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rackforce.errors import InvalidInputError
from rackforce.estimator import run_estimator
from rackforce.metrics import nmae
from rackforce.oracle import OracleParams, decompose_oracle, relax, run_oracle
from rackforce.scenarios import Experiment1Config, gen_experiment1
from rackforce.signals import RoadProfile, SignalTrace


def params(cfg, sigma=None):
    return OracleParams(cfg.vehicle, cfg.tire_bt, cfg.sigma_relax if sigma is None else sigma)


@pytest.fixture(scope="module")
def gentle():
    return gen_experiment1(Experiment1Config(slope_deg=2.0, steer_amplitude_deg=2.0, steer_period=10.0))


def test_zero_input(cfg):
    n = 2500
    z = SignalTrace("delta", "rad", 250.0, np.zeros(n))
    res = run_oracle(z, RoadProfile(z.replace(name="slope")), z.replace(np.full(n, 10.0)), params(cfg))
    assert np.max(np.abs(res.rf.samples)) == 0.0


def test_relax_constant_slip():
    assert relax(0.0, 1.0, 1.0, 2.0) == pytest.approx(1 - math.exp(-2.0))
    assert relax(0.3, 0.1, 0.2, 0.0) == 0.3
    assert relax(0.3, 0.1, 0.2, 1e6) == pytest.approx(0.2, abs=1e-6)


@given(l0=st.floats(-1, 1), s0=st.floats(-1, 1), s1=st.floats(-1, 1), z=st.floats(1e-3, 5))
def test_relax_matches_fine_integration(l0, s0, s1, z):
    # d(lag)/dtau = slip(tau) - lag on tau in [0, z], slip linear; midpoint rule on a fine grid
    n = 4000
    h = z / n
    lag = l0
    for i in range(n):
        tm = (i + 0.5) * h
        sm = s0 + (s1 - s0) * tm / z
        lag = (lag * (1 - h / 2) + h * sm) / (1 + h / 2)
    assert relax(l0, s0, s1, z) == pytest.approx(lag, abs=1e-6)


def test_sigma_must_be_positive(cfg):
    with pytest.raises(InvalidInputError):
        params(cfg, 0.0)


def test_small_input_agreement(cfg, gentle):
    s = gentle
    ref = run_oracle(s.delta, s.road, s.u, params(cfg)).rf
    est = run_estimator("bt", s.delta, s.road, s.u, cfg.vehicle, cfg.tire_bt).rf
    assert nmae(ref, est) <= 1.0


def test_collapses_to_bt_without_lag(cfg, gentle):
    s = gentle
    ref = run_oracle(s.delta, s.road, s.u, params(cfg, 1e-6), exact_slip=False).rf
    est = run_estimator("bt", s.delta, s.road, s.u, cfg.vehicle, cfg.tire_bt).rf
    assert nmae(ref, est) <= 0.5


def test_lag_delays_response(cfg):
    n = 500
    delta = SignalTrace("delta", "rad", 250.0, np.where(np.arange(n) >= 100, 0.02, 0.0))
    road = RoadProfile(delta.replace(np.zeros(n), name="slope"))
    u = delta.replace(np.full(n, 8.0), name="speed")
    slow = run_oracle(delta, road, u, params(cfg, 2.0)).slip_f.samples
    fast = run_oracle(delta, road, u, params(cfg, 0.05)).slip_f.samples
    assert abs(slow[110]) < abs(fast[110])
    # lagged slip after ten samples of a step: roughly 1 - exp(-u t / sigma) of the step
    assert abs(slow[110]) == pytest.approx(0.02 * (1 - math.exp(-8.0 * 0.04 / 2.0)), rel=0.1)


def test_longitudinal_force_changes_yaw(cfg, gentle):
    s = gentle
    fx = s.delta.replace(np.full(len(s.delta), 2000.0), name="f_xf", unit="N")
    base = run_oracle(s.delta, s.road, s.u, params(cfg))
    pushed = run_oracle(s.delta, s.road, s.u, params(cfg), f_xf=fx)
    assert not np.allclose(base.states[:, 1], pushed.states[:, 1])


def test_decomposition_sums(cfg, gentle):
    s = gentle
    dec = decompose_oracle(s.delta, s.road, s.u, params(cfg))
    np.testing.assert_allclose(dec.rf_steering.samples + dec.rf_road.samples + dec.residual.samples,
                               dec.rf_total.samples, atol=1e-9)
