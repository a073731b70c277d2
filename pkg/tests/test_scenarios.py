import math

import numpy as np
import pytest

from rackforce.scenarios import (Experiment1Config, Experiment2Config, Experiment3Config,
                                 GENERATORS, experiment3_cleats, gen_experiment1,
                                 gen_experiment2, gen_experiment3)


def test_exp1_crowned_road():
    s = gen_experiment1()
    th = math.radians(11.0)
    assert s.road.slope.samples[0] == pytest.approx(th, abs=1e-4)
    assert s.road.slope.samples[-1] == pytest.approx(-th, abs=1e-4)
    assert th == pytest.approx(0.1920, abs=1e-4)
    assert s.u.samples[0] == pytest.approx(5.56, abs=0.01)
    assert np.all(np.abs(s.delta.samples) <= math.radians(2.0) + 1e-15)
    # straight lead-in
    assert np.all(s.delta.samples[: int(2.0 * 250)] == 0.0)
    assert np.all(np.diff(s.road.slope.samples) <= 1e-15)


def test_exp2_slalom():
    s = gen_experiment2()
    assert len(s.delta) == 5501 and s.duration == pytest.approx(22.0)
    assert np.max(s.delta.samples) == pytest.approx(math.radians(60.0), rel=1e-6)
    np.testing.assert_allclose(s.road.slope.samples, math.radians(11.0))
    active = s.delta.samples[500:]
    upward = np.sum((active[:-1] <= 0) & (active[1:] > 0))
    assert upward == 5  # five full cycles
    assert s.u.samples[0] == pytest.approx(15 / 3.6)


def test_exp3_cleats_and_hit_times():
    cfg = Experiment3Config()
    cleats = experiment3_cleats(cfg)
    assert [c.height for c in cleats] == [0.01] * 4 + [0.02] * 5 + [0.03] * 4
    assert [c.position for c in cleats] == [30.0 + 8.0 * i for i in range(13)]
    s = gen_experiment3(cfg)
    assert s.road.cleats == cleats
    v = 30 / 3.6
    hit_times = [c.position / v for c in cleats]
    assert hit_times[0] == pytest.approx(3.6)
    assert s.duration >= (cleats[-1].position + cleats[-1].length) / v
    np.testing.assert_array_equal(s.road.slope.samples, 0.0)


def test_exp3_fixed_steer_option():
    s = gen_experiment3(Experiment3Config(amplitude_deg=0.0, steer_offset_deg=2.0))
    assert np.all(s.delta.samples[:500] == 0.0)
    np.testing.assert_allclose(s.delta.samples[500:], math.radians(2.0))


def test_steering_ratio_divides_amplitude():
    s = gen_experiment2(Experiment2Config(amplitude_deg=600.0, steering_ratio=10.0))
    assert np.max(s.delta.samples) == pytest.approx(math.radians(60.0), rel=1e-6)


def test_rate_controls_sampling():
    s = gen_experiment1(Experiment1Config(rate_hz=500.0))
    assert s.rate_hz == 500.0 and len(s.delta) == 10001


def test_registry():
    assert sorted(GENERATORS) == ["exp1", "exp2", "exp3"]
    for gen, conf in GENERATORS.values():
        s = gen(conf())
        assert len(s.delta) == len(s.u) == len(s.road.slope)
