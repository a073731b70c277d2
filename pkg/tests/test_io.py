import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rackforce.config import config_from_dict, default_config, load_config, save_config
from rackforce.errors import AlignmentError, ConfigError
from rackforce.io import (SchemaError, read_cleats_csv, read_scenario, read_table_csv,
                          read_trace_csv, write_scenario, write_table_csv, write_trace_csv)
from rackforce.scenarios import Experiment3Config, gen_experiment3
from rackforce.signals import SignalTrace


@pytest.fixture(autouse=True)
def no_env_config(monkeypatch):
    monkeypatch.delenv("RACKFORCE_CONFIG", raising=False)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=2, max_size=30))
def test_nine_digit_round_trip_is_idempotent(tmp_path_factory, values):
    d = tmp_path_factory.mktemp("rt")
    write_trace_csv(d / "a.csv", SignalTrace("delta", "rad", 250.0, values))
    first = read_trace_csv(d / "a.csv")
    write_trace_csv(d / "b.csv", first)
    assert (d / "a.csv").read_text() == (d / "b.csv").read_text()
    np.testing.assert_allclose(first.samples, values, rtol=1e-8, atol=1e-300)
    assert first.rate_hz == 250.0


def test_no_negative_zero(tmp_path):
    write_table_csv(tmp_path / "z.csv", [0.0, 1.0], {"x": [-0.0, 1.5]})
    assert "-0" not in (tmp_path / "z.csv").read_text()


def test_schema_errors(tmp_path):
    (tmp_path / "a.csv").write_text("time,delta\n0,1\n1,2\n")
    with pytest.raises(SchemaError, match="header"):
        read_table_csv(tmp_path / "a.csv")
    (tmp_path / "b.csv").write_text("t,delta\n0,1\n1,abc\n")
    with pytest.raises(SchemaError, match="non-numeric"):
        read_table_csv(tmp_path / "b.csv")
    (tmp_path / "c.csv").write_text("t,delta\n0,1\n0.004,1\n0.010,1\n")
    with pytest.raises(SchemaError, match="uniform"):
        read_trace_csv(tmp_path / "c.csv")
    (tmp_path / "d.csv").write_text("pos,h,l\n1,2,3\n")
    with pytest.raises(SchemaError):
        read_cleats_csv(tmp_path / "d.csv")
    with pytest.raises(FileNotFoundError):
        read_table_csv(tmp_path / "missing.csv")
    assert read_cleats_csv(tmp_path / "missing.csv") == ()


def test_scenario_round_trip(tmp_path):
    s = gen_experiment3(Experiment3Config(first_cleat=10.0, heights=(0.01, 0.02)))
    write_scenario(tmp_path, s, default_config())
    back, cfg = read_scenario(tmp_path)
    assert back.road.cleats == s.road.cleats
    np.testing.assert_allclose(back.delta.samples, s.delta.samples, rtol=1e-8, atol=1e-12)
    assert cfg == default_config()


def _write(path, name, t, x):
    write_table_csv(path, t, {name: x})


def test_handwheel_and_resampling(tmp_path):
    t100 = np.arange(201) / 100.0
    t250 = np.arange(501) / 250.0
    _write(tmp_path / "delta.csv", "handwheel", t100, 16.0 * 0.01 * t100)
    _write(tmp_path / "speed.csv", "speed", t250, np.full(501, 8.0))
    _write(tmp_path / "slope.csv", "slope", t250, np.zeros(501))
    (tmp_path / "config.json").write_text(json.dumps({"sim": {"steering_ratio": 16.0}}))
    s, cfg = read_scenario(tmp_path)
    assert len(s.delta) == 501 and s.delta.name == "delta"
    np.testing.assert_allclose(s.delta.samples, 0.01 * t250, atol=1e-12)


def test_misaligned_scenario(tmp_path):
    _write(tmp_path / "delta.csv", "delta", np.arange(10) / 250, np.zeros(10))
    _write(tmp_path / "speed.csv", "speed", np.arange(12) / 250, np.full(12, 8.0))
    _write(tmp_path / "slope.csv", "slope", np.arange(10) / 250, np.zeros(10))
    with pytest.raises(AlignmentError):
        read_scenario(tmp_path)


def test_config_partial_override_and_errors(tmp_path):
    cfg = config_from_dict({"vehicle": {"m": 1500}})
    assert cfg.vehicle.m == 1500.0 and cfg.vehicle.I == 3600.0
    with pytest.raises(ConfigError, match="unknown"):
        config_from_dict({"vehicle": {"mass": 1}})
    with pytest.raises(ConfigError, match="vehicle.m"):
        config_from_dict({"vehicle": {"m": -1}})
    with pytest.raises(ConfigError, match="sigma_relax"):
        config_from_dict({"oracle": {"sigma_relax": 0}})
    save_config(cfg, tmp_path / "c.json")
    assert load_config(tmp_path / "c.json") == cfg
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ConfigError):
        load_config(tmp_path / "bad.json")
    with pytest.raises(ConfigError):
        load_config(tmp_path / "none.json")


def test_env_config_takes_precedence(tmp_path, monkeypatch):
    (tmp_path / "env.json").write_text(json.dumps({"vehicle": {"i_p": 9.0}}))
    (tmp_path / "arg.json").write_text(json.dumps({"vehicle": {"i_p": 5.0}}))
    monkeypatch.setenv("RACKFORCE_CONFIG", str(tmp_path / "env.json"))
    assert load_config(tmp_path / "arg.json").vehicle.i_p == 9.0


def test_defaults_match_test_vehicle():
    v = default_config().vehicle
    assert (v.m, v.I, v.l_f + v.l_r) == (1972.0, 3600.0, pytest.approx(2.88))
    assert default_config().tire_bt.cornering_stiffness == pytest.approx(default_config().tire_lt.C_af)
    assert math.isclose(default_config().rate_hz, 250.0)
