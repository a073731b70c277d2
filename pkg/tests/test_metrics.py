import numpy as np
import pytest
from hypothesis import given, strategies as st

from rackforce.errors import InvalidInputError
from rackforce.metrics import Excursion, MetricReport, baseline_noise, find_excursions, nmae


def test_hand_example():
    assert nmae([0.0, 2.0], [1.0, 1.0]) == pytest.approx(50.0)


def test_perfect_estimate():
    assert nmae([1.0, 3.0, -2.0], [1.0, 3.0, -2.0]) == 0.0


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=50).filter(lambda x: max(x) - min(x) > 1e-3),
       st.floats(-100, 100))
def test_constant_shift(ref, c):
    ref = np.array(ref)
    expect = abs(c) / (ref.max() - ref.min()) * 100
    assert nmae(ref, ref + c) == pytest.approx(expect, rel=1e-6, abs=1e-9)


def test_errors():
    with pytest.raises(InvalidInputError, match="constant"):
        nmae([2.0, 2.0], [1.0, 3.0])
    with pytest.raises(InvalidInputError):
        nmae([1.0, 2.0], [1.0])
    with pytest.raises(InvalidInputError):
        nmae([1.0], [1.0])


def test_excursions():
    base = np.zeros(12)
    sig = np.array([0, 5, 6, 0, 0, -7, 0, 0, 1, 0, 4, 4.5])
    ex = find_excursions(sig, base, 3.0)
    assert ex == [Excursion(1, 3, 6.0), Excursion(5, 6, 7.0), Excursion(10, 12, 4.5)]
    assert find_excursions(base, base, 0.5) == []


def test_noise_floor():
    assert baseline_noise(np.zeros(100)) == 1.0
    x = np.array([10.0, -10.0] * 50)
    assert baseline_noise(x) == pytest.approx(10.0)
    assert baseline_noise(np.r_[1e6, np.zeros(10)], start=1) == 1.0


def test_report_dict():
    rep = MetricReport(nmae_pct={"lt": 1.5})
    assert rep.to_dict() == {"reference": "oracle", "nmae_pct": {"lt": 1.5}, "extrema": {}, "runtime": {}}
