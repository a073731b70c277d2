"""Error metrics and transient detection for rack-force traces."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .signals import SignalTrace


def _values(x):
    return np.asarray(x.samples if isinstance(x, SignalTrace) else x, dtype=float)


def nmae(reference, estimate) -> float:
    """Mean absolute error normalised by the reference range, in percent."""
    ref, est = _values(reference), _values(estimate)
    if ref.shape != est.shape:
        raise InvalidInputError(f"length mismatch: reference {ref.size}, estimate {est.size}")
    if ref.size < 2:
        raise InvalidInputError("nmae needs at least two samples")
    span = ref.max() - ref.min()
    if not span > 0:
        raise InvalidInputError("reference trace is constant; NMAE normalisation undefined")
    return float(np.mean(np.abs(ref - est)) / span * 100.0)


@dataclass
class MetricReport:
    """NMAE per estimator against one reference, plus extrema and timings."""

    reference: str = "oracle"
    nmae_pct: dict = field(default_factory=dict)
    extrema: dict = field(default_factory=dict)
    runtime: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"reference": self.reference, "nmae_pct": dict(self.nmae_pct),
                "extrema": dict(self.extrema), "runtime": dict(self.runtime)}


@dataclass(frozen=True)
class Excursion:
    start: int
    stop: int
    peak: float


def find_excursions(signal, baseline, threshold: float) -> list[Excursion]:
    """Contiguous runs where ``|signal - baseline|`` exceeds ``threshold``.

    ``peak`` is the largest absolute deviation within each run; ``stop`` is
    exclusive.
    """
    dev = np.abs(_values(signal) - _values(baseline))
    above = dev > threshold
    edges = np.flatnonzero(np.diff(np.concatenate(([0], above.astype(np.int8), [0]))))
    return [Excursion(int(a), int(b), float(dev[a:b].max())) for a, b in zip(edges[0::2], edges[1::2])]


def baseline_noise(baseline, start: int = 0, floor: float = 1.0) -> float:
    """Sample standard deviation of a baseline trace after ``start``.

    A deterministic simulation has essentially no noise; ``floor`` (newtons)
    stands in for the resolution of a rack-force measurement.
    """
    x = _values(baseline)[start:]
    return max(float(np.std(x)), floor)
