"""Synthetic recreations of the three test-track drives.

Every scenario starts with a straight lead-in so start-up transients settle
before the events of interest. Steering traces are road-wheel angles; the
``steering_ratio`` field divides a hand-wheel amplitude down to the road
wheel and defaults to 1 (amplitudes given directly at the road wheel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DEFAULT_RATE_HZ
from .signals import Cleat, RoadProfile, SignalTrace

KMH = 1.0 / 3.6


@dataclass(frozen=True)
class Scenario:
    name: str
    delta: SignalTrace
    u: SignalTrace
    road: RoadProfile
    duration: float
    rate_hz: float

    def with_road(self, road: RoadProfile) -> "Scenario":
        return Scenario(self.name, self.delta, self.u, road, self.duration, self.rate_hz)

    def with_delta(self, delta: SignalTrace) -> "Scenario":
        return Scenario(self.name, delta, self.u, self.road, self.duration, self.rate_hz)


def _time(duration, rate_hz):
    n = int(round(duration * rate_hz)) + 1
    return np.arange(n) / rate_hz


def _smoothstep(s):
    s = np.clip(s, 0.0, 1.0)
    return 0.5 - 0.5 * np.cos(math.pi * s)


def _assemble(name, t, delta, speed, slope, cleats, rate_hz):
    return Scenario(
        name=name,
        delta=SignalTrace("delta", "rad", rate_hz, delta),
        u=SignalTrace("speed", "m/s", rate_hz, speed),
        road=RoadProfile(SignalTrace("slope", "rad", rate_hz, slope), cleats),
        duration=float(t[-1]),
        rate_hz=rate_hz,
    )


@dataclass(frozen=True)
class Experiment1Config:
    """Crowned-road crossing: slope swings from +slope to -slope."""

    speed_kmh: float = 20.0
    slope_deg: float = 11.0
    lead_in: float = 2.0
    hold: float = 4.0
    crossing_time: float = 4.0
    duration: float = 20.0
    steer_amplitude_deg: float = 2.0
    steer_period: float = 6.0
    steering_ratio: float = 1.0
    rate_hz: float = DEFAULT_RATE_HZ


def gen_experiment1(cfg: Experiment1Config = Experiment1Config()) -> Scenario:
    t = _time(cfg.duration, cfg.rate_hz)
    theta0 = math.radians(cfg.slope_deg)
    t_cross = cfg.lead_in + cfg.hold
    slope = theta0 * (1.0 - 2.0 * _smoothstep((t - t_cross) / cfg.crossing_time))
    amp = math.radians(cfg.steer_amplitude_deg) / cfg.steering_ratio
    active = t >= cfg.lead_in
    delta = np.where(active, amp * np.sin(2 * math.pi * (t - cfg.lead_in) / cfg.steer_period), 0.0)
    speed = np.full(t.size, cfg.speed_kmh * KMH)
    return _assemble("exp1", t, delta, speed, slope, (), cfg.rate_hz)


@dataclass(frozen=True)
class Experiment2Config:
    """Aggressive slalom on a constant lateral slope."""

    speed_kmh: float = 15.0
    slope_deg: float = 11.0
    amplitude_deg: float = 60.0
    period: float = 4.0
    lead_in: float = 2.0
    slalom_duration: float = 20.0
    steering_ratio: float = 1.0
    rate_hz: float = DEFAULT_RATE_HZ


def gen_experiment2(cfg: Experiment2Config = Experiment2Config()) -> Scenario:
    t = _time(cfg.lead_in + cfg.slalom_duration, cfg.rate_hz)
    amp = math.radians(cfg.amplitude_deg) / cfg.steering_ratio
    tau = t - cfg.lead_in
    active = (tau >= 0) & (tau <= cfg.slalom_duration)
    delta = np.where(active, amp * np.sin(2 * math.pi * tau / cfg.period), 0.0)
    slope = np.full(t.size, math.radians(cfg.slope_deg))
    speed = np.full(t.size, cfg.speed_kmh * KMH)
    return _assemble("exp2", t, delta, speed, slope, (), cfg.rate_hz)


@dataclass(frozen=True)
class Experiment3Config:
    """Slalom over thirteen transverse cleats on a flat road.

    ``steer_offset_deg`` adds a constant steer; set ``amplitude_deg=0`` for a
    fixed steer angle.
    """

    speed_kmh: float = 30.0
    heights: tuple = (0.01,) * 4 + (0.02,) * 5 + (0.03,) * 4
    cleat_length: float = 0.04
    spacing: float = 8.0
    first_cleat: float = 30.0
    amplitude_deg: float = 30.0
    period: float = 4.0
    steer_offset_deg: float = 0.0
    lead_in: float = 2.0
    tail: float = 3.0
    steering_ratio: float = 1.0
    rate_hz: float = DEFAULT_RATE_HZ


def experiment3_cleats(cfg: Experiment3Config = Experiment3Config()) -> tuple:
    return tuple(Cleat(cfg.first_cleat + i * cfg.spacing, h, cfg.cleat_length)
                 for i, h in enumerate(cfg.heights))


def gen_experiment3(cfg: Experiment3Config = Experiment3Config()) -> Scenario:
    cleats = experiment3_cleats(cfg)
    u = cfg.speed_kmh * KMH
    last = cleats[-1].position + cleats[-1].length if cleats else cfg.first_cleat
    t = _time(max(last / u, cfg.lead_in) + cfg.tail, cfg.rate_hz)
    amp = math.radians(cfg.amplitude_deg) / cfg.steering_ratio
    offset = math.radians(cfg.steer_offset_deg) / cfg.steering_ratio
    tau = t - cfg.lead_in
    delta = np.where(tau >= 0, offset + amp * np.sin(2 * math.pi * tau / cfg.period), 0.0)
    slope = np.zeros(t.size)
    speed = np.full(t.size, u)
    return _assemble("exp3", t, delta, speed, slope, cleats, cfg.rate_hz)


GENERATORS = {
    "exp1": (gen_experiment1, Experiment1Config),
    "exp2": (gen_experiment2, Experiment2Config),
    "exp3": (gen_experiment3, Experiment3Config),
}
