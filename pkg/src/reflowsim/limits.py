"""Manufacturability metrics of a trace and the five process-window checks.

The five quantities: extreme heating/cooling slopes, the duration of the
rising pass between 150 degC and 190 degC, the total time above the 217 degC
solder melting point, and the peak temperature.  Level crossings are located
by linear interpolation between bracketing samples, so durations are exact
for piecewise-linear traces whose vertices are sample nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .thermal import ThermalTrace

RISE_BAND_LOW_C = 150.0
RISE_BAND_HIGH_C = 190.0
MELT_C = 217.0


@dataclass(frozen=True)
class ProcessLimits:
    """Inclusive bounds on the five trace metrics."""

    slope_max: float = 3.0
    slope_min: float = -3.0
    rise_150_190: tuple[float, float] = (60.0, 120.0)
    time_above_217: tuple[float, float] = (40.0, 90.0)
    peak: tuple[float, float] = (240.0, 250.0)

    def __post_init__(self):
        for name in ("rise_150_190", "time_above_217", "peak"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} interval has lower bound above upper")


@dataclass(frozen=True)
class TraceMetrics:
    """Measured values of the five manufacturability quantities.

    rise_time_150_190 is None when either band edge is never reached before
    the peak.  duration_above_217 sums every interval of the super-level set,
    not just the first.
    """

    max_slope: float
    min_slope: float
    rise_time_150_190: float | None
    duration_above_217: float
    peak_temp: float
    peak_time: float

    def __post_init__(self):
        if self.min_slope > self.max_slope:
            raise ValueError("min_slope exceeds max_slope")
        if self.duration_above_217 < 0:
            raise ValueError("duration_above_217 must be non-negative")


@dataclass(frozen=True)
class LimitCheck:
    name: str
    measured: float | None
    lower: float | None
    upper: float | None
    passed: bool


@dataclass(frozen=True)
class LimitVerdict:
    """Per-limit results in fixed order; overall pass is their conjunction."""

    checks: tuple[LimitCheck, ...]

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _first_upward_crossing(times, temps, level, end_idx):
    """Time of the first upward crossing of level within samples [0, end_idx].

    Returns None if the level is not reached there.  A trace already at or
    above the level at its first sample crosses at t[0].
    """
    segment = temps[: end_idx + 1]
    reached = np.nonzero(segment >= level)[0]
    if reached.size == 0:
        return None
    j = int(reached[0])
    if j == 0:
        return float(times[0])
    t0, t1 = times[j - 1], times[j]
    y0, y1 = temps[j - 1], temps[j]
    return float(t0 + (t1 - t0) * (level - y0) / (y1 - y0))


def _measure_above(times, temps, level) -> float:
    """Total time the linear interpolant spends strictly above level."""
    t0, t1 = times[:-1], times[1:]
    y0, y1 = temps[:-1], temps[1:]
    width = t1 - t0
    both_above = (y0 > level) & (y1 > level)
    up = (y0 <= level) & (y1 > level)
    down = (y0 > level) & (y1 <= level)
    # Crossing segments have y1 != y0 by construction, so the masked
    # divisions below never see a zero denominator.
    frac_up = np.zeros_like(width)
    np.divide(y1 - level, y1 - y0, out=frac_up, where=up)
    frac_down = np.zeros_like(width)
    np.divide(y0 - level, y0 - y1, out=frac_down, where=down)
    return float(np.sum(width * (both_above + frac_up + frac_down)))


def compute_metrics(trace: ThermalTrace) -> TraceMetrics:
    """Extract the five manufacturability metrics from a trace.

    Slopes are forward differences at the trace's native sample interval.
    The rise time is measured on the rising pass only: first upward crossings
    of 150 degC and 190 degC at or before the peak.
    """
    if len(trace) < 2:
        raise ValueError("metrics need at least 2 samples")
    times = trace.times
    temps = trace.temps
    slopes = np.diff(temps) / trace.dt
    peak_idx = int(np.argmax(temps))

    t_low = _first_upward_crossing(times, temps, RISE_BAND_LOW_C, peak_idx)
    t_high = _first_upward_crossing(times, temps, RISE_BAND_HIGH_C, peak_idx)
    rise = None if t_low is None or t_high is None else t_high - t_low

    return TraceMetrics(
        max_slope=float(np.max(slopes)),
        min_slope=float(np.min(slopes)),
        rise_time_150_190=rise,
        duration_above_217=_measure_above(times, temps, MELT_C),
        peak_temp=float(temps[peak_idx]),
        peak_time=float(times[peak_idx]),
    )


def check_limits(metrics: TraceMetrics, limits: ProcessLimits | None = None) -> LimitVerdict:
    """Check the five metrics against their bounds (all inclusive).

    An absent rise time fails its limit; nothing raises.
    """
    limits = limits if limits is not None else ProcessLimits()
    rise = metrics.rise_time_150_190
    checks = (
        LimitCheck(
            "max_slope",
            metrics.max_slope,
            None,
            limits.slope_max,
            metrics.max_slope <= limits.slope_max,
        ),
        LimitCheck(
            "min_slope",
            metrics.min_slope,
            limits.slope_min,
            None,
            metrics.min_slope >= limits.slope_min,
        ),
        LimitCheck(
            "rise_time_150_190",
            rise,
            limits.rise_150_190[0],
            limits.rise_150_190[1],
            rise is not None
            and limits.rise_150_190[0] <= rise <= limits.rise_150_190[1],
        ),
        LimitCheck(
            "time_above_217",
            metrics.duration_above_217,
            limits.time_above_217[0],
            limits.time_above_217[1],
            limits.time_above_217[0]
            <= metrics.duration_above_217
            <= limits.time_above_217[1],
        ),
        LimitCheck(
            "peak_temp",
            metrics.peak_temp,
            limits.peak[0],
            limits.peak[1],
            limits.peak[0] <= metrics.peak_temp <= limits.peak[1],
        ),
    )
    return LimitVerdict(checks)
