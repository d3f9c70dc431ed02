"""Exhaustive parameter sweeps subject to the process-window checks.

Three strategies over simulated traces:

* sweep the belt speed alone and report which speeds stay inside the process
  window (and the largest such speed),
* sweep all setpoints and the speed jointly, minimizing the reflow area (the
  area between the trace and the 217 degC melting line where the trace
  exceeds it),
* the same joint sweep minimizing the asymmetry of the above-217 pass, with
  reflow area as tie-breaker.

Every grid point is an independent pure evaluation; reductions use total
deterministic orderings, so results do not depend on evaluation order or on
the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from .ambient import build_profile
from .limits import MELT_C, LimitVerdict, ProcessLimits, TraceMetrics, check_limits, compute_metrics
from .oven import OvenLayout, ParameterRanges, ProcessParameters
from .thermal import SimulationGrid, ThermalTrace, WeldingModel, simulate

DEFAULT_SPEED_SWEEP_STEP = 0.1


def inclusive_grid(lo: float, hi: float, step: float) -> list[float]:
    """Uniform grid from lo by step, always containing both endpoints."""
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("grid upper bound below lower bound")
    n = int(np.floor((hi - lo) / step + 1e-9))
    values = [round(lo + i * step, 9) for i in range(n + 1)]
    if abs(values[-1] - hi) <= 1e-9:
        values[-1] = hi
    else:
        values.append(hi)
    return values


def _above_intervals(times, temps, level) -> list[tuple[float, float]]:
    """Maximal intervals where the linear interpolant strictly exceeds level.

    Crossing endpoints are interpolated; intervals that touch at a single
    point (the trace grazing the level from above) are merged.
    """
    intervals = []
    inside = temps[0] > level
    start = times[0] if inside else None
    for i in range(len(times) - 1):
        t0, t1 = times[i], times[i + 1]
        y0, y1 = temps[i], temps[i + 1]
        if not inside and y1 > level >= y0:
            start = t0 + (t1 - t0) * (level - y0) / (y1 - y0)
            inside = True
        elif inside and y1 <= level:
            end = t0 + (t1 - t0) * (y0 - level) / (y0 - y1)
            intervals.append((start, end))
            inside = False
    if inside:
        intervals.append((start, times[-1]))
    merged = [intervals[0]] if intervals else []
    for lo, hi in intervals[1:]:
        if lo - merged[-1][1] <= 1e-9:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def reflow_area(trace: ThermalTrace, domain: str = "position") -> float:
    """Area between the trace and the melting line where the trace exceeds it.

    Trapezoidal integration with interpolated crossing endpoints, exact for
    piecewise-linear traces.  ``domain`` selects the integration variable:
    "position" (degC * cm) or "time" (degC * s).
    """
    if domain == "position":
        xs = trace.positions
    elif domain == "time":
        xs = trace.times
    else:
        raise ValueError(f"domain must be 'position' or 'time', got {domain!r}")
    h = np.diff(xs)
    y0 = trace.temps[:-1] - MELT_C
    y1 = trace.temps[1:] - MELT_C
    both = (y0 > 0) & (y1 > 0)
    up = (y0 <= 0) & (y1 > 0)
    down = (y0 > 0) & (y1 <= 0)
    dy = y1 - y0
    area = np.where(both, 0.5 * h * (y0 + y1), 0.0)
    # Crossing segments have dy != 0, so the masked divisions are safe.
    np.divide(0.5 * h * y1 * y1, dy, out=area, where=up)
    np.divide(0.5 * h * y0 * y0, -dy, out=area, where=down)
    return float(np.sum(area))


def symmetry_score(trace: ThermalTrace, offset_step: float = 0.5) -> float:
    """Sum of squared temperature mismatches at mirrored offsets around the
    center of the above-217 pass.

    The melting crossings t1 and t2 are interpolated, the center is their
    midpoint, and pairs are taken at offsets offset_step, 2*offset_step, ...
    while both mirrored points stay inside [t1, t2].  Zero means a perfectly
    symmetric pass.

    Raises
    ------
    ValueError
        If the trace never exceeds 217 degC, or exceeds it on more than one
        disjoint interval.
    """
    intervals = _above_intervals(trace.times, trace.temps, MELT_C)
    if not intervals:
        raise ValueError("trace never exceeds 217 degC; symmetry undefined")
    if len(intervals) > 1:
        raise ValueError(
            f"trace exceeds 217 degC on {len(intervals)} disjoint intervals; "
            "symmetry undefined"
        )
    t1, t2 = intervals[0]
    center = 0.5 * (t1 + t2)
    k = int(np.floor(0.5 * (t2 - t1) / offset_step + 1e-9))
    if k == 0:
        return 0.0
    offsets = (np.arange(k) + 1) * offset_step
    left = np.interp(center - offsets, trace.times, trace.temps)
    right = np.interp(center + offsets, trace.times, trace.temps)
    return float(np.sum((left - right) ** 2))


@dataclass(frozen=True)
class SpeedCheck:
    speed: float
    metrics: TraceMetrics
    verdict: LimitVerdict


@dataclass(frozen=True)
class SpeedSweepResult:
    """Outcome of the speed-only sweep."""

    feasible_speeds: tuple[float, ...]
    max_feasible: float | None
    per_speed: tuple[SpeedCheck, ...]

    def __post_init__(self):
        object.__setattr__(self, "feasible_speeds", tuple(self.feasible_speeds))
        object.__setattr__(self, "per_speed", tuple(self.per_speed))
        expected = self.feasible_speeds[-1] if self.feasible_speeds else None
        if self.max_feasible != expected:
            raise ValueError("max_feasible must be the last feasible speed")


def feasible_speed_interval(
    layout: OvenLayout,
    params: ProcessParameters,
    weight: float,
    coefficient: float,
    speed_range: tuple[float, float] = (65.0, 100.0),
    speed_step: float = DEFAULT_SPEED_SWEEP_STEP,
    grid: SimulationGrid | None = None,
    limits: ProcessLimits | None = None,
) -> SpeedSweepResult:
    """Sweep the belt speed on an inclusive grid at fixed setpoints.

    params.belt_speed is ignored; each grid speed is simulated, measured and
    checked against the limits.  An empty feasible set is a valid result.
    """
    grid = grid if grid is not None else SimulationGrid()
    limits = limits if limits is not None else ProcessLimits()
    profile = build_profile(layout, params, weight)
    model = WeldingModel(coefficient)
    per_speed = []
    for v in inclusive_grid(speed_range[0], speed_range[1], speed_step):
        p = replace(params, belt_speed=v)
        metrics = compute_metrics(simulate(profile, p, model, grid))
        per_speed.append(SpeedCheck(v, metrics, check_limits(metrics, limits)))
    feasible = tuple(c.speed for c in per_speed if c.verdict.passed)
    return SpeedSweepResult(feasible, feasible[-1] if feasible else None, tuple(per_speed))


@dataclass(frozen=True)
class SweepCandidate:
    """One evaluated joint-sweep grid point."""

    params: ProcessParameters
    metrics: TraceMetrics
    area: float
    symmetry: float | None
    feasible: bool

    def key(self) -> tuple[float, float, float, float, float]:
        p = self.params
        return (p.tt1, p.tt2, p.tt3, p.tt4, p.belt_speed)


@dataclass(frozen=True)
class OptimizationResult:
    """Best feasible candidate under the named objective, if any."""

    objective: str
    best: SweepCandidate | None
    candidates_evaluated: int
    candidates: tuple[SweepCandidate, ...]
    rejected_from_objective: int = 0


def _evaluate_temp_combo(
    layout: OvenLayout,
    weight: float,
    coefficient: float,
    grid: SimulationGrid,
    limits: ProcessLimits,
    area_domain: str,
    speeds: tuple[float, ...],
    temps: tuple[float, float, float, float],
) -> list[SweepCandidate]:
    """Evaluate one setpoint combination across all sweep speeds.

    Top-level so process pools can pickle it; the ambient profile is shared
    across the speeds because it does not depend on the belt speed.
    """
    tt1, tt2, tt3, tt4 = temps
    base = ProcessParameters(tt1=tt1, tt2=tt2, tt3=tt3, tt4=tt4)
    profile = build_profile(layout, base, weight)
    model = WeldingModel(coefficient)
    out = []
    for v in speeds:
        p = replace(base, belt_speed=v)
        trace = simulate(profile, p, model, grid)
        metrics = compute_metrics(trace)
        verdict = check_limits(metrics, limits)
        area = reflow_area(trace, area_domain)
        try:
            symmetry = symmetry_score(trace)
        except ValueError:
            symmetry = None
        out.append(SweepCandidate(p, metrics, area, symmetry, verdict.passed))
    return out


def _sweep_grid(
    layout: OvenLayout,
    ranges: ParameterRanges,
    weight: float,
    coefficient: float,
    grid: SimulationGrid,
    limits: ProcessLimits,
    area_domain: str,
    workers: int,
) -> list[SweepCandidate]:
    combos = [
        (tt1, tt2, tt3, tt4)
        for tt1 in inclusive_grid(*ranges.tt1, ranges.temp_step)
        for tt2 in inclusive_grid(*ranges.tt2, ranges.temp_step)
        for tt3 in inclusive_grid(*ranges.tt3, ranges.temp_step)
        for tt4 in inclusive_grid(*ranges.tt4, ranges.temp_step)
    ]
    speeds = tuple(inclusive_grid(*ranges.belt_speed, ranges.speed_step))
    evaluate = partial(
        _evaluate_temp_combo, layout, weight, coefficient, grid, limits, area_domain, speeds
    )
    if workers > 1:
        chunk = max(1, len(combos) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(evaluate, combos, chunksize=chunk))
    else:
        batches = [evaluate(c) for c in combos]
    return [cand for batch in batches for cand in batch]


def _refined_ranges(ranges: ParameterRanges, best: ProcessParameters, factor: int) -> ParameterRanges:
    """Shrink the grids to +/- one step around the incumbent at step/factor."""

    def narrow(interval, center, step):
        return (max(interval[0], center - step), min(interval[1], center + step))

    return ParameterRanges(
        tt1=narrow(ranges.tt1, best.tt1, ranges.temp_step),
        tt2=narrow(ranges.tt2, best.tt2, ranges.temp_step),
        tt3=narrow(ranges.tt3, best.tt3, ranges.temp_step),
        tt4=narrow(ranges.tt4, best.tt4, ranges.temp_step),
        tt5=ranges.tt5,
        belt_speed=narrow(ranges.belt_speed, best.belt_speed, ranges.speed_step),
        temp_step=ranges.temp_step / factor,
        speed_step=ranges.speed_step / factor,
    )


def objective_key(objective: str, candidate: SweepCandidate) -> tuple:
    """Total deterministic ordering used to pick the best candidate.

    "area": (area, params); "symmetry": (symmetry, area, params).  Smaller
    is better throughout, so ties always resolve to the lexicographically
    smallest parameter tuple.
    """
    if objective == "area":
        return (candidate.area, *candidate.key())
    if objective == "symmetry":
        return (candidate.symmetry, candidate.area, *candidate.key())
    raise ValueError(f"unknown objective {objective!r}")


def objective_eligible(objective: str, candidate: SweepCandidate) -> bool:
    """Whether a candidate can compete under the objective."""
    if objective == "area":
        return candidate.feasible
    if objective == "symmetry":
        return candidate.feasible and candidate.symmetry is not None
    raise ValueError(f"unknown objective {objective!r}")


def _optimize(
    objective: str,
    layout: OvenLayout,
    ranges: ParameterRanges,
    weight: float,
    coefficient: float,
    grid: SimulationGrid | None,
    limits: ProcessLimits | None,
    area_domain: str,
    refine_rounds: int,
    refine_factor: int,
    workers: int,
) -> OptimizationResult:
    grid = grid if grid is not None else SimulationGrid()
    limits = limits if limits is not None else ProcessLimits()
    if objective not in ("area", "symmetry"):
        raise ValueError(f"unknown objective {objective!r}")

    def sort_key(c: SweepCandidate):
        return objective_key(objective, c)

    def eligible(c: SweepCandidate) -> bool:
        return objective_eligible(objective, c)

    candidates: list[SweepCandidate] = []
    seen: set[tuple] = set()
    current_ranges = ranges
    best = None
    for round_idx in range(refine_rounds + 1):
        batch = _sweep_grid(
            layout, current_ranges, weight, coefficient, grid, limits, area_domain, workers
        )
        for cand in batch:
            k = tuple(round(x, 9) for x in cand.key())
            if k in seen:
                continue
            seen.add(k)
            candidates.append(cand)
        pool = [c for c in candidates if eligible(c)]
        best = min(pool, key=sort_key) if pool else None
        if best is None or round_idx == refine_rounds:
            break
        current_ranges = _refined_ranges(current_ranges, best.params, refine_factor)

    rejected = sum(1 for c in candidates if c.feasible and c.symmetry is None)
    if best is not None and not check_limits(best.metrics, limits).passed:
        raise RuntimeError("internal error: selected candidate fails the limit re-check")
    return OptimizationResult(
        objective=objective,
        best=best,
        candidates_evaluated=len(candidates),
        candidates=tuple(candidates),
        rejected_from_objective=rejected if objective == "symmetry" else 0,
    )


def minimize_area(
    layout: OvenLayout,
    ranges: ParameterRanges,
    weight: float,
    coefficient: float,
    grid: SimulationGrid | None = None,
    limits: ProcessLimits | None = None,
    area_domain: str = "position",
    refine_rounds: int = 0,
    refine_factor: int = 5,
    workers: int = 1,
) -> OptimizationResult:
    """Exhaustively search the setpoint/speed grids for the feasible candidate
    with the smallest reflow area.

    Ties break toward the lexicographically smallest (tt1, tt2, tt3, tt4,
    belt_speed).  With refine_rounds > 0, each round re-grids one step around
    the incumbent at step/refine_factor and re-evaluates.  An infeasible-
    everywhere sweep returns best=None rather than raising.
    """
    return _optimize(
        "area", layout, ranges, weight, coefficient, grid, limits,
        area_domain, refine_rounds, refine_factor, workers,
    )


def most_symmetric(
    layout: OvenLayout,
    ranges: ParameterRanges,
    weight: float,
    coefficient: float,
    grid: SimulationGrid | None = None,
    limits: ProcessLimits | None = None,
    area_domain: str = "position",
    refine_rounds: int = 0,
    refine_factor: int = 5,
    workers: int = 1,
) -> OptimizationResult:
    """Joint sweep minimizing (symmetry score, reflow area) lexicographically.

    Feasible candidates whose above-217 pass is disconnected have no
    symmetry score; they are excluded from the objective and counted in
    rejected_from_objective.
    """
    return _optimize(
        "symmetry", layout, ranges, weight, coefficient, grid, limits,
        area_domain, refine_rounds, refine_factor, workers,
    )
