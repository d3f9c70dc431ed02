"""Scoring simulated traces against measured ones and fitting the welding
coefficient by grid search.

The score is the mean squared error over the measured trace's own timestamps
(simulated values are interpolated onto them), complemented by the Pearson
correlation coefficient as a shape-agreement report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import build_profile
from .oven import OvenLayout, ProcessParameters
from .thermal import SimulationGrid, ThermalTrace, WeldingModel, simulate


@dataclass(frozen=True)
class AlignedPair:
    """Measured and simulated series on a common, strictly increasing time grid."""

    times: np.ndarray
    measured: np.ndarray
    simulated: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        measured = np.asarray(self.measured, dtype=float)
        simulated = np.asarray(self.simulated, dtype=float)
        if not (times.shape == measured.shape == simulated.shape):
            raise ValueError("aligned series must have equal lengths")
        if times.size < 2:
            raise ValueError("aligned pair needs at least 2 samples")
        if np.any(np.diff(times) <= 0):
            raise ValueError("aligned times must be strictly increasing")
        for name, arr in (
            ("times", times),
            ("measured", measured),
            ("simulated", simulated),
        ):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def align(measured: ThermalTrace, simulated: ThermalTrace) -> AlignedPair:
    """Interpolate the simulated trace onto the measured timestamps.

    Only the overlap of the two time ranges is used; measured values are
    taken verbatim.  Fewer than 2 measured samples in the overlap is an
    error.
    """
    lo = max(measured.times[0], simulated.times[0])
    hi = min(measured.times[-1], simulated.times[-1])
    mask = (measured.times >= lo - 1e-12) & (measured.times <= hi + 1e-12)
    if np.count_nonzero(mask) < 2:
        raise ValueError(
            "measured and simulated time ranges overlap in fewer than 2 samples"
        )
    t = measured.times[mask]
    sim_vals = np.interp(t, simulated.times, simulated.temps)
    return AlignedPair(t, measured.temps[mask], sim_vals)


def discrepancy(pair: AlignedPair) -> float:
    """Mean squared error between the aligned series, in degC squared."""
    diff = pair.measured - pair.simulated
    return float(np.mean(diff * diff))


def pearson(pair: AlignedPair) -> float:
    """Sample Pearson correlation coefficient of the aligned series."""
    m = pair.measured
    s = pair.simulated
    if np.ptp(m) == 0.0 or np.ptp(s) == 0.0:
        raise ValueError("Pearson correlation undefined for a zero-variance series")
    return float(np.corrcoef(m, s)[0, 1])


@dataclass(frozen=True)
class CandidateScore:
    coefficient: float
    discrepancy: float
    pearson: float


@dataclass(frozen=True)
class CalibrationResult:
    """Grid-search outcome; ties in discrepancy go to the smaller coefficient."""

    best_coefficient: float
    scores: tuple[CandidateScore, ...]

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(self.scores))
        best = min(self.scores, key=lambda s: (s.discrepancy, s.coefficient))
        if best.coefficient != self.best_coefficient:
            raise ValueError("best_coefficient does not attain the minimum discrepancy")


def calibrate_coefficient(
    measured: ThermalTrace,
    layout: OvenLayout,
    params: ProcessParameters,
    weight: float,
    candidates,
    grid: SimulationGrid | None = None,
    refine_rounds: int = 1,
    refine_factor: int = 10,
) -> CalibrationResult:
    """Grid-search the welding coefficient against a measured trace.

    Parameters
    ----------
    measured : ThermalTrace
        Sensor trace to fit.
    layout, params, weight
        Furnace geometry, setpoints and cooling-blend weight used for the
        candidate simulations.
    candidates : iterable of float
        Coefficient grid to evaluate, e.g. 0.0200 to 0.0220 in steps of
        0.0005.
    grid : SimulationGrid, optional
        Integration/output grid (defaults to dt=0.1 s, dt_out=0.5 s).
    refine_rounds : int
        After the coarse pass, re-grid one coarse step around the incumbent
        at 1/refine_factor of the step and re-evaluate; repeated per round
        with ever finer steps.  Pass 0 to restrict the search to the given
        grid.

    Returns
    -------
    CalibrationResult
        Per-candidate (coefficient, discrepancy, pearson) rows in evaluation
        order and the best coefficient.
    """
    cands = [float(c) for c in candidates]
    if not cands:
        raise ValueError("candidates must not be empty")
    grid = grid if grid is not None else SimulationGrid()
    profile = build_profile(layout, params, weight)

    def evaluate(q: float) -> CandidateScore:
        sim = simulate(profile, params, WeldingModel(q), grid)
        pair = align(measured, sim)
        return CandidateScore(q, discrepancy(pair), pearson(pair))

    scores = [evaluate(q) for q in cands]
    seen = {round(q, 12) for q in cands}
    step = _grid_step(cands)
    for _ in range(refine_rounds):
        if step is None:
            break
        incumbent = min(scores, key=lambda s: (s.discrepancy, s.coefficient))
        fine = step / refine_factor
        for k in range(-refine_factor, refine_factor + 1):
            q = incumbent.coefficient + k * fine
            q = round(q, 12)
            if q <= 0 or q in seen:
                continue
            seen.add(q)
            scores.append(evaluate(q))
        step = fine

    best = min(scores, key=lambda s: (s.discrepancy, s.coefficient))
    return CalibrationResult(best.coefficient, tuple(scores))


def _grid_step(candidates: list[float]) -> float | None:
    """Median adjacent spacing of the sorted grid; None when not refinable."""
    uniq = sorted(set(candidates))
    if len(uniq) < 2:
        return None
    return float(np.median(np.diff(uniq)))
