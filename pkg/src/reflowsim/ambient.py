"""Piecewise ambient temperature field inside the furnace.

The field T(x) is assembled from the layout and the zone setpoints:

* constant plateaus over the entry region and over runs of equally-set zones
  (gaps between equal setpoints are absorbed into the plateau),
* a unit-steepness sigmoid across each gap separating differently-set zones,
* a weighted exponential/linear blend over the cooling stretch, from the end
  of the last hot zone to the end of the last heated zone,
* a constant tail at the exterior temperature over the exit region.

Segment joins are right-continuous: a position exactly on a boundary belongs
to the later segment, except the furnace end which belongs to the last one.
The sigmoid gaps therefore leave small jumps of |dT|/(1 + e^2.5) at their
endpoints; this is deliberate, not a bug to smooth over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oven import OvenLayout, ProcessParameters

DEFAULT_BLEND_WEIGHT = 0.8


@dataclass(frozen=True)
class ConstantSegment:
    x_start: float
    x_end: float
    level: float

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.full(np.shape(x), self.level, dtype=float)


@dataclass(frozen=True)
class SigmoidSegment:
    """Smooth transition between two plateaus, centered on the gap midpoint.

    The exponent is (x - center) with x in cm: unit steepness per cm, no
    extra scale factor.
    """

    x_start: float
    x_end: float
    t_before: float
    t_after: float
    center: float

    def __post_init__(self):
        mid = 0.5 * (self.x_start + self.x_end)
        if abs(self.center - mid) > 1e-9:
            raise ValueError(
                f"sigmoid center {self.center} must be the segment midpoint {mid}"
            )

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.t_before + (self.t_after - self.t_before) / (
            1.0 + np.exp(-(x - self.center))
        )


@dataclass(frozen=True)
class ExpLinearBlendSegment:
    """Cooling-region model: weight * line + (1 - weight) * exponential.

    Both components interpolate (x_pre, t_hot) and (x_post, t_cold) exactly,
    so the blend does too for any weight.  The exponential requires strictly
    positive endpoint temperatures.
    """

    x_start: float
    x_end: float
    t_hot: float
    t_cold: float
    x_pre: float
    x_post: float
    weight: float

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"blend weight must lie in [0, 1], got {self.weight}")
        if self.t_hot <= 0.0 or self.t_cold <= 0.0:
            raise ValueError(
                "blend endpoint temperatures must be positive for the "
                f"exponential component, got {self.t_hot}, {self.t_cold}"
            )
        if not self.x_pre < self.x_post:
            raise ValueError("blend anchors must satisfy x_pre < x_post")

    @property
    def rate(self) -> float:
        """Exponential rate: t_hot * exp(rate * (x - x_pre)) hits t_cold at x_post."""
        return (math.log(self.t_hot) - math.log(self.t_cold)) / (self.x_pre - self.x_post)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        linear = self.t_hot + (self.t_cold - self.t_hot) * (x - self.x_pre) / (
            self.x_post - self.x_pre
        )
        exponential = self.t_hot * np.exp(self.rate * (x - self.x_pre))
        return self.weight * linear + (1.0 - self.weight) * exponential


Segment = ConstantSegment | SigmoidSegment | ExpLinearBlendSegment


@dataclass(frozen=True)
class AmbientProfile:
    """Contiguous segments covering [0, total_length_cm]; immutable and pure."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("profile needs at least one segment")
        if self.segments[0].x_start != 0.0:
            raise ValueError("profile must start at x = 0")
        for prev, cur in zip(self.segments, self.segments[1:]):
            if cur.x_start != prev.x_end:
                raise ValueError(
                    f"profile segments not contiguous at x = {prev.x_end}"
                )
        starts = np.array([s.x_start for s in self.segments])
        starts.setflags(write=False)
        object.__setattr__(self, "_starts", starts)

    @property
    def total_length_cm(self) -> float:
        return self.segments[-1].x_end

    def __call__(self, x):
        return ambient_at(self, x)


def ambient_at(profile: AmbientProfile, x):
    """Evaluate the ambient field at position(s) x in cm.

    Scalar in, float out; array in, ndarray out.  Positions outside
    [0, total_length_cm] are a domain error.
    """
    arr = np.asarray(x, dtype=float)
    total = profile.total_length_cm
    if np.any(arr < 0.0) or np.any(arr > total):
        raise ValueError(f"position outside furnace [0, {total}] cm")
    idx = np.searchsorted(profile._starts, arr, side="right") - 1
    idx = np.minimum(idx, len(profile.segments) - 1)
    out = np.empty(arr.shape, dtype=float)
    for i, seg in enumerate(profile.segments):
        mask = idx == i
        if np.any(mask):
            out[mask] = seg.evaluate(arr[mask])
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def build_profile(
    layout: OvenLayout,
    params: ProcessParameters,
    weight: float = DEFAULT_BLEND_WEIGHT,
) -> AmbientProfile:
    """Assemble the piecewise ambient field for a layout and set of setpoints.

    Parameters
    ----------
    layout : OvenLayout
        Furnace geometry.  Must follow the canonical structure: entry region,
        heated zones separated by gaps, exit region.
    params : ProcessParameters
        Zone setpoints; each heated zone reads its slot temperature.
    weight : float
        Mixing weight of the linear component in the cooling blend (the
        remaining 1 - weight goes to the exponential component).

    Raises
    ------
    ValueError
        If the layout lacks the expected region structure, the weight is
        outside [0, 1], or the cooling endpoints are not positive.
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"blend weight must lie in [0, 1], got {weight}")
    heated = layout.heated_zones()
    if not heated:
        raise ValueError("layout has no heated zones")
    temps = [params.slot_temperature(z.setpoint_slot) for z in heated]
    cold = params.tt5

    # Last zone set hotter than the exterior: the cooling blend starts where
    # it ends and runs to the end of the last heated zone.
    hot_idx = None
    for i in range(len(heated) - 1, -1, -1):
        if temps[i] != cold:
            hot_idx = i
            break

    segments: list[Segment] = []
    first_heated_start = heated[0].start_cm
    if first_heated_start > 0.0:
        segments.append(ConstantSegment(0.0, first_heated_start, cold))

    if hot_idx is None:
        # Degenerate furnace: everything at the exterior temperature.
        segments.append(ConstantSegment(first_heated_start, layout.total_length_cm, cold))
        return AmbientProfile(tuple(segments))

    run_start = heated[0].start_cm
    run_temp = temps[0]
    for i in range(hot_idx + 1):
        zone = heated[i]
        temp = temps[i]
        if temp != run_temp:
            # Close the previous plateau at its last zone's end and bridge
            # the gap with a sigmoid.
            gap_start = run_end
            gap_end = zone.start_cm
            if gap_end <= gap_start:
                raise ValueError(
                    f"zones with different setpoints must be separated by a "
                    f"gap (missing before {zone.name!r})"
                )
            segments.append(ConstantSegment(run_start, gap_start, run_temp))
            segments.append(
                SigmoidSegment(
                    gap_start, gap_end, run_temp, temp, 0.5 * (gap_start + gap_end)
                )
            )
            run_start = gap_end
            run_temp = temp
        run_end = zone.end_cm
    segments.append(ConstantSegment(run_start, run_end, run_temp))

    blend_start = heated[hot_idx].end_cm
    blend_end = heated[-1].end_cm
    if hot_idx < len(heated) - 1:
        segments.append(
            ExpLinearBlendSegment(
                blend_start,
                blend_end,
                t_hot=temps[hot_idx],
                t_cold=cold,
                x_pre=blend_start,
                x_post=blend_end,
                weight=weight,
            )
        )
    if blend_end < layout.total_length_cm:
        segments.append(ConstantSegment(blend_end, layout.total_length_cm, cold))
    return AmbientProfile(tuple(segments))


@dataclass(frozen=True)
class WeightScore:
    weight: float
    discrepancy: float


@dataclass(frozen=True)
class BlendFit:
    """Result of the blend-weight grid search; ties go to the smaller weight."""

    best_weight: float
    scores: tuple[WeightScore, ...]

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(self.scores))
        best = min(self.scores, key=lambda s: (s.discrepancy, s.weight))
        if best.weight != self.best_weight:
            raise ValueError("best_weight does not attain the minimum discrepancy")


def fit_blend_weight(
    measured,
    layout: OvenLayout,
    params: ProcessParameters,
    coefficient: float,
    weight_candidates,
    grid=None,
) -> BlendFit:
    """Grid-search the cooling-blend weight against a measured trace.

    Simulates the furnace once per candidate weight and scores each run by
    the mean squared error against the measured trace at its own timestamps.
    """
    from .calibrate import align, discrepancy as _discrepancy
    from .thermal import SimulationGrid, WeldingModel, simulate

    candidates = list(weight_candidates)
    if not candidates:
        raise ValueError("weight_candidates must not be empty")
    grid = grid if grid is not None else SimulationGrid()
    model = WeldingModel(coefficient)
    scores = []
    for w in candidates:
        profile = build_profile(layout, params, w)
        sim = simulate(profile, params, model, grid)
        pair = align(measured, sim)
        scores.append(WeightScore(w, _discrepancy(pair)))
    best = min(scores, key=lambda s: (s.discrepancy, s.weight))
    return BlendFit(best.weight, tuple(scores))
