"""Certified finite-stage analysis of the hybrid difference set.

For a Cantor set C in [0,1] with complement taken inside [0,1], the
object of study is D = {x - y : x outside C, y in C} and its missing
set S = [-1,1] minus D.  Stage data gives two exactly computable
brackets:

* inner:  every recorded gap stays in the complement forever and every
  recorded component endpoint stays in C forever, so the union of all
  gap-minus-endpoint translates is certified inside D, at every depth.

* outer:  C is always inside the stage components and the complement is
  always inside [0,1] minus the stage endpoints, so
  ([0,1] minus endpoints) - components is a certified superset of D.

The gap-dominance certificates extend single translates to whole
intervals: if a gap G is at least as long as every component of the
stage inside a window [a, b] (with a, b stage endpoints), then any gap
revealed later inside that window sits strictly inside some current
component and is therefore strictly shorter than G.  That converts the
"longer than every gap, seen or unseen" hypothesis into a finite check,
which is the soundness argument this module rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidSpecError, NotCertifiableError
from .intervals import (
    BOX,
    UNIT,
    Interval,
    IntervalUnion,
    RationalLike,
    as_rational,
    points_union,
)
from .constructions import (
    DEFAULT_BUDGET,
    CantorStage,
    CentralSpec,
    GapRecord,
    central_stage,
    rightmost_branch_gap_end,
)

__all__ = [
    "DiffBracket",
    "DominantGapCertificate",
    "ShiftInclusionResult",
    "GapChainLink",
    "ZoneMeasureRow",
    "inner_difference",
    "outer_difference",
    "difference_bracket",
    "dominant_gap_certificate",
    "shift_inclusion_check",
    "predicted_missing_points",
    "prediction_is_complete",
    "rightmost_gap_chain",
    "zone_measure_rows",
]

_UNIT_UNION = IntervalUnion((UNIT,))
_BOX_UNION = IntervalUnion((BOX,))


def _require_unit_frame(stage: CantorStage) -> None:
    if stage.frame != UNIT:
        raise InvalidSpecError(
            "difference brackets are defined for stages on [0,1]; "
            f"got frame {stage.frame}"
        )


def inner_difference(stage: CantorStage) -> IntervalUnion:
    """Certified subset of the true difference set.

    Every translate gap - endpoint consists of points g - e with g never
    returning to the set and e never leaving it, so membership holds for
    the limit set, not just this stage.
    """
    _require_unit_frame(stage)
    if not stage.gaps:
        return IntervalUnion(())
    gaps = stage.gap_union()
    negated_endpoints = points_union(-e for e in stage.endpoints)
    return gaps.minkowski_sum(negated_endpoints)


def outer_difference(stage: CantorStage) -> IntervalUnion:
    """Certified superset of the true difference set."""
    _require_unit_frame(stage)
    punctured = _UNIT_UNION.difference(stage.endpoint_union())
    return punctured.minkowski_sum(stage.components.reflect())


@dataclass(frozen=True, slots=True)
class DiffBracket:
    """Sandwich inner <= true difference set <= outer at one stage,
    with the induced bracket for the missing set S."""

    n: int
    inner: IntervalUnion
    outer: IntervalUnion
    missing_outer: IntervalUnion  # [-1,1] minus inner, contains S
    missing_inner: IntervalUnion  # [-1,1] minus outer, inside S

    def __post_init__(self) -> None:
        assert self.inner.is_subset(self.outer)
        assert self.missing_inner.is_subset(self.missing_outer)
        assert all(self.missing_outer.contains_point(x) for x in (-1, 0, 1))


def difference_bracket(stage: CantorStage) -> DiffBracket:
    inner = inner_difference(stage)
    outer = outer_difference(stage)
    return DiffBracket(
        stage.n,
        inner,
        outer,
        _BOX_UNION.difference(inner),
        _BOX_UNION.difference(outer),
    )


# ---------------------------------------------------------------------
# gap-dominance certificates


@dataclass(frozen=True, slots=True)
class DominantGapCertificate:
    """Evidence that translates of one gap cover an interval of the
    difference set, up to finitely many exceptions.

    The recorded hypotheses make the certificate re-checkable offline:
    ``max_component_in_window`` bounds every unseen future gap in the
    window strictly from above, and ``max_recorded_gap_in_window`` is
    the longest gap already seen there.  Mode ``strict`` means the gap
    strictly dominates everything (empty exception set); ``non-strict``
    allows recorded ties, each contributing the single translate that
    lands the gap exactly onto its twin.
    """

    gap: GapRecord
    window_lo: Fraction
    window_hi: Fraction
    mode: str  # "strict" | "non-strict"
    certified: Interval
    exceptions: tuple[Fraction, ...]
    gap_length: Fraction
    max_component_in_window: Fraction
    max_recorded_gap_in_window: Fraction

    def certified_union(self) -> IntervalUnion:
        return IntervalUnion((self.certified,)).difference(
            points_union(self.exceptions)
        )


def dominant_gap_certificate(
    stage: CantorStage,
    gap: GapRecord,
    window_lo: RationalLike,
    window_hi: RationalLike,
) -> DominantGapCertificate:
    """Certify (gap.lo - b, gap.hi - a) inside the difference set, where
    [a, b] = [window_lo, window_hi].

    Soundness of the finite check: a, b are stage endpoints, so the
    window slices whole components; any gap revealed after this stage
    lies strictly inside the interior of a current component of the
    window and is strictly shorter than the longest such component.
    Requiring |gap| >= that component length therefore bounds every
    unseen gap strictly below |gap|, and only recorded ties can force
    exceptions.
    """
    a = as_rational(window_lo)
    b = as_rational(window_hi)
    endpoint_set = set(stage.endpoints)
    if a not in endpoint_set or b not in endpoint_set:
        raise NotCertifiableError(
            f"window ends {a}, {b} must be stage-{stage.n} endpoints"
        )
    if a > b:
        raise NotCertifiableError("window ends out of order")
    if a <= gap.interval.lo and gap.interval.hi <= b:
        raise NotCertifiableError("window must not contain the gap")
    gap_length = gap.interval.length
    window = IntervalUnion((Interval.closed(a, b),))
    max_component = stage.components.intersect(window).max_component_length()
    recorded = [
        g
        for g in stage.gaps
        if a <= g.interval.lo and g.interval.hi <= b
    ]
    max_recorded = max((g.interval.length for g in recorded), default=Fraction(0))
    certified = Interval.open(gap.interval.lo - b, gap.interval.hi - a)
    if gap_length < max_component:
        raise NotCertifiableError(
            f"gap length {gap_length} is below the window's component bound "
            f"{max_component}; retry at a deeper stage"
        )
    if all(g.interval.length < gap_length for g in recorded):
        return DominantGapCertificate(
            gap, a, b, "strict", certified, (), gap_length, max_component, max_recorded
        )
    if max_recorded <= gap_length:
        exceptions = tuple(
            sorted(
                gap.interval.lo - g.interval.lo
                for g in recorded
                if g.interval.length == gap_length
            )
        )
        return DominantGapCertificate(
            gap,
            a,
            b,
            "non-strict",
            certified,
            exceptions,
            gap_length,
            max_component,
            max_recorded,
        )
    raise NotCertifiableError(
        f"a recorded gap of length {max_recorded} exceeds the gap's {gap_length}"
    )


# ---------------------------------------------------------------------
# shift-inclusion certificates


@dataclass(frozen=True, slots=True)
class ShiftInclusionResult:
    """Outcome of the staged check (C_n + Y_n) in [0,1] always lands in C_n.

    When it passes for nested decreasing supersets Y_n of a target Y,
    every y in Y keeps C inside itself under translation at every depth,
    so Y avoids the true difference set entirely.  On failure the first
    violating stage and a witness point are recorded.
    """

    passed: bool
    n_checked: int
    y_final: IntervalUnion
    by_construction: bool = False
    violation_stage: int | None = None
    witness: Fraction | None = None


def _witness_point(diff: IntervalUnion) -> Fraction:
    part = diff.parts[0]
    if part.lo_closed:
        return part.lo
    if part.hi_closed:
        return part.hi
    return part.midpoint


def shift_inclusion_check(
    c_stages: Sequence[CantorStage],
    y_stages: Sequence[IntervalUnion],
) -> ShiftInclusionResult:
    if len(c_stages) != len(y_stages) or not c_stages:
        raise ValueError("need matching nonempty stage and Y sequences")
    for earlier, later in zip(y_stages, y_stages[1:]):
        if not later.is_subset(earlier):
            raise ValueError("Y stages must be nested decreasing")
    last_index = 0
    for index, (stage, y) in enumerate(zip(c_stages, y_stages)):
        _require_unit_frame(stage)
        reached = stage.components.minkowski_sum(y).intersect(_UNIT_UNION)
        escaped = reached.difference(stage.components)
        if not escaped.is_empty:
            return ShiftInclusionResult(
                False,
                index,
                y_stages[-1],
                violation_stage=stage.n,
                witness=_witness_point(escaped),
            )
        last_index = index
    return ShiftInclusionResult(True, last_index + 1, y_stages[-1])


# ---------------------------------------------------------------------
# predicted missing points for the central family


def predicted_missing_points(spec: CentralSpec, k_max: int) -> IntervalUnion:
    """{0, +-1} together with the first k_max+1 branch-gap right ends,
    negated and not, as degenerate point parts."""
    values = [Fraction(0), Fraction(1), Fraction(-1)]
    for k in range(k_max + 1):
        r = rightmost_branch_gap_end(spec, k)
        values.append(r)
        values.append(-r)
    return points_union(values)


def prediction_is_complete(spec: CentralSpec) -> bool:
    """Whether the predicted points are the whole missing set (true when
    every removal ratio is at least 1/3); otherwise they are only a
    certified lower bound."""
    return spec.all_ratios_at_least(Fraction(1, 3))


# ---------------------------------------------------------------------
# rightmost-longest gap chain


@dataclass(frozen=True, slots=True)
class GapChainLink:
    gap: GapRecord
    certificate: DominantGapCertificate


def _chain_step_indices(spec: CentralSpec, depth: int) -> list[int]:
    """Creation steps of the chain gaps: each next gap is the rightmost
    longest one to the right of the previous chain gap.

    Gaps created at step k all share length ratio(k) * component(k-1),
    and restricting to the branch right of the previous gap leaves the
    same length profile shifted; ties go to the later step, whose
    rightmost instance sits further right.
    """
    steps: list[int] = []
    after = 0
    for _ in range(depth):
        best_k: int | None = None
        best_len = Fraction(0)
        k = after + 1
        while True:
            g = spec.gap_length(k)
            if g >= best_len:
                best_len = g
                best_k = k
            # Later gaps cannot beat best_len once components are smaller.
            if spec.component_length(k) <= best_len:
                break
            k += 1
        steps.append(best_k)
        after = best_k
    return steps


def rightmost_gap_chain(
    spec: CentralSpec, depth: int, *, budget: int = DEFAULT_BUDGET
) -> tuple[GapChainLink, ...]:
    """The chain of rightmost longest gaps, each certified to cover the
    interval between consecutive chain gaps' right ends.

    Link m uses the window [0, gap_m.lo - prev_right] (prev_right = 0
    for the first link), whose certified interval is exactly
    (prev_right, gap_m.hi); the union over links covers everything up to
    the last right end, except finitely many recorded points.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    steps = _chain_step_indices(spec, depth)
    stage_n = steps[-1]
    while spec.component_length(stage_n) > spec.gap_length(steps[-1]):
        stage_n += 1
    if 2 ** stage_n > budget:
        raise NotCertifiableError(
            f"certifying the depth-{depth} chain needs stage {stage_n}, "
            f"beyond the component budget {budget}"
        )
    stage = central_stage(spec, stage_n, budget=budget)
    links: list[GapChainLink] = []
    prev_right = Fraction(0)
    by_position: dict[tuple[Fraction, Fraction], GapRecord] = {
        (g.interval.lo, g.interval.hi): g for g in stage.gaps
    }
    for k in steps:
        # Rightmost gap created at step k lies in the all-ones branch.
        lo = 1 - spec.component_length(k - 1) * (1 + spec.ratio(k)) / 2
        hi = 1 - spec.component_length(k)
        gap = by_position[(lo, hi)]
        cert = dominant_gap_certificate(stage, gap, 0, lo - prev_right)
        assert cert.certified == Interval.open(prev_right, hi)
        links.append(GapChainLink(gap, cert))
        prev_right = hi
    return tuple(links)


# ---------------------------------------------------------------------
# zone measure monitoring


@dataclass(frozen=True, slots=True)
class ZoneMeasureRow:
    """Per-stage measures of the missing-set bracket across the fixed
    zones: the middle band and the four outer quarters."""

    n: int
    middle: Fraction  # missing_outer within [-1/2, 1/2]
    far_negative: Fraction  # [-1, -3/4]
    near_negative: Fraction  # [-3/4, -1/2]
    near_positive: Fraction  # [1/2, 3/4]
    far_positive: Fraction  # [3/4, 1]
    missing_total: Fraction
    outer_total: Fraction
    missing_point_parts: int
    missing_interval_parts: int


_ZONES = {
    "middle": IntervalUnion((Interval.closed(Fraction(-1, 2), Fraction(1, 2)),)),
    "far_negative": IntervalUnion((Interval.closed(-1, Fraction(-3, 4)),)),
    "near_negative": IntervalUnion((Interval.closed(Fraction(-3, 4), Fraction(-1, 2)),)),
    "near_positive": IntervalUnion((Interval.closed(Fraction(1, 2), Fraction(3, 4)),)),
    "far_positive": IntervalUnion((Interval.closed(Fraction(3, 4), 1),)),
}


def zone_measure_rows(brackets: Sequence[DiffBracket]) -> list[ZoneMeasureRow]:
    rows = []
    for bracket in brackets:
        missing = bracket.missing_outer
        rows.append(
            ZoneMeasureRow(
                bracket.n,
                missing.intersect(_ZONES["middle"]).measure(),
                missing.intersect(_ZONES["far_negative"]).measure(),
                missing.intersect(_ZONES["near_negative"]).measure(),
                missing.intersect(_ZONES["near_positive"]).measure(),
                missing.intersect(_ZONES["far_positive"]).measure(),
                missing.measure(),
                bracket.outer.measure(),
                len(missing.point_parts()),
                len(missing.interval_parts()),
            )
        )
    return rows
