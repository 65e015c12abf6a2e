"""Stage-by-stage generators for the four Cantor-set families.

Each generator is a deterministic pure function of (spec, n) producing an
immutable :class:`CantorStage`: the closed component union, the labeled
gap records accumulated so far, and the sorted endpoint set.  Component
endpoints are preserved by every refinement step in every family, so
each stage endpoint belongs to the limit set; the certified analysis in
:mod:`cantordiff.analysis` depends on exactly that.
"""

from __future__ import annotations

import itertools
import logging
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple, Union

from .errors import (
    AvoidanceExhaustedError,
    BudgetExceededError,
    InvalidSpecError,
)
from .intervals import (
    HALF,
    UNIT,
    Interval,
    IntervalUnion,
    RationalLike,
    as_rational,
    normalize,
    points_union,
)

__all__ = [
    "DEFAULT_BUDGET",
    "NodeAddress",
    "GapRecord",
    "CantorStage",
    "ConstantRatios",
    "ListRatios",
    "GeometricRatios",
    "RatioRule",
    "CentralSpec",
    "PerturbedSpec",
    "CompositeSpec",
    "GreedySpec",
    "AdmittedPoint",
    "DeferralEvent",
    "GreedyCertificate",
    "GreedyStages",
    "central_stage",
    "rightmost_branch_gap_end",
    "perturbed_stage",
    "composite_stage",
    "greedy_stage",
    "greedy_certificate",
    "branch_shift",
    "half_scaled_components",
    "dyadic_candidates",
    "quartic_margin",
    "builtin_ternary",
    "builtin_half",
    "builtin_perturbed",
    "builtin_composite_pair",
    "builtin_fat_composite",
]

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 14

NodeAddress = str  # binary string, "" for the root interval


def _check_address(address: str) -> None:
    if any(ch not in "01" for ch in address):
        raise ValueError(f"address must be a binary string, got {address!r}")


@dataclass(frozen=True, slots=True)
class GapRecord:
    """An open interval removed during construction.

    ``address`` names the component the gap was cut from (None for gaps
    derived from a complement rather than an explicit binary split);
    ``stage_created`` is the 1-based step that removed it.
    """

    address: NodeAddress | None
    interval: Interval
    stage_created: int

    def __post_init__(self) -> None:
        if self.address is not None:
            _check_address(self.address)
        if self.interval.lo_closed or self.interval.hi_closed:
            raise ValueError("gap intervals are open at both ends")


@dataclass(frozen=True, slots=True)
class CantorStage:
    """Finite-stage approximation of a Cantor set on ``frame``.

    ``components`` are the surviving closed parts, ``gaps`` the removal
    records ordered by (stage_created, position), ``endpoints`` the
    sorted distinct component endpoints.  Components plus gap intervals
    tile the frame exactly.
    """

    n: int
    components: IntervalUnion
    gaps: tuple[GapRecord, ...]
    endpoints: tuple[Fraction, ...]
    family: str
    frame: Interval = UNIT
    notes: tuple[str, ...] = ()

    def gap_union(self) -> IntervalUnion:
        return normalize(g.interval for g in self.gaps)

    def endpoint_union(self) -> IntervalUnion:
        return points_union(self.endpoints)

    def max_component_length(self) -> Fraction:
        return self.components.max_component_length()


def _stage_endpoints(components: IntervalUnion) -> tuple[Fraction, ...]:
    values: set[Fraction] = set()
    for p in components:
        values.add(p.lo)
        values.add(p.hi)
    return tuple(sorted(values))


def _sorted_gaps(gaps: list[GapRecord]) -> tuple[GapRecord, ...]:
    return tuple(sorted(gaps, key=lambda g: (g.stage_created, g.interval.lo)))


# ---------------------------------------------------------------------
# ratio rules and central stages


@dataclass(frozen=True)
class ConstantRatios:
    """Every step removes the same middle fraction."""

    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", as_rational(self.value))
        if not 0 < self.value < 1:
            raise InvalidSpecError("ratio out of (0,1)")

    def ratio(self, k: int) -> Fraction:
        return self.value

    def all_at_least(self, bound: Fraction) -> bool:
        return self.value >= bound

    def tail_ratio_sum(self, after: int) -> Fraction | None:
        return None  # constant tails are not summable


@dataclass(frozen=True)
class ListRatios:
    """Explicit leading ratios, then a constant tail."""

    values: tuple[Fraction, ...]
    tail: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", tuple(as_rational(v) for v in self.values)
        )
        object.__setattr__(self, "tail", as_rational(self.tail))
        for v in (*self.values, self.tail):
            if not 0 < v < 1:
                raise InvalidSpecError("ratio out of (0,1)")

    def ratio(self, k: int) -> Fraction:
        if k <= len(self.values):
            return self.values[k - 1]
        return self.tail

    def all_at_least(self, bound: Fraction) -> bool:
        return all(v >= bound for v in self.values) and self.tail >= bound

    def tail_ratio_sum(self, after: int) -> Fraction | None:
        return None


@dataclass(frozen=True)
class GeometricRatios:
    """Step k removes the middle base**k fraction; ratios are summable."""

    base: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", as_rational(self.base))
        if not 0 < self.base < 1:
            raise InvalidSpecError("ratio out of (0,1)")

    def ratio(self, k: int) -> Fraction:
        return self.base ** k

    def all_at_least(self, bound: Fraction) -> bool:
        return False if bound > 0 else True

    def tail_ratio_sum(self, after: int) -> Fraction:
        # sum_{k > after} base**k
        return self.base ** (after + 1) / (1 - self.base)


RatioRule = Union[ConstantRatios, ListRatios, GeometricRatios]


@dataclass(frozen=True)
class CentralSpec:
    """Middle-removal Cantor set: step k removes the open middle
    ratio(k) portion of every surviving component."""

    ratios: RatioRule

    @classmethod
    def constant(cls, value: RationalLike) -> "CentralSpec":
        return cls(ConstantRatios(as_rational(value)))

    @classmethod
    def from_list(
        cls, values: tuple[RationalLike, ...], tail: RationalLike
    ) -> "CentralSpec":
        return cls(ListRatios(tuple(as_rational(v) for v in values), as_rational(tail)))

    @classmethod
    def geometric(cls, base: RationalLike) -> "CentralSpec":
        return cls(GeometricRatios(as_rational(base)))

    def ratio(self, k: int) -> Fraction:
        return self.ratios.ratio(k)

    def all_ratios_at_least(self, bound: RationalLike) -> bool:
        return self.ratios.all_at_least(as_rational(bound))

    def component_length(self, n: int) -> Fraction:
        """Length of every stage-n component."""
        length = Fraction(1)
        for k in range(1, n + 1):
            length *= (1 - self.ratio(k)) / 2
        return length

    def gap_length(self, k: int) -> Fraction:
        """Length of every gap removed at step k (k >= 1)."""
        return self.ratio(k) * self.component_length(k - 1)


_central_cache: dict[tuple[CentralSpec, int], CantorStage] = {}


def central_stage(
    spec: CentralSpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> CantorStage:
    if n < 0:
        raise ValueError("stage index must be >= 0")
    if 2 ** n > budget:
        raise BudgetExceededError(2 ** n, budget)
    key = (spec, n)
    cached = _central_cache.get(key)
    if cached is not None:
        return cached
    if n > 0:
        prev = central_stage(spec, n - 1, budget=budget)
        comps: list[Interval] = []
        gaps = list(prev.gaps)
        ratio = spec.ratio(n)
        for idx, part in enumerate(prev.components):
            address = format(idx, f"0{n - 1}b") if n > 1 else ""
            length = part.hi - part.lo
            child = (length - ratio * length) / 2
            gl = part.lo + child
            gr = part.hi - child
            gaps.append(GapRecord(address, Interval.open(gl, gr), n))
            comps.append(Interval(part.lo, gl, True, True))
            comps.append(Interval(gr, part.hi, True, True))
        components = IntervalUnion(tuple(comps))
        stage = CantorStage(
            n, components, _sorted_gaps(gaps), _stage_endpoints(components), "central"
        )
    else:
        components = IntervalUnion((UNIT,))
        stage = CantorStage(0, components, (), (Fraction(0), Fraction(1)), "central")
    _central_cache[key] = stage
    return stage


def rightmost_branch_gap_end(spec: CentralSpec, k: int) -> Fraction:
    """Right endpoint of the k-th gap along the all-ones branch.

    These values (with 0 and 1) are exactly the points the difference
    set can never reach; the k-th one equals 1 minus the length of a
    stage-(k+1) component.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1 - spec.component_length(k + 1)


# ---------------------------------------------------------------------
# perturbed family


@dataclass(frozen=True)
class PerturbedSpec:
    """Cantor set with gaps pinned to component centers.

    The extreme-branch gaps of each step share one endpoint with the
    component center (left-aligned on the all-zeros branch, right-aligned
    on the all-ones branch); interior gaps are concentric.  Successive
    gap lengths follow c(k+1) = shrink * min(c(k), leftmost component
    length); interior gaps take min(interior_gap_fraction * c, half the
    component).
    """

    c1: Fraction
    shrink: Fraction = Fraction(1, 2)
    interior_gap_fraction: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", as_rational(self.c1))
        object.__setattr__(self, "shrink", as_rational(self.shrink))
        object.__setattr__(
            self, "interior_gap_fraction", as_rational(self.interior_gap_fraction)
        )
        if not 0 < self.c1 < 1:
            raise InvalidSpecError("c1 out of (0,1)")
        if not 0 < self.shrink < 1:
            raise InvalidSpecError("shrink out of (0,1)")
        if not 0 < self.interior_gap_fraction <= 1:
            raise InvalidSpecError("interior_gap_fraction out of (0,1]")


class _PerturbedState(NamedTuple):
    stage: CantorStage
    gap_length: Fraction  # c at this stage (length of the aligned gaps)


_perturbed_cache: dict[tuple[PerturbedSpec, int], _PerturbedState] = {}


def _perturbed_state(
    spec: PerturbedSpec, n: int, budget: int
) -> _PerturbedState:
    key = (spec, n)
    cached = _perturbed_cache.get(key)
    if cached is not None:
        return cached
    if n == 0:
        stage = CantorStage(
            0,
            IntervalUnion((UNIT,)),
            (),
            (Fraction(0), Fraction(1)),
            "perturbed",
        )
        state = _PerturbedState(stage, Fraction(0))
    else:
        prev = _perturbed_state(spec, n - 1, budget)
        prev_parts = prev.stage.components.parts
        leftmost_len = prev_parts[0].hi - prev_parts[0].lo
        if n == 1:
            c = spec.c1
        else:
            c = spec.shrink * min(prev.gap_length, leftmost_len)
            if not c < prev.gap_length:
                raise InvalidSpecError(
                    f"gap length fails to shrink at step {n}: {c} >= {prev.gap_length}"
                )
            if not c < leftmost_len / 2:
                raise InvalidSpecError(
                    f"gap length {c} at step {n} is not below half the leftmost "
                    f"component ({leftmost_len / 2}); pick a smaller c1 or shrink"
                )
        comps: list[Interval] = []
        gaps = list(prev.stage.gaps)
        last = len(prev_parts) - 1
        for idx, part in enumerate(prev_parts):
            address = format(idx, f"0{n - 1}b") if n > 1 else ""
            mid = (part.lo + part.hi) / 2
            if n == 1:
                gl, gr = mid - c / 2, mid + c / 2
            elif idx == 0:
                gl, gr = mid, mid + c
            elif idx == last:
                gl, gr = mid - c, mid
            else:
                g = min(
                    spec.interior_gap_fraction * c, (part.hi - part.lo) / 2
                )
                gl, gr = mid - g / 2, mid + g / 2
            gaps.append(GapRecord(address, Interval.open(gl, gr), n))
            comps.append(Interval(part.lo, gl, True, True))
            comps.append(Interval(gr, part.hi, True, True))
        components = IntervalUnion(tuple(comps))
        assert (
            components.parts[0].length == components.parts[-1].length
        ), "extreme branches must stay equal in length"
        stage = CantorStage(
            n,
            components,
            _sorted_gaps(gaps),
            _stage_endpoints(components),
            "perturbed",
        )
        state = _PerturbedState(stage, c)
    _perturbed_cache[key] = state
    return state


def perturbed_stage(
    spec: PerturbedSpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> CantorStage:
    if n < 0:
        raise ValueError("stage index must be >= 0")
    if 2 ** n > budget:
        raise BudgetExceededError(2 ** n, budget)
    return _perturbed_state(spec, n, budget).stage


# ---------------------------------------------------------------------
# composite family: C = A | ((A + B + 1/2) & [1/2, 1])

HalfSourceSpec = Union[CentralSpec, PerturbedSpec]


def half_scaled_components(
    spec: HalfSourceSpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> IntervalUnion:
    """Stage-n components of a unit-frame family, scaled into [0, 1/2]."""
    if isinstance(spec, CentralSpec):
        stage = central_stage(spec, n, budget=budget)
    elif isinstance(spec, PerturbedSpec):
        stage = perturbed_stage(spec, n, budget=budget)
    else:
        raise InvalidSpecError(f"unsupported half-frame source: {type(spec).__name__}")
    return stage.components.scale(Fraction(1, 2))


@dataclass(frozen=True)
class CompositeSpec:
    """Sources for A and B, each generated on [0,1] and scaled to [0,1/2]."""

    a_source: HalfSourceSpec
    b_source: HalfSourceSpec


_HALF_TO_ONE = IntervalUnion((Interval.closed(Fraction(1, 2), 1),))


class _CompositeAssembler:
    """Builds composite stages incrementally, tracking when each maximal
    gap of the complement first appeared."""

    def __init__(
        self,
        a_components: Callable[[int], IntervalUnion],
        b_components: Callable[[int], IntervalUnion],
        family: str,
    ):
        self._a = a_components
        self._b = b_components
        self._family = family
        self._stages: list[CantorStage] = []
        self._gap_created: dict[tuple[Fraction, Fraction], int] = {}
        self._lock = threading.Lock()

    def stage(self, n: int, budget: int) -> CantorStage:
        with self._lock:
            while len(self._stages) <= n:
                self._advance(budget)
            stage = self._stages[n]
        if len(stage.components) > budget:
            raise BudgetExceededError(len(stage.components), budget)
        return stage

    def _advance(self, budget: int) -> None:
        m = len(self._stages)
        a = self._a(m)
        b = self._b(m)
        summed = a.minkowski_sum(b).translate(Fraction(1, 2))
        trimmed = summed.intersect(_HALF_TO_ONE)
        components = a.union(trimmed)
        if len(components) > budget:
            raise BudgetExceededError(len(components), budget)
        notes: tuple[str, ...] = ()
        if self._stages:
            prev_max = self._stages[-1].max_component_length()
            cur_max = components.max_component_length()
            if cur_max >= prev_max and m > 0:
                message = (
                    f"max component length did not decrease at stage {m} "
                    f"({cur_max} >= {prev_max}); the source pair may not "
                    f"produce a Cantor set"
                )
                warnings.warn(message, stacklevel=3)
                notes = (message,)
        gaps = []
        for part in components.complement_within(UNIT):
            key = (part.lo, part.hi)
            created = self._gap_created.setdefault(key, m)
            gaps.append(GapRecord(None, Interval.open(part.lo, part.hi), created))
        stage = CantorStage(
            m,
            components,
            _sorted_gaps(gaps),
            _stage_endpoints(components),
            self._family,
            notes=notes,
        )
        self._stages.append(stage)


_composite_assemblers: dict[tuple[CompositeSpec, int], _CompositeAssembler] = {}


def composite_stage(
    spec: CompositeSpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> CantorStage:
    if n < 0:
        raise ValueError("stage index must be >= 0")
    key = (spec, budget)
    assembler = _composite_assemblers.get(key)
    if assembler is None:
        assembler = _CompositeAssembler(
            lambda m: half_scaled_components(spec.a_source, m, budget=budget),
            lambda m: half_scaled_components(spec.b_source, m, budget=budget),
            "tab",
        )
        _composite_assemblers[key] = assembler
    return assembler.stage(n, budget)


# ---------------------------------------------------------------------
# greedy avoidance family


def dyadic_candidates() -> Iterator[Fraction]:
    """Dyadic rationals in [-1, 2], breadth-first by denominator."""
    for t in range(-1, 3):
        yield Fraction(t)
    for level in itertools.count(1):
        q = 2 ** level
        for t in range(-q + 1, 2 * q, 2):
            yield Fraction(t, q)


def quartic_margin(n: int) -> Fraction:
    return Fraction(1, 4 ** n)


@dataclass(frozen=True)
class GreedySpec:
    """Builds A inside [0, 1/2] avoiding translated copies of B.

    At each stage one new avoidance point is admitted from ``candidates``
    (deferred candidates retried first); every component of A splits into
    two closed children that keep the parent endpoints and stay clear of
    the padded avoidance set around every admitted point.
    """

    b_source: HalfSourceSpec
    margin: Callable[[int], Fraction] = quartic_margin
    candidates: Callable[[], Iterator[Fraction]] = dyadic_candidates


class AdmittedPoint(NamedTuple):
    value: Fraction
    stage: int


class DeferralEvent(NamedTuple):
    candidate: Fraction
    address: NodeAddress | None
    stage: int


@dataclass(frozen=True)
class GreedyCertificate:
    """Per-stage avoidance evidence: no admitted point lies in A + B."""

    n: int
    points: tuple[AdmittedPoint, ...]
    deferrals: tuple[DeferralEvent, ...]
    verified: bool


class GreedyStages(NamedTuple):
    a_stage: CantorStage  # on [0, 1/2]
    c_stage: CantorStage  # composite on [0, 1]


_QUARTER = Fraction(1, 4)
_THREE_QUARTERS = Fraction(3, 4)

_MAX_STAGE_ATTEMPTS = 64


class _ComponentEmptied(Exception):
    def __init__(self, address: str):
        self.address = address


def _closed_within(part: Interval, from_left: bool) -> Fraction:
    """A closed cut point strictly inside an allowed piece's open side."""
    if from_left:
        if part.lo_closed:
            return part.lo
        return part.lo + (part.hi - part.lo) * _QUARTER
    if part.hi_closed:
        return part.hi
    return part.hi - (part.hi - part.lo) * _QUARTER


class _GreedyBuilder:
    def __init__(self, spec: GreedySpec, budget: int):
        self.spec = spec
        self.budget = budget
        root = ("", Interval(Fraction(0), Fraction(1, 2), True, True))
        self._components: list[list[tuple[str, Interval]]] = [[root]]
        self._gaps: list[GapRecord] = []
        self._admitted: list[AdmittedPoint] = []
        self._deferred: list[Fraction] = []
        self._events: list[DeferralEvent] = []
        self._stream = spec.candidates()
        self._a_stages: list[CantorStage] = [self._make_a_stage(0)]
        self._lock = threading.RLock()
        self._assembler = _CompositeAssembler(
            lambda m: self.a_union(m), lambda m: self._b(m), "greedy"
        )

    def _b(self, m: int) -> IntervalUnion:
        return half_scaled_components(self.spec.b_source, m, budget=self.budget)

    def a_union(self, m: int) -> IntervalUnion:
        self.ensure(m)
        return IntervalUnion(tuple(iv for _, iv in self._components[m]))

    def a_stage(self, m: int) -> CantorStage:
        self.ensure(m)
        return self._a_stages[m]

    def c_stage(self, m: int) -> CantorStage:
        self.ensure(m)
        return self._assembler.stage(m, self.budget)

    def admitted(self, m: int) -> tuple[AdmittedPoint, ...]:
        self.ensure(m)
        return tuple(p for p in self._admitted if p.stage <= m)

    def events(self, m: int) -> tuple[DeferralEvent, ...]:
        self.ensure(m)
        return tuple(e for e in self._events if e.stage <= m)

    def ensure(self, m: int) -> None:
        if 2 ** m > self.budget:
            raise BudgetExceededError(2 ** m, self.budget)
        with self._lock:
            while len(self._components) <= m:
                self._advance()

    def _make_a_stage(self, m: int) -> CantorStage:
        comps = IntervalUnion(tuple(iv for _, iv in self._components[m]))
        return CantorStage(
            m,
            comps,
            _sorted_gaps(list(self._gaps)),
            _stage_endpoints(comps),
            "greedy-a",
            frame=HALF,
        )

    def _avoid_union(
        self, points: list[Fraction], b: IntervalUnion, delta: Fraction
    ) -> IntervalUnion:
        padded: list[Interval] = []
        for d in points:
            for part in b.reflect().translate(d):
                padded.append(Interval(part.lo - delta, part.hi + delta, True, True))
        return normalize(padded)

    def _split_all(
        self, parent_stage: int, avoid: IntervalUnion
    ) -> tuple[list[tuple[str, Interval]], list[GapRecord]]:
        new_stage = parent_stage + 1
        children: list[tuple[str, Interval]] = []
        gaps: list[GapRecord] = []
        for address, part in self._components[parent_stage]:
            allowed = IntervalUnion((part,)).difference(avoid)
            if allowed.is_empty:
                raise _ComponentEmptied(address)
            first, last = allowed.parts[0], allowed.parts[-1]
            # Parent endpoints must survive so they stay in the limit set.
            if not (first.lo == part.lo and first.lo_closed):
                raise _ComponentEmptied(address)
            if not (last.hi == part.hi and last.hi_closed):
                raise _ComponentEmptied(address)
            if first is last:
                length = part.hi - part.lo
                x = part.lo + length * _QUARTER
                y = part.hi - length * _QUARTER
            else:
                x = _closed_within(first, from_left=False)
                y = _closed_within(last, from_left=True)
            if not x < y:
                raise _ComponentEmptied(address)
            children.append((address + "0", Interval(part.lo, x, True, True)))
            children.append((address + "1", Interval(y, part.hi, True, True)))
            gaps.append(GapRecord(address, Interval.open(x, y), new_stage))
        return children, gaps

    def _advance(self) -> None:
        m = len(self._components)  # building A_m from A_{m-1}
        b = self._b(m)
        b_forbidden = b.union(b.translate(Fraction(1, 2)))
        delta = self.spec.margin(m)
        active = [p.value for p in self._admitted]
        base_avoid = self._avoid_union(active, b, delta)

        admitted_value: Fraction | None = None
        split_result = None
        retries = list(self._deferred)
        self._deferred = []
        attempts = 0
        while attempts < _MAX_STAGE_ATTEMPTS:
            attempts += 1
            candidate = retries.pop(0) if retries else next(self._stream)
            if b_forbidden.contains_point(candidate):
                # Certified-inside points are skipped outright.
                continue
            avoid = self._avoid_union([candidate], b, delta).union(base_avoid)
            try:
                split_result = self._split_all(m - 1, avoid)
            except _ComponentEmptied as emptied:
                self._events.append(DeferralEvent(candidate, emptied.address, m))
                logger.info(
                    "deferred avoidance point %s at stage %d (component %s emptied)",
                    candidate,
                    m,
                    emptied.address or "root",
                )
                self._deferred.append(candidate)
                continue
            admitted_value = candidate
            break
        self._deferred = retries + self._deferred
        if admitted_value is None or split_result is None:
            raise AvoidanceExhaustedError(m, attempts)

        children, gaps = split_result
        self._admitted.append(AdmittedPoint(admitted_value, m))
        self._components.append(children)
        self._gaps.extend(gaps)
        self._a_stages.append(self._make_a_stage(m))


_greedy_builders: dict[tuple[GreedySpec, int], _GreedyBuilder] = {}


def _greedy_builder(spec: GreedySpec, budget: int) -> _GreedyBuilder:
    key = (spec, budget)
    builder = _greedy_builders.get(key)
    if builder is None:
        builder = _GreedyBuilder(spec, budget)
        _greedy_builders[key] = builder
    return builder


def greedy_stage(
    spec: GreedySpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> GreedyStages:
    if n < 0:
        raise ValueError("stage index must be >= 0")
    builder = _greedy_builder(spec, budget)
    return GreedyStages(builder.a_stage(n), builder.c_stage(n))


def greedy_certificate(
    spec: GreedySpec, n: int, *, budget: int = DEFAULT_BUDGET
) -> GreedyCertificate:
    """Check that no admitted point is reachable as a sum from A_n + B_n."""
    builder = _greedy_builder(spec, budget)
    points = builder.admitted(n)
    a = builder.a_union(n)
    b = half_scaled_components(spec.b_source, n, budget=budget)
    reachable = a.minkowski_sum(b)
    verified = all(not reachable.contains_point(p.value) for p in points)
    return GreedyCertificate(n, points, builder.events(n), verified)


# ---------------------------------------------------------------------
# self-similarity shift


def branch_shift(stage: CantorStage, address: NodeAddress) -> Fraction:
    """Shift carrying the leftmost depth-|address| branch onto the
    addressed branch, verified exactly on the stage components.

    Only central stages are self-similar in this sense; other families
    are rejected.
    """
    if stage.family != "central":
        raise InvalidSpecError(
            f"branch shifts require a central stage, got family {stage.family!r}"
        )
    _check_address(address)
    depth = len(address)
    if depth > stage.n:
        raise ValueError(f"address depth {depth} exceeds stage {stage.n}")
    parts = stage.components.parts
    per_branch = len(parts) >> depth
    index = int(address, 2) if address else 0
    target_lo = parts[index * per_branch].lo
    shift = target_lo  # leftmost branch starts at 0
    left = parts[:per_branch]
    target = parts[index * per_branch : (index + 1) * per_branch]
    shifted = tuple(
        Interval(p.lo + shift, p.hi + shift, p.lo_closed, p.hi_closed) for p in left
    )
    if shifted != target:
        raise InvalidSpecError(
            f"stage is not shift-identical on branch {address!r}"
        )
    return shift


# ---------------------------------------------------------------------
# built-in example specs


def builtin_ternary() -> CentralSpec:
    return CentralSpec.constant(Fraction(1, 3))


def builtin_half() -> CentralSpec:
    return CentralSpec.constant(Fraction(1, 2))


def builtin_perturbed() -> PerturbedSpec:
    return PerturbedSpec(Fraction(1, 5))


def builtin_composite_pair() -> CompositeSpec:
    half = builtin_half()
    return CompositeSpec(half, half)


def builtin_fat_composite(base: RationalLike = Fraction(1, 4)) -> GreedySpec:
    return GreedySpec(CentralSpec.geometric(base))
