"""Tests for the four stage generators."""

import warnings
from fractions import Fraction as F

import pytest

from cantordiff.constructions import (
    CentralSpec,
    CompositeSpec,
    GreedySpec,
    PerturbedSpec,
    branch_shift,
    builtin_composite_pair,
    builtin_fat_composite,
    builtin_half,
    builtin_perturbed,
    builtin_ternary,
    central_stage,
    composite_stage,
    greedy_certificate,
    greedy_stage,
    half_scaled_components,
    perturbed_stage,
    rightmost_branch_gap_end,
)
from cantordiff.errors import (
    BudgetExceededError,
    InvalidSpecError,
)
from cantordiff.intervals import Interval, union_of


TERNARY = builtin_ternary()
HALVING = builtin_half()
PERTURBED = builtin_perturbed()


def stage_list(build, spec, n_max):
    return [build(spec, n) for n in range(n_max + 1)]


class TestCentral:
    def test_stage1_ternary(self):
        s = central_stage(TERNARY, 1)
        assert s.components == union_of(
            Interval.closed(0, F(1, 3)), Interval.closed(F(2, 3), 1)
        )
        assert len(s.gaps) == 1
        assert s.gaps[0].address == ""
        assert s.gaps[0].interval == Interval.open(F(1, 3), F(2, 3))

    def test_stage2_lengths(self):
        s = central_stage(TERNARY, 2)
        assert all(p.length == F(1, 9) for p in s.components)
        new_gaps = [g for g in s.gaps if g.stage_created == 2]
        assert all(g.interval.length == F(1, 9) for g in new_gaps)
        assert sorted(g.address for g in new_gaps) == ["0", "1"]

    def test_stage1_half(self):
        s = central_stage(HALVING, 1)
        assert s.components == union_of(
            Interval.closed(0, F(1, 4)), Interval.closed(F(3, 4), 1)
        )

    def test_component_count_and_endpoints(self):
        s = central_stage(TERNARY, 5)
        assert len(s.components.parts) == 2 ** 5
        assert len(s.endpoints) == 2 ** 6
        assert s.endpoints[0] == 0 and s.endpoints[-1] == 1

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            central_stage(TERNARY, 5, budget=16)

    def test_invalid_ratio(self):
        with pytest.raises(InvalidSpecError, match="ratio out of"):
            CentralSpec.constant(1)

    def test_nesting_and_cover(self):
        stages = stage_list(central_stage, TERNARY, 6)
        for prev, nxt in zip(stages, stages[1:]):
            assert nxt.components.is_subset(prev.components)
            prev_gaps = {(g.interval.lo, g.interval.hi) for g in prev.gaps}
            next_gaps = {(g.interval.lo, g.interval.hi) for g in nxt.gaps}
            assert prev_gaps <= next_gaps
        for s in stages:
            assert s.components.union(s.gap_union()) == union_of(s.frame)
            assert s.components.measure() + s.gap_union().measure() == 1

    def test_central_symmetry(self):
        s = central_stage(TERNARY, 5)
        assert s.components.reflect().translate(1) == s.components

    def test_branch_gap_ends(self):
        assert rightmost_branch_gap_end(TERNARY, 0) == F(2, 3)
        assert rightmost_branch_gap_end(TERNARY, 1) == F(8, 9)
        assert rightmost_branch_gap_end(TERNARY, 2) == F(26, 27)
        assert rightmost_branch_gap_end(HALVING, 0) == F(3, 4)
        # read off the stage: the stage-1 gap of the halving set ends at 3/4
        s = central_stage(HALVING, 1)
        assert s.gaps[0].interval.hi == rightmost_branch_gap_end(HALVING, 0)

    def test_varying_ratio_list(self):
        spec = CentralSpec.from_list((F(1, 2),), F(1, 3))
        s = central_stage(spec, 2)
        # first split removes 1/2, second removes 1/3 of each part
        assert s.components.parts[0].length == F(1, 4) * F(1, 3)


class TestPerturbed:
    def test_stage1(self):
        s = perturbed_stage(PERTURBED, 1)
        assert s.components == union_of(
            Interval.closed(0, F(2, 5)), Interval.closed(F(3, 5), 1)
        )
        assert s.gaps[0].interval == Interval.open(F(2, 5), F(3, 5))

    def test_stage2_alignment(self):
        s = perturbed_stage(PERTURBED, 2)
        by_address = {g.address: g.interval for g in s.gaps}
        assert by_address["0"] == Interval.open(F(1, 5), F(3, 10))
        assert by_address["1"] == Interval.open(F(7, 10), F(4, 5))

    def test_extreme_branches_match(self):
        for n in range(1, 8):
            parts = perturbed_stage(PERTURBED, n).components.parts
            assert parts[0].length == parts[-1].length

    def test_aligned_gaps_match_and_dominate_left(self):
        s = perturbed_stage(PERTURBED, 7)
        for created in range(1, 8):
            same_stage = [g for g in s.gaps if g.stage_created == created]
            left = next(g for g in same_stage if g.address == "0" * (created - 1))
            right = next(g for g in same_stage if g.address == "1" * (created - 1))
            assert left.interval.length == right.interval.length
            for other in s.gaps:
                if other.interval.hi <= left.interval.lo:
                    assert other.interval.length < left.interval.length

    def test_rejects_unshrinkable_spec(self):
        # c1 = 1/2 with shrink 1/2 hits the half-component wall at step 2
        with pytest.raises(InvalidSpecError):
            perturbed_stage(PerturbedSpec(F(1, 2)), 2)

    def test_shrink_below_half_always_works(self):
        spec = PerturbedSpec(F(1, 2), shrink=F(1, 3))
        s = perturbed_stage(spec, 5)
        assert len(s.components.parts) == 32

    def test_interior_gap_fraction(self):
        spec = PerturbedSpec(F(1, 5), interior_gap_fraction=F(1, 2))
        s = perturbed_stage(spec, 3)
        stage3 = {g.address: g.interval for g in s.gaps if g.stage_created == 3}
        # aligned gaps keep the full length c3 = 1/20, interior ones halve it
        assert stage3["00"].length == F(1, 20)
        assert stage3["11"].length == F(1, 20)
        assert stage3["01"].length == F(1, 40)
        assert stage3["10"].length == F(1, 40)


class TestComposite:
    def test_stage1_builtin(self):
        s = composite_stage(builtin_composite_pair(), 1)
        assert s.components == union_of(
            Interval.closed(0, F(1, 8)),
            Interval.closed(F(3, 8), F(3, 4)),
            Interval.closed(F(7, 8), 1),
        )

    def test_one_always_survives(self):
        spec = builtin_composite_pair()
        for n in range(6):
            assert composite_stage(spec, n).components.contains_point(1)

    def test_stage2_component_bound(self):
        s = composite_stage(builtin_composite_pair(), 2)
        assert len(s.components.parts) <= 4 + 9

    def test_nesting_and_gap_persistence(self):
        spec = builtin_composite_pair()
        stages = stage_list(composite_stage, spec, 5)
        for prev, nxt in zip(stages, stages[1:]):
            assert nxt.components.is_subset(prev.components)
            prev_gaps = {(g.interval.lo, g.interval.hi) for g in prev.gaps}
            next_gaps = {(g.interval.lo, g.interval.hi) for g in nxt.gaps}
            assert prev_gaps <= next_gaps
        for s in stages:
            assert s.components.union(s.gap_union()) == union_of(s.frame)

    def test_max_component_warning_path(self):
        # a source that never refines cannot shrink the components;
        # the assembler must report it instead of silently accepting
        from cantordiff.constructions import _CompositeAssembler

        frozen = union_of(Interval.closed(0, F(1, 2)))
        assembler = _CompositeAssembler(
            lambda n: frozen, lambda n: frozen, "tab"
        )
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            assembler.stage(0, 2 ** 10)
            stage = assembler.stage(1, 2 ** 10)
        assert any("did not decrease" in str(w.message) for w in caught)
        assert stage.notes


class TestGreedy:
    def test_base_case(self):
        st = greedy_stage(builtin_fat_composite(), 0)
        assert st.a_stage.components == union_of(Interval.closed(0, F(1, 2)))
        assert st.a_stage.frame == Interval.closed(0, F(1, 2))

    def test_endpoints_retained_and_split_binary(self):
        g = builtin_fat_composite()
        for n in range(7):
            a = greedy_stage(g, n).a_stage
            assert len(a.components.parts) == 2 ** n
            assert a.components.contains_point(0)
            assert a.components.contains_point(F(1, 2))
        prev = greedy_stage(g, 5).a_stage
        nxt = greedy_stage(g, 6).a_stage
        assert nxt.components.is_subset(prev.components)
        assert set(prev.endpoints) <= set(nxt.endpoints)

    def test_certificate(self):
        g = builtin_fat_composite()
        cert = greedy_certificate(g, 6)
        assert cert.verified
        assert len(cert.points) == 6
        stages = {p.stage for p in cert.points}
        assert stages == set(range(1, 7))

    def test_b_measure_schedule(self):
        g = builtin_fat_composite()
        for n in range(1, 7):
            b = half_scaled_components(g.b_source, n)
            expected = F(1, 2)
            for j in range(1, n + 1):
                expected *= 1 - F(1, 4) ** j
            assert b.measure() == expected

    def test_c_stage_is_composite(self):
        g = builtin_fat_composite()
        st = greedy_stage(g, 3)
        a = st.a_stage.components
        b = half_scaled_components(g.b_source, 3)
        e = (
            a.minkowski_sum(b)
            .translate(F(1, 2))
            .intersect(union_of(Interval.closed(F(1, 2), 1)))
        )
        assert st.c_stage.components == a.union(e)


class TestGreedyFailureModes:
    def test_avoidance_deadlock_aborts_with_diagnostic(self):
        from cantordiff.errors import AvoidanceExhaustedError

        def hostile_margin(n):
            return F(10)  # padding swallows the whole half frame

        spec = GreedySpec(CentralSpec.geometric(F(1, 4)), margin=hostile_margin)
        with pytest.raises(AvoidanceExhaustedError):
            greedy_stage(spec, 1)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            greedy_stage(builtin_fat_composite(), 6, budget=16)


class TestCompositeBudget:
    def test_budget_guard(self):
        spec = CompositeSpec(CentralSpec.constant(F(1, 2)), CentralSpec.constant(F(1, 2)))
        with pytest.raises(BudgetExceededError):
            composite_stage(spec, 4, budget=4)


class TestParallelGeneration:
    def test_concurrent_stage_requests_agree(self):
        import concurrent.futures

        spec = CompositeSpec(
            CentralSpec.constant(F(2, 5)), CentralSpec.constant(F(2, 5))
        )
        greedy = GreedySpec(CentralSpec.geometric(F(1, 5)))
        with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
            tab_results = list(pool.map(lambda n: composite_stage(spec, n), [6] * 8))
            greedy_results = list(
                pool.map(lambda n: greedy_stage(greedy, n).c_stage, [6] * 8)
            )
        assert all(s == tab_results[0] for s in tab_results)
        assert all(s == greedy_results[0] for s in greedy_results)


class TestBranchShift:
    def test_examples(self):
        assert branch_shift(central_stage(TERNARY, 2), "1") == F(2, 3)
        assert branch_shift(central_stage(TERNARY, 2), "11") == F(8, 9)
        assert branch_shift(central_stage(HALVING, 1), "1") == F(3, 4)
        assert branch_shift(central_stage(TERNARY, 3), "") == 0

    def test_rejects_non_central(self):
        s = perturbed_stage(PERTURBED, 2)
        with pytest.raises(InvalidSpecError):
            branch_shift(s, "1")

    def test_rejects_deep_address(self):
        with pytest.raises(ValueError):
            branch_shift(central_stage(TERNARY, 1), "11")
