import pytest

from nsatop import fintop as F


def space(points, opens):
    return F.validate(points, opens)


SIERP = space(["a", "b"], [[], ["a"], ["a", "b"]])
IND2 = space(["a", "b"], [[], ["a", "b"]])
FAN3 = space(["0", "1", "2"], [[], ["0"], ["0", "1"], ["0", "2"], ["0", "1", "2"]])
DISC2 = space(["a", "b"], [[], ["a"], ["b"], ["a", "b"]])
DISC3 = space(
    ["a", "b", "c"],
    [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"], ["a", "b", "c"]],
)
PART3 = space(["a", "b", "c"], [[], ["a"], ["b", "c"], ["a", "b", "c"]])


def all_spaces(max_n):
    for n in range(1, max_n + 1):
        yield from F.enumerate_topologies(n)


class TestValidate:
    def test_sierpinski_valid(self):
        assert SIERP.n == 2 and len(SIERP.opens) == 3

    def test_missing_full(self):
        with pytest.raises(F.MissingEmptyOrFull):
            space(["a", "b"], [[], ["a"], ["b"]])

    def test_missing_empty(self):
        with pytest.raises(F.MissingEmptyOrFull):
            space(["a", "b"], [["a"], ["a", "b"]])

    def test_not_closed_under_union(self):
        with pytest.raises(F.NotClosedUnderUnion):
            space(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])

    def test_not_closed_under_intersection(self):
        with pytest.raises(F.NotClosedUnderIntersection):
            space(["a", "b", "c"], [[], ["a", "b"], ["b", "c"], ["a", "b", "c"]])

    def test_duplicate_open(self):
        with pytest.raises(F.DuplicateOpen):
            F.FinSpace(("a", "b"), (0, 1, 1, 3))

    def test_unknown_point(self):
        with pytest.raises(F.SpaceError):
            space(["a"], [[], ["z"], ["a"]])

    def test_json_roundtrip(self):
        assert F.space_from_json(FAN3.to_json()) == FAN3


class TestMonads:
    def test_fan_example(self):
        assert FAN3.monad("0") == {"0"}
        assert FAN3.monad("1") == {"0", "1"}
        assert FAN3.monad("2") == {"0", "2"}

    def test_monad_of_set(self):
        assert FAN3.monad_set(["1", "2"]) == {"0", "1", "2"}
        assert FAN3.monad_set([]) == set()

    def test_monad_laws(self):
        # containment, monotonicity, idempotence, for every subset pair
        for s in all_spaces(3):
            for a in s.subsets():
                mu_a = s.monad_set_mask(a)
                assert a & mu_a == a
                assert s.monad_set_mask(mu_a) == mu_a
                for b in s.subsets():
                    if a & b == a:
                        assert mu_a & s.monad_set_mask(b) == mu_a

    def test_monad_membership_iff_inclusion(self):
        for s in all_spaces(3):
            for i in range(s.n):
                for j in range(s.n):
                    member = bool(s.monad_mask(i) >> j & 1)
                    included = s.monad_mask(j) | s.monad_mask(i) == s.monad_mask(i)
                    assert member == included

    def test_monads_are_open(self):
        for s in all_spaces(4):
            for i in range(s.n):
                assert s.is_open(s.monad_mask(i))


class TestClosureInterior:
    def test_fan_examples(self):
        assert FAN3.closure_robinson(["1"]) == {"1"}
        assert FAN3.closure_robinson(["0"]) == {"0", "1", "2"}
        assert FAN3.interior_robinson(["1", "2"]) == set()

    def test_equal_to_classical_everywhere(self):
        for s in all_spaces(3):
            for m in s.subsets():
                assert s.closure_robinson_mask(m) == s.closure_classical_mask(m)
                assert s.interior_robinson_mask(m) == s.interior_classical_mask(m)


class TestSeparationExamples:
    def test_t0(self):
        assert F.is_t0(SIERP).holds
        v = F.is_t0(IND2)
        assert not v.holds and v.witness == ["a", "b"]
        assert F.is_t0(FAN3).holds

    def test_t1(self):
        assert F.is_t1(DISC3).holds
        assert not F.is_t1(SIERP).holds
        assert not F.is_t1(FAN3).holds

    def test_t2_and_weak(self):
        assert F.is_t2(DISC3).holds
        v2 = F.is_t2(IND2)
        assert not v2.holds
        assert F.is_weakly_hausdorff(IND2).holds
        assert not F.is_t2(SIERP).holds
        assert not F.is_weakly_hausdorff(SIERP).holds

    def test_regular(self):
        assert not F.is_regular(SIERP).holds
        assert F.is_regular(PART3).holds
        assert F.is_regular(DISC3).holds

    def test_normal(self):
        assert F.is_normal(SIERP).holds
        assert F.is_normal(DISC3).holds
        custom = space(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]])
        assert F.is_normal(custom).holds
        assert not F.is_normal(FAN3).holds

    def test_z_properties(self):
        zp = F.z_partition(SIERP)
        assert len(zp.blocks) == 1
        assert not F.is_functionally_separated(SIERP).holds
        assert not F.is_completely_regular(SIERP).holds
        assert all(
            F.PROPERTY_CHECKS[p](DISC3).holds
            for p in ("functionally_separated", "completely_regular", "z_normal")
        )
        assert not F.is_functionally_separated(FAN3).holds

    def test_sober(self):
        assert F.is_sober(FAN3).holds
        assert F.is_sober(SIERP).holds

    def test_fan_generic_point_counterexample(self):
        # the intersection of the monads over {1,2} is the monad of 0, yet 0
        # is outside the set, so membership of the candidate point matters
        inter = FAN3.monad("1") & FAN3.monad("2")
        assert inter == FAN3.monad("0")
        assert "0" not in {"1", "2"}


class TestZeroBlocks:
    def test_blocks_are_clopen(self):
        for s in all_spaces(4):
            zp = F.z_partition(s)
            for blk in zp.blocks:
                assert s.is_open(blk) and s.is_closed(blk)

    def test_continuous_functions_constant_on_blocks(self):
        for s in all_spaces(3):
            zp = F.z_partition(s)
            for k in range(len(zp.blocks)):
                ind = zp.indicator(k)
                assert F._is_continuous_value_map(s, ind)

    def test_zero_sets_are_block_unions(self):
        zp = F.z_partition(PART3)
        zs = set(zp.zero_sets())
        assert 0 in zs and PART3.full in zs
        assert len(zs) == 1 << len(zp.blocks)


class TestDisjointMonadSeparation:
    def test_monads_disjoint_iff_open_separation(self):
        # set form over all subset pairs of all spaces with up to 3 points
        for s in all_spaces(3):
            for a in s.subsets():
                for b in s.subsets():
                    monadic = not (s.monad_set_mask(a) & s.monad_set_mask(b))
                    classical = F._separated_by_disjoint_opens(s, a, b)
                    assert monadic == classical


class TestSober:
    def test_irreducible_iff_downward_directed(self):
        for s in all_spaces(4):
            closed = s.closed_sets()
            for a in closed:
                irr = F._is_irreducible_closed(s, a, closed)
                dd = bool(a) and F.is_downward_directed(s, a)
                assert irr == dd

    def test_every_finite_space_is_sober(self):
        for s in all_spaces(4):
            v = F.is_sober(s)
            assert v.holds and v.oracle and v.agree

    def test_irreducible_sets_of_fan_space(self):
        irr = F.irreducible_closed_sets(FAN3)
        labels = sorted(sorted(FAN3.sorted_labels(m)) for m in irr)
        assert labels == [["0", "1", "2"], ["1"], ["2"]]

    def test_empty_set_not_irreducible_nor_directed(self):
        assert 0 not in F.irreducible_closed_sets(FAN3)
        assert not F.is_downward_directed(FAN3, 0)


class TestCompactness:
    def test_fan_example(self):
        got = FAN3.monad("1") | FAN3.monad("2")
        assert got == {"0", "1", "2"} == FAN3.monad_set(["1", "2"])

    def test_identities_hold_everywhere(self):
        for s in all_spaces(4):
            report = F.compactness_identities(s)
            assert report["failures"] == []

    def test_trivial_subsets(self):
        report = F.compactness_identities(IND2)
        assert report["checked_subsets"] == 4


class TestEnumeration:
    def test_counts(self):
        assert sum(1 for _ in F.enumerate_topologies(1)) == 1
        assert sum(1 for _ in F.enumerate_topologies(2)) == 4
        assert sum(1 for _ in F.enumerate_topologies(3)) == 29

    def test_brute_force_agreement(self):
        for n in (1, 2, 3):
            fast = {s.opens for s in F.enumerate_topologies(n)}
            slow = {s.opens for s in F.brute_force_topologies(n)}
            assert fast == slow

    def test_too_large(self):
        with pytest.raises(F.TooLarge):
            list(F.enumerate_topologies(5))

    def test_all_results_valid(self):
        for s in F.enumerate_topologies(3):
            F.FinSpace(s.points, s.opens)  # re-validate from scratch

    def test_no_duplicates(self):
        seen = set()
        for s in F.enumerate_topologies(4):
            assert s.opens not in seen
            seen.add(s.opens)


class TestContinuousMaps:
    def test_identity_continuous(self):
        for s in (SIERP, FAN3, DISC3):
            ident = {p: p for p in s.points}
            assert F.is_continuous(ident, s, s)

    def test_example_not_continuous(self):
        f = {"a": "a", "b": "b"}
        assert not F.is_continuous(f, SIERP, DISC2)

    def test_constant_maps_continuous(self):
        for s in (SIERP, FAN3):
            for q in DISC3.points:
                f = {p: q for p in s.points}
                assert F.is_continuous(f, s, DISC3)

    def test_not_total(self):
        with pytest.raises(F.NotTotal):
            F.is_continuous({"a": "a"}, SIERP, SIERP)

    def test_composition_closure(self):
        maps1 = list(F.continuous_maps(SIERP, FAN3))
        maps2 = list(F.continuous_maps(FAN3, DISC2))
        for f in maps1:
            for g in maps2:
                comp = {p: g[f[p]] for p in SIERP.points}
                assert F.is_continuous(comp, SIERP, DISC2)

    def test_map_count_into_sierpinski(self):
        # maps X -> Sierpinski correspond to open subsets (preimage of {a})
        for s in (FAN3, DISC3, PART3):
            count = sum(1 for _ in F.continuous_maps(s, SIERP))
            assert count == len(s.opens)


class TestDot:
    def test_contains_hasse_edges(self):
        text = F.dot_specialization(FAN3)
        assert '"0" -> "1";' in text and '"0" -> "2";' in text
        assert text.startswith("digraph")

    def test_cycle_for_equal_monads(self):
        text = F.dot_specialization(IND2)
        assert '"a" -> "b";' in text and '"b" -> "a";' in text

    def test_transitive_reduction_drops_composite_edge(self):
        chain = space(["a", "b", "c"], [[], ["a"], ["a", "b"], ["a", "b", "c"]])
        text = F.dot_specialization(chain)
        assert '"a" -> "b";' in text and '"b" -> "c";' in text
        assert '"a" -> "c";' not in text


class TestTheoremAudit:
    def test_audit_passes_up_to_three_points(self):
        report = F.theorem_audit(all_spaces(3))
        assert report["all_passed"]
        assert report["spaces_checked"] == 34

    def test_descriptive_reading_lists_indiscrete_pair(self):
        report = F.theorem_audit([IND2])
        cands = report["descriptive"]["finite_star_space_t0"]["counterexample_candidates"]
        assert len(cands) == 1
        assert not report["asserted"]["monad_oracle_agreement"]["counterexamples"]

    def test_star_space_identity(self):
        star = F._star_space(FAN3)
        assert star == FAN3
