"""Brute-force gap checker tests: witness searches, the union splitter,
poset compatibility, and the antichain search."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltascheme.gapanalysis import (
    FiniteGapFamily,
    is_s_condition,
    is_t_condition,
    make_gap_family,
    max_antichain_search,
    ramsey_pair_search,
    s_pair_search,
    s_poset_compatible,
    t_pair_search,
    t_poset_compatible,
    union_splitter,
)
from deltascheme.gapsides import build_sides, limit_family

# limit family of the universe-6 scheme, frozen from the side oracles
SIX_FAMILY = make_gap_family([
    (0, {0, 2, 4}, {1, 3, 5}),
    (1, {0, 3, 4}, {1, 2, 5}),
    (2, {0, 2, 5}, {1, 3, 4}),
    (3, {0, 3, 5}, {1, 2, 4}),
    (4, {0, 2, 4}, {1, 3, 5}),
    (5, {0, 3, 4}, {1, 2, 5}),
])

DISJOINT_FAMILY = make_gap_family([
    (0, {0}, {1}),
    (1, {2}, {3}),
    (2, {4}, {5}),
])


@st.composite
def gap_families(draw, max_indices: int = 6, value_cap: int = 12):
    count = draw(st.integers(1, max_indices))
    entries = []
    for idx in range(count):
        points = draw(st.lists(st.integers(0, value_cap - 1), max_size=6, unique=True))
        split = draw(st.integers(0, len(points)))
        entries.append((idx, points[:split], points[split:]))
    return make_gap_family(entries)


class TestFamilyConstruction:
    def test_sides_must_be_disjoint(self):
        with pytest.raises(ValueError):
            make_gap_family([(0, {1, 2}, {2, 3})])

    def test_duplicate_index_rejected(self):
        with pytest.raises(ValueError):
            make_gap_family([(0, {1}, {2}), (0, {3}, {4})])

    def test_indices_must_be_sorted(self):
        with pytest.raises(ValueError):
            FiniteGapFamily((1, 0), {0: frozenset(), 1: frozenset()},
                            {0: frozenset(), 1: frozenset()})

    def test_matches_scheme_limit(self, scheme_six):
        lim = limit_family(build_sides(scheme_six))
        assert lim.to_gap_family().a_side == SIX_FAMILY.a_side
        assert lim.to_gap_family().b_side == SIX_FAMILY.b_side


class TestPairSearches:
    def test_ramsey_on_six_family(self):
        assert ramsey_pair_search(SIX_FAMILY) == (0, 1)
        assert SIX_FAMILY.a_side[0] & SIX_FAMILY.b_side[1] == {2}

    def test_ramsey_none_on_disjoint_family(self):
        assert ramsey_pair_search(DISJOINT_FAMILY) is None

    def test_ramsey_respects_subset(self):
        hit = ramsey_pair_search(SIX_FAMILY, (3, 5))
        assert hit == (3, 5)
        assert SIX_FAMILY.a_side[3] & SIX_FAMILY.b_side[5]

    def test_orthogonal_pair_on_six_family(self):
        pair = s_pair_search(SIX_FAMILY)
        assert pair == (0, 4)
        assert not SIX_FAMILY.a_side[0] & SIX_FAMILY.b_side[4]
        assert not SIX_FAMILY.a_side[4] & SIX_FAMILY.b_side[0]

    def test_orthogonal_pair_none_on_singleton(self):
        assert s_pair_search(SIX_FAMILY, (2,)) is None

    def test_nested_pair_on_captured_triple(self):
        assert t_pair_search(SIX_FAMILY, (0, 2, 4)) == (0, 4)

    def test_nested_pair_none_when_absent(self):
        family = make_gap_family([(0, {0}, {1}), (1, {2}, {0})])
        assert t_pair_search(family) is None

    def test_subset_out_of_range_raises(self):
        with pytest.raises(ValueError):
            ramsey_pair_search(SIX_FAMILY, (0, 9))
        with pytest.raises(ValueError):
            s_pair_search(SIX_FAMILY, (0, 0))


class TestUnionSplitter:
    def test_singleton_union_is_the_side(self):
        report = union_splitter(SIX_FAMILY, (2,))
        assert report.c == SIX_FAMILY.a_side[2]
        row = next(row for row in report.rows if row.index == 2)
        assert row.a_minus_c == frozenset()
        assert row.c_meets_b == frozenset()

    def test_rows_cover_whole_family(self):
        report = union_splitter(SIX_FAMILY, (0, 1))
        assert [row.index for row in report.rows] == list(SIX_FAMILY.indices)

    def test_clean_split_on_two_sided_orthogonal_sub(self):
        family = make_gap_family([(0, {0}, {1}), (1, {2}, {3}), (2, {0, 4}, {5})])
        assert is_s_condition(family, (0, 1))
        report = union_splitter(family, (0, 1))
        assert report.c == {0, 2}
        for row in report.rows:
            if row.index in (0, 1):
                assert row.a_minus_c == frozenset()
                assert row.c_meets_b == frozenset()

    def test_one_orientation_does_not_suffice(self):
        # the lex scan sees no meeting pair, yet the union of the a
        # sides still lands in a b side: both orientations matter
        family = make_gap_family([(0, {0}, {5}), (1, {1, 5}, {2})])
        assert ramsey_pair_search(family) is None
        report = union_splitter(family, (0, 1))
        assert any(row.c_meets_b for row in report.rows)
        assert not is_s_condition(family, (0, 1))

    def test_empty_sub_rejected(self):
        with pytest.raises(ValueError):
            union_splitter(SIX_FAMILY, ())


class TestPosets:
    def test_orthogonality_compatibility(self):
        assert s_poset_compatible((0,), (1,), DISJOINT_FAMILY)
        assert not s_poset_compatible((0,), (1,), SIX_FAMILY)
        assert s_poset_compatible((0,), (0, 4), SIX_FAMILY)

    def test_orthogonality_rejects_non_conditions(self):
        with pytest.raises(ValueError):
            s_poset_compatible((0, 1), (2,), SIX_FAMILY)

    def test_incomparability_compatibility(self):
        assert t_poset_compatible([{1}], [{2}])
        assert not t_poset_compatible([{1}], [{1, 2}])
        assert t_poset_compatible([{1}], [{1}])

    def test_incomparability_rejects_non_conditions(self):
        with pytest.raises(ValueError):
            t_poset_compatible([{1}, {1, 2}], [{3}])

    def test_condition_predicates(self):
        assert is_s_condition(SIX_FAMILY, (0, 4))
        assert not is_s_condition(SIX_FAMILY, (0, 1))
        assert is_t_condition([{1}, {2}])
        assert not is_t_condition([{1}, {1, 2}])


class TestAntichainSearch:
    def test_ground_poset_of_three_sets(self):
        result = max_antichain_search("incomparable", [{1}, {2}, {1, 2}], 4)
        assert result.size == 2
        assert result.antichain == (((1,),), ((1, 2),))
        assert len(result.certificates) == 1
        assert "inside" in result.certificates[0]

    def test_all_compatible_family_gives_singleton(self):
        result = max_antichain_search("orthogonal", DISJOINT_FAMILY, 4)
        assert result.size == 1
        assert result.certificates == ()

    def test_size_bound_caps_the_search(self):
        result = max_antichain_search("incomparable",
                                      [{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}], 1)
        assert result.size == 1

    def test_deterministic(self):
        once = max_antichain_search("orthogonal", SIX_FAMILY, 3)
        twice = max_antichain_search("orthogonal", SIX_FAMILY, 3)
        assert once == twice
        assert once.size >= 2  # (0,) against (1,) are incompatible

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            max_antichain_search("byrank", SIX_FAMILY, 2)
        with pytest.raises(ValueError):
            max_antichain_search("orthogonal", SIX_FAMILY, 0)

    def test_matches_brute_force_on_small_families(self):
        for seed_family in (DISJOINT_FAMILY,
                            make_gap_family([(0, {0}, {1}), (1, {1}, {0}),
                                             (2, {0, 1}, {2})])):
            for bound in (1, 2, 3):
                got = max_antichain_search("orthogonal", seed_family, bound)
                assert got.size == _brute_force_antichain_s(seed_family, bound)

    def test_matches_brute_force_on_ground_sets(self):
        grounds = [
            [{1}, {2}, {1, 2}],
            [{1}, {2}, {3}],
            [{1, 2}, {2, 3}, {1, 3}, {1}],
        ]
        for ground in grounds:
            for bound in (1, 2, 3):
                got = max_antichain_search("incomparable", ground, bound)
                assert got.size == _brute_force_antichain_t(ground, bound)


def _conditions_s(family):
    out = []
    for size in range(1, len(family.indices) + 1):
        for combo in combinations(family.indices, size):
            if is_s_condition(family, combo):
                out.append(combo)
    return out


def _conditions_t(ground):
    pool = sorted({frozenset(s) for s in ground}, key=lambda s: (len(s), sorted(s)))
    out = []
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            if is_t_condition(combo):
                out.append(combo)
    return out


def _brute_force_antichain_s(family, bound):
    conditions = _conditions_s(family)
    best = 0
    for size in range(1, min(bound, len(conditions)) + 1):
        for group in combinations(conditions, size):
            pairs = combinations(group, 2)
            if all(not is_s_condition(family, set(p) | set(q)) for p, q in pairs):
                best = max(best, size)
    return best


def _brute_force_antichain_t(ground, bound):
    conditions = _conditions_t(ground)
    best = 0
    for size in range(1, min(bound, len(conditions)) + 1):
        for group in combinations(conditions, size):
            pairs = combinations(group, 2)
            if all(not is_t_condition(set(p) | set(q)) for p, q in pairs):
                best = max(best, size)
    return best


@given(family=gap_families())
@settings(max_examples=60, deadline=None)
def test_searches_match_naive_scans(family):
    indices = list(family.indices)
    naive_ramsey = None
    naive_orthogonal = None
    naive_nested = None
    for i in range(len(indices)):
        for j in range(i + 1, len(indices)):
            lo, hi = indices[i], indices[j]
            if naive_ramsey is None and family.a_side[lo] & family.b_side[hi]:
                naive_ramsey = (lo, hi)
            if naive_orthogonal is None and \
                    not family.a_side[lo] & family.b_side[hi] and \
                    not family.a_side[hi] & family.b_side[lo]:
                naive_orthogonal = (lo, hi)
            if naive_nested is None and \
                    family.a_side[lo] <= family.a_side[hi] and \
                    family.b_side[lo] <= family.b_side[hi]:
                naive_nested = (lo, hi)
    assert ramsey_pair_search(family) == naive_ramsey
    assert s_pair_search(family) == naive_orthogonal
    assert t_pair_search(family) == naive_nested


@given(family=gap_families())
@settings(max_examples=60, deadline=None)
def test_splitter_equivalence_with_two_sided_condition(family):
    sub = family.indices
    report = union_splitter(family, sub)
    clean = all(not row.c_meets_b for row in report.rows if row.index in sub)
    assert clean == is_s_condition(family, sub)
    for row in report.rows:
        if row.index in sub:
            assert row.a_minus_c == frozenset()
