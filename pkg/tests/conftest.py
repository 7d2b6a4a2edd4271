"""Shared fixtures: a handful of reference schemes built once per session.

Naming: scheme_pair has universe 2 (the smallest nontrivial case),
scheme_shared has universe 4 and a one-element shared root at the top
rank, scheme_six has universe 6 with disjoint pieces throughout, and
scheme_big is the universe-72 stress case with mixed root sizes.
"""

from __future__ import annotations

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from deltascheme.core import SchemeType, generate_tower_scheme
from deltascheme.gapsides import build_sides
from deltascheme.treelabels import build_labels

TYPE_PAIR = SchemeType.from_arities((2,), (0,))
TYPE_SHARED = SchemeType.from_arities((2, 3), (0, 1))
TYPE_SIX = SchemeType.from_arities((2, 3), (0, 0))
TYPE_BIG = SchemeType.from_arities((2, 3, 4, 5), (0, 1, 0, 2))


@pytest.fixture(scope="session")
def scheme_pair():
    return generate_tower_scheme(TYPE_PAIR)


@pytest.fixture(scope="session")
def scheme_shared():
    return generate_tower_scheme(TYPE_SHARED)


@pytest.fixture(scope="session")
def scheme_six():
    return generate_tower_scheme(TYPE_SIX)


@pytest.fixture(scope="session")
def scheme_big():
    return generate_tower_scheme(TYPE_BIG)


@pytest.fixture(scope="session")
def labeled_pair(scheme_pair):
    return build_labels(scheme_pair)


@pytest.fixture(scope="session")
def labeled_shared(scheme_shared):
    return build_labels(scheme_shared)


@pytest.fixture(scope="session")
def labeled_six(scheme_six):
    return build_labels(scheme_six)


@pytest.fixture(scope="session")
def labeled_big(scheme_big):
    return build_labels(scheme_big)


@pytest.fixture(scope="session")
def sides_pair(scheme_pair):
    return build_sides(scheme_pair)


@pytest.fixture(scope="session")
def sides_shared(scheme_shared):
    return build_sides(scheme_shared)


@pytest.fixture(scope="session")
def sides_six(scheme_six):
    return build_sides(scheme_six)


@pytest.fixture(scope="session")
def sides_big(scheme_big):
    return build_sides(scheme_big)


@st.composite
def scheme_types(draw, max_rank: int = 3, max_blocks: int = 5, size_cap: int = 200):
    """Random well-formed type skeletons with small universes."""
    depth = draw(st.integers(1, max_rank))
    block_counts = []
    root_sizes = []
    size = 1
    for rank in range(1, depth + 1):
        count = draw(st.integers(rank + 1, max(rank + 1, max_blocks)))
        overlap = draw(st.integers(0, size - 1))
        block_counts.append(count)
        root_sizes.append(overlap)
        size = count * (size - overlap) + overlap
    assume(size <= size_cap)
    return SchemeType.from_arities(block_counts, root_sizes)
