"""Brute-force analysis of finite two-sided index families.

A finite gap family assigns each index a pair of disjoint point sets,
an a-side and a b-side. Everything here is an exhaustive scan: witness
pair searches (a meeting pair, an orthogonal pair, a nested pair), a
union splitter that tests whether one set separates the a-sides from
the b-sides, the two condition posets built from such families, and a
maximum-antichain search over either poset. Inputs are small by
design; no search below tries to be clever.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

from .core import is_strictly_increasing

Sides = dict[int, frozenset[int]]


@dataclass(frozen=True)
class FiniteGapFamily:
    indices: tuple[int, ...]
    a_side: Sides
    b_side: Sides

    def __post_init__(self) -> None:
        if not is_strictly_increasing(self.indices):
            raise ValueError(
                f"indices must be strictly increasing: {self.indices}")
        for i in self.indices:
            if i not in self.a_side or i not in self.b_side:
                raise ValueError(f"index {i} is missing a side")
            if self.a_side[i] & self.b_side[i]:
                raise ValueError(f"sides of {i} overlap")


def make_gap_family(
        entries: Iterable[tuple[int, Iterable[int], Iterable[int]]],
) -> FiniteGapFamily:
    rows: list[tuple[int, frozenset[int], frozenset[int]]] = []
    seen: set[int] = set()
    for index, a, b in entries:
        if index in seen:
            raise ValueError(f"duplicate index {index}")
        seen.add(index)
        rows.append((index, frozenset(a), frozenset(b)))
    rows.sort(key=lambda row: row[0])
    return FiniteGapFamily(tuple(row[0] for row in rows),
                           {row[0]: row[1] for row in rows},
                           {row[0]: row[2] for row in rows})


def _resolve_sub(family: FiniteGapFamily,
                 subset: Optional[Sequence[int]]) -> tuple[int, ...]:
    if subset is None:
        return family.indices
    index_set = set(family.indices)
    seen: set[int] = set()
    out: list[int] = []
    for i in subset:
        if i not in index_set:
            raise ValueError(f"index {i} is not in the family")
        if i in seen:
            raise ValueError(f"index {i} repeats in the subset")
        seen.add(i)
        out.append(i)
    return tuple(out)


def ramsey_pair_search(family: FiniteGapFamily,
                       subset: Optional[Sequence[int]] = None,
                       ) -> Optional[tuple[int, int]]:
    """First pair whose a-side meets the later b-side, else None."""
    sub = _resolve_sub(family, subset)
    for lo, hi in combinations(sub, 2):
        if family.a_side[lo] & family.b_side[hi]:
            return (lo, hi)
    return None


def s_pair_search(family: FiniteGapFamily,
                  subset: Optional[Sequence[int]] = None,
                  ) -> Optional[tuple[int, int]]:
    """First pair orthogonal in both orientations, else None."""
    sub = _resolve_sub(family, subset)
    for lo, hi in combinations(sub, 2):
        if not family.a_side[lo] & family.b_side[hi] and \
                not family.a_side[hi] & family.b_side[lo]:
            return (lo, hi)
    return None


def t_pair_search(family: FiniteGapFamily,
                  subset: Optional[Sequence[int]] = None,
                  ) -> Optional[tuple[int, int]]:
    """First pair with both sides nested into the later index, else None."""
    sub = _resolve_sub(family, subset)
    for lo, hi in combinations(sub, 2):
        if family.a_side[lo] <= family.a_side[hi] and \
                family.b_side[lo] <= family.b_side[hi]:
            return (lo, hi)
    return None


class SplitterRow(NamedTuple):
    index: int
    a_minus_c: frozenset[int]
    c_meets_b: frozenset[int]


@dataclass(frozen=True)
class SplitterReport:
    c: frozenset[int]
    rows: tuple[SplitterRow, ...]


def union_splitter(family: FiniteGapFamily,
                   subset: Sequence[int]) -> SplitterReport:
    """Union the a-sides over the subset and record, for every index,
    what the union misses and which b-side points it hits.

    The union separates the subset exactly when no subset row reports
    a b-side hit; whether it does is a two-orientation question, one
    meeting pair in either direction already spoils it.
    """
    sub = _resolve_sub(family, subset)
    if not sub:
        raise ValueError("the subset must contain at least one index")
    c: frozenset[int] = frozenset()
    for i in sub:
        c |= family.a_side[i]
    rows = tuple(SplitterRow(i, family.a_side[i] - c, c & family.b_side[i])
                 for i in family.indices)
    return SplitterReport(c, rows)


def is_s_condition(family: FiniteGapFamily,
                   indices: Iterable[int]) -> bool:
    """True when the chosen indices are pairwise orthogonal, a-side
    against b-side, in both orientations."""
    index_set = set(family.indices)
    chosen: list[int] = []
    seen: set[int] = set()
    for i in indices:
        if i not in index_set:
            raise ValueError(f"index {i} is not in the family")
        if i not in seen:
            seen.add(i)
            chosen.append(i)
    return all(not family.a_side[x] & family.b_side[y]
               for x in chosen for y in chosen if x != y)


def s_poset_compatible(p: Iterable[int], q: Iterable[int],
                       family: FiniteGapFamily) -> bool:
    """Whether two orthogonality conditions admit a common extension,
    which here just means their union is again a condition."""
    p_set, q_set = set(p), set(q)
    if not is_s_condition(family, p_set) or not is_s_condition(family, q_set):
        raise ValueError("both arguments must be orthogonality conditions")
    return is_s_condition(family, p_set | q_set)


def is_t_condition(sets: Iterable[Iterable[int]]) -> bool:
    """True when the given sets are pairwise incomparable under
    inclusion (duplicates collapse first)."""
    unique = {frozenset(s) for s in sets}
    return all(not p < q for p in unique for q in unique)


def t_poset_compatible(first: Iterable[Iterable[int]],
                       second: Iterable[Iterable[int]]) -> bool:
    """Whether two incomparability conditions admit a common extension,
    which again means their union is a condition."""
    first = [frozenset(s) for s in first]
    second = [frozenset(s) for s in second]
    if not is_t_condition(first) or not is_t_condition(second):
        raise ValueError("both arguments must be incomparability conditions")
    return is_t_condition(first + second)


@dataclass(frozen=True)
class AntichainResult:
    size: int
    antichain: tuple
    certificates: tuple[str, ...]


def max_antichain_search(kind: str, data, size_bound: int) -> AntichainResult:
    """Exhaustive maximum-antichain search in one of the two posets.

    kind "orthogonal" reads data as a FiniteGapFamily and works in the
    poset of orthogonality conditions; kind "incomparable" reads data
    as a collection of ground sets and works in the poset of
    incomparability conditions. The search enumerates all conditions,
    then finds a largest set of pairwise incompatible ones up to
    size_bound, depth-first, keeping the first maximum it meets. Each
    returned certificate names one condition pair and the concrete
    obstruction to extending both.
    """
    if size_bound < 1:
        raise ValueError(f"size bound must be positive, got {size_bound}")

    if kind == "orthogonal":
        family: FiniteGapFamily = data
        conditions = [combo
                      for size in range(1, len(family.indices) + 1)
                      for combo in combinations(family.indices, size)
                      if is_s_condition(family, combo)]

        def compatible(p, q) -> bool:
            return is_s_condition(family, set(p) | set(q))

        def render(combo):
            return tuple(combo)

        def certificate(p, q) -> str:
            merged = sorted(set(p) | set(q))
            for x in merged:
                for y in merged:
                    if x != y and family.a_side[x] & family.b_side[y]:
                        hit = sorted(family.a_side[x] & family.b_side[y])
                        return (f"conditions {render(p)} and {render(q)}: "
                                f"a side of {x} meets b side of {y} at {hit}")
            raise AssertionError("incompatible pair without a meeting point")

    elif kind == "incomparable":
        pool = sorted({frozenset(s) for s in data},
                      key=lambda s: (len(s), sorted(s)))
        conditions = [combo
                      for size in range(1, len(pool) + 1)
                      for combo in combinations(pool, size)
                      if is_t_condition(combo)]

        def compatible(p, q) -> bool:
            return is_t_condition(list(p) + list(q))

        def render(combo):
            return tuple(sorted(tuple(sorted(s)) for s in combo))

        def certificate(p, q) -> str:
            merged = sorted(set(p) | set(q), key=lambda s: (len(s), sorted(s)))
            for inner in merged:
                for outer in merged:
                    if inner < outer:
                        return (f"conditions {render(p)} and {render(q)}: "
                                f"{tuple(sorted(inner))} sits inside "
                                f"{tuple(sorted(outer))}")
            raise AssertionError("incompatible pair without a nested pair")

    else:
        raise ValueError(f"unknown poset kind: {kind}")

    count = len(conditions)
    incompatible = [set() for _ in range(count)]
    for i, j in combinations(range(count), 2):
        if not compatible(conditions[i], conditions[j]):
            incompatible[i].add(j)
            incompatible[j].add(i)

    best: list[int] = []

    def extend(current: list[int], candidates: list[int]) -> None:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        if len(current) >= size_bound:
            return
        for idx, cand in enumerate(candidates):
            # remaining candidates cannot beat the best already found
            if len(current) + len(candidates) - idx <= len(best):
                break
            current.append(cand)
            extend(current, [c for c in candidates[idx + 1:]
                             if c in incompatible[cand]])
            current.pop()

    extend([], list(range(count)))

    antichain = tuple(render(conditions[i]) for i in best)
    certificates = tuple(certificate(conditions[i], conditions[j])
                         for i, j in combinations(best, 2))
    return AntichainResult(len(best), antichain, certificates)
