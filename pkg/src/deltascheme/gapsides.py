"""Two-sided point families along scheme members and their limit gap.

Each member element carries a pair of disjoint finite point sets, the
a-side and the b-side, drawn from a budget of 2k+2 points at rank k.
The recursion seeds rank 0 with {0}/{1} and, one rank up, hands every
root element the pair of the first piece unchanged while a block
element adds one fresh point to each side of its pullback pair, with
the two fresh points swapped on odd blocks. The pairs of the top
member form a finite stand-in for a gap: sides meet across distinct
elements but never within one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capture import (ConsequenceStats, enumerate_captured_tuples,
                      tally_consequences)
from .core import ConstructionScheme, Report, SchemeNode, verify_scheme
from .gapanalysis import FiniteGapFamily


def point_budget(rank: int) -> int:
    """Number of points available to a side pair of the given rank."""
    if rank < 0:
        raise ValueError(f"rank must be non-negative, got {rank}")
    return 2 * rank + 2


@dataclass(frozen=True, eq=False)
class SidePair:
    node: SchemeNode
    element: int
    a_side: frozenset[int]
    b_side: frozenset[int]


@dataclass(frozen=True, eq=False)
class SideFamily:
    scheme: ConstructionScheme
    pairs: dict[tuple[tuple[int, ...], int], SidePair]
    point_budgets: tuple[int, ...]

    def pair(self, node: SchemeNode, element: int) -> SidePair:
        return self.pairs[(node.elements, element)]


def build_sides(scheme: ConstructionScheme) -> SideFamily:
    """Run the side recursion bottom-up over a verified scheme."""
    report = verify_scheme(scheme)
    if report.failures:
        raise ValueError(f"scheme fails verification: {report.failures[0]}")
    pairs: dict[tuple[tuple[int, ...], int], SidePair] = {}
    for node in sorted(scheme.members, key=lambda n: (n.rank, n.elements)):
        if node.rank == 0:
            element = node.elements[0]
            pairs[(node.elements, element)] = SidePair(
                node, element, frozenset({0}), frozenset({1}))
            continue
        rlen = len(node.root)
        width = node.block_width
        child0 = node.children[0]
        fresh = point_budget(node.rank - 1)
        for pos, element in enumerate(node.elements):
            if pos < rlen:
                base = pairs[(child0.elements, element)]
                pairs[(node.elements, element)] = SidePair(
                    node, element, base.a_side, base.b_side)
                continue
            b, offset = divmod(pos - rlen, width)
            base = pairs[(child0.elements, child0.elements[rlen + offset])]
            if b % 2 == 0:
                a_side = base.a_side | {fresh}
                b_side = base.b_side | {fresh + 1}
            else:
                a_side = base.a_side | {fresh + 1}
                b_side = base.b_side | {fresh}
            pairs[(node.elements, element)] = SidePair(
                node, element, a_side, b_side)
    budgets = tuple(point_budget(k) for k in range(scheme.stype.max_rank + 1))
    return SideFamily(scheme, pairs, budgets)


@dataclass(frozen=True, eq=False)
class LimitGapFamily:
    """The top-member side pairs, read as a gap over the whole universe."""

    universe: int
    a_side: dict[int, frozenset[int]]
    b_side: dict[int, frozenset[int]]

    def to_gap_family(self) -> FiniteGapFamily:
        indices = tuple(range(self.universe))
        return FiniteGapFamily(indices,
                               {i: self.a_side[i] for i in indices},
                               {i: self.b_side[i] for i in indices})


def limit_family(sides: SideFamily) -> LimitGapFamily:
    scheme = sides.scheme
    top = scheme.top
    a_side: dict[int, frozenset[int]] = {}
    b_side: dict[int, frozenset[int]] = {}
    for element in top.elements:
        pair = sides.pairs.get((top.elements, element))
        if pair is None:
            raise ValueError(
                f"no side pair at the top member for element {element}")
        a_side[element] = pair.a_side
        b_side[element] = pair.b_side
    for node in scheme.members:
        for element in node.elements:
            pair = sides.pairs.get((node.elements, element))
            if pair is None:
                continue
            if not (pair.a_side <= a_side[element]
                    and pair.b_side <= b_side[element]):
                raise ValueError(
                    f"side pair of member {node.elements} at {element} is "
                    f"not below its limit")
    return LimitGapFamily(scheme.universe, a_side, b_side)


def check_side_invariants(sides: SideFamily) -> Report:
    """Re-check the side family against its defining constraints.

    Failures: the stored budget sequence, domain coverage, points kept
    inside the rank budget, disjointness of the two sides, positional
    agreement of sibling pieces, and the nesting discipline along the
    rank order: a lower-rank pair is exactly the budget cut of any
    higher-rank pair at the same element, grows into it, and never
    crosses sides. A flag is raised when members of equal rank
    disagree positionally across different parents.
    """
    scheme = sides.scheme
    pairs = sides.pairs
    failures: list[str] = []
    flags: list[str] = []

    recomputed = tuple(point_budget(k)
                       for k in range(scheme.stype.max_rank + 1))
    if sides.point_budgets != recomputed:
        failures.append(
            f"budget-sequence: stored {sides.point_budgets}, "
            f"expected {recomputed}")

    expected = {(node.elements, element)
                for node in scheme.members for element in node.elements}
    present = set(pairs)
    for elements, element in sorted(expected - present):
        failures.append(
            f"domain: missing side pair for member {elements} element {element}")
    for elements, element in sorted(present - expected):
        failures.append(
            f"domain: unexpected side pair for {elements} element {element}")

    for node in scheme.members:
        budget = point_budget(node.rank)
        for element in node.elements:
            pair = pairs.get((node.elements, element))
            if pair is None:
                continue
            for point in sorted(pair.a_side | pair.b_side):
                if point < 0 or point >= budget:
                    failures.append(
                        f"range: member {node.elements} element {element} "
                        f"uses point {point} beyond its budget of {budget}")
            overlap = pair.a_side & pair.b_side
            if overlap:
                failures.append(
                    f"self-disjoint: member {node.elements} element {element} "
                    f"has {sorted(overlap)} on both sides")

    for node in scheme.members:
        if not node.children:
            continue
        child0 = node.children[0]
        for child in node.children[1:]:
            for t in range(len(child0.elements)):
                left = pairs.get((child0.elements, child0.elements[t]))
                right = pairs.get((child.elements, child.elements[t]))
                if left is None or right is None:
                    continue
                if left.a_side != right.a_side or left.b_side != right.b_side:
                    failures.append(
                        f"iso-coherence: pieces {child0.elements} and "
                        f"{child.elements} of {node.elements} disagree at "
                        f"position {t}")
                    break

    holders: dict[int, list[SidePair]] = {}
    for node in sorted(scheme.members, key=lambda n: (n.rank, n.elements)):
        for element in node.elements:
            pair = pairs.get((node.elements, element))
            if pair is not None:
                holders.setdefault(element, []).append(pair)
    for element, chain in sorted(holders.items()):
        for i, lo in enumerate(chain):
            for hi in chain[i + 1:]:
                if lo.node.rank >= hi.node.rank:
                    continue
                cut = point_budget(lo.node.rank)
                a_cut = frozenset(p for p in hi.a_side if p < cut)
                b_cut = frozenset(p for p in hi.b_side if p < cut)
                if a_cut != lo.a_side or b_cut != lo.b_side:
                    failures.append(
                        f"nest-restrict: element {element} pair at "
                        f"{hi.node.elements} does not cut down to the pair "
                        f"at {lo.node.elements}")
                if not (lo.a_side <= hi.a_side and lo.b_side <= hi.b_side):
                    failures.append(
                        f"nest-mono: element {element} pair at "
                        f"{lo.node.elements} is not below the pair at "
                        f"{hi.node.elements}")
                if lo.a_side & hi.b_side or lo.b_side & hi.a_side:
                    failures.append(
                        f"nest-cross: element {element} pairs at "
                        f"{lo.node.elements} and {hi.node.elements} meet "
                        f"across sides")

    by_rank: dict[int, list[SchemeNode]] = {}
    for node in scheme.members:
        by_rank.setdefault(node.rank, []).append(node)
    for rank, nodes in sorted(by_rank.items()):
        nodes.sort(key=lambda n: n.elements)
        reference = nodes[0]
        for node in nodes[1:]:
            for t in range(len(reference.elements)):
                left = pairs.get((reference.elements, reference.elements[t]))
                right = pairs.get((node.elements, node.elements[t]))
                if left is None or right is None:
                    continue
                if left.a_side != right.a_side or left.b_side != right.b_side:
                    flags.append(
                        f"global-iso-coherence: rank-{rank} members "
                        f"{reference.elements} and {node.elements} disagree "
                        f"at position {t}")
                    break

    return Report(tuple(failures), tuple(flags))


@dataclass(frozen=True)
class GapConsequenceReport:
    pairs: ConsequenceStats
    triples: ConsequenceStats

    @property
    def all_satisfied(self) -> bool:
        return self.pairs.all_satisfied and self.triples.all_satisfied


def capture_gap_consequences(sides: SideFamily) -> GapConsequenceReport:
    """Evaluate the gap claims on every captured pair and triple.

    For a captured pair (alpha, beta) at a member of rank k the claim
    is that the fresh point of rank k-1 lands in the limit a-side of
    alpha and the limit b-side of beta. A captured triple (alpha,
    beta, gamma) additionally asks the limit a-side of alpha to meet
    the limit b-side of beta and both limit sides of alpha to sit
    inside those of gamma.
    """
    scheme = sides.scheme
    top = scheme.top
    empty: frozenset[int] = frozenset()

    def a_lim(element: int) -> frozenset[int]:
        pair = sides.pairs.get((top.elements, element))
        return pair.a_side if pair is not None else empty

    def b_lim(element: int) -> frozenset[int]:
        pair = sides.pairs.get((top.elements, element))
        return pair.b_side if pair is not None else empty

    pair_rows = []
    for node, tup in enumerate_captured_tuples(scheme, 2):
        alpha, beta = tup
        fresh = point_budget(node.rank - 1)
        claims = {
            "fresh-point-meet": fresh in a_lim(alpha) and fresh in b_lim(beta),
        }
        pair_rows.append((f"node {node.elements} pair {tup}", claims))

    triple_rows = []
    for node, tup in enumerate_captured_tuples(scheme, 3):
        alpha, beta, gamma = tup
        fresh = point_budget(node.rank - 1)
        claims = {
            "meet-nonempty": bool(a_lim(alpha) & b_lim(beta)),
            "fresh-point-meet": fresh in a_lim(alpha) and fresh in b_lim(beta),
            "a-side-nested": a_lim(alpha) <= a_lim(gamma),
            "b-side-nested": b_lim(alpha) <= b_lim(gamma),
        }
        triple_rows.append((f"node {node.elements} triple {tup}", claims))

    return GapConsequenceReport(tally_consequences(pair_rows),
                                tally_consequences(triple_rows))
