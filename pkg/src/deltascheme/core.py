"""Finite construction schemes on a desk-scale universe.

A scheme is a ranked family of finite sets. Every member of rank k
splits into a fixed number of rank k-1 pieces that form an increasing
delta-system: all pairwise intersections equal one common root, and the
non-root parts of the pieces sit one above the other. The whole family
is generated from a small arithmetic type and can be re-verified from
scratch, which is what this module provides: the type arithmetic, the
delta-system test, order transport between pieces, a deterministic
generator, and an independent verifier.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

Elements = tuple[int, ...]


def is_strictly_increasing(values: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class Report:
    """Outcome of a verification pass: hard failures plus informative
    flags that do not affect the verdict."""

    failures: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class SchemeType:
    """Arithmetic skeleton of a scheme.

    sizes[k] is the cardinality of a rank-k member, block_counts[k-1]
    the number of pieces a rank-k member splits into, root_sizes[k-1]
    the size of the shared root of those pieces.
    """

    sizes: tuple[int, ...]
    block_counts: tuple[int, ...]
    root_sizes: tuple[int, ...]

    @property
    def max_rank(self) -> int:
        return len(self.sizes) - 1

    @property
    def universe_size(self) -> int:
        return self.sizes[-1]

    @staticmethod
    def from_arities(block_counts: Sequence[int],
                     root_sizes: Sequence[int]) -> "SchemeType":
        """Derive the member sizes from the block counts and root sizes
        via m[k] = n[k]*(m[k-1]-r[k]) + r[k], starting from m[0] = 1."""
        counts = tuple(block_counts)
        roots = tuple(root_sizes)
        if len(counts) != len(roots):
            raise ValueError(
                f"need one root size per rank: got {len(counts)} block counts "
                f"and {len(roots)} root sizes")
        sizes = [1]
        for count, root in zip(counts, roots):
            sizes.append(count * (sizes[-1] - root) + root)
        return SchemeType(tuple(sizes), counts, roots)


def validate_type(stype: SchemeType) -> list[str]:
    """Check the arithmetic constraints on a type.

    Returns a list of violation strings, empty when the type is valid.
    Structurally malformed types (mismatched tuple lengths) raise.
    """
    if not stype.sizes:
        raise ValueError("a type needs at least the rank-0 size")
    if len(stype.sizes) != len(stype.block_counts) + 1 or \
            len(stype.block_counts) != len(stype.root_sizes):
        raise ValueError(
            f"inconsistent type lengths: {len(stype.sizes)} sizes, "
            f"{len(stype.block_counts)} block counts, "
            f"{len(stype.root_sizes)} root sizes")
    problems = []
    if stype.sizes[0] != 1:
        problems.append(f"m[0]=1 violated: got {stype.sizes[0]}")
    for k in range(1, len(stype.sizes)):
        count = stype.block_counts[k - 1]
        root = stype.root_sizes[k - 1]
        if count <= k:
            problems.append(
                f"n[k]>k violated at k={k}: n[{k}]>{k} required (got {count})")
        if not 0 <= root < stype.sizes[k - 1]:
            problems.append(
                f"r[k]<m[k-1] violated at k={k}: r[{k}]={root}, "
                f"m[{k - 1}]={stype.sizes[k - 1]}")
            continue
        expected = count * (stype.sizes[k - 1] - root) + root
        if stype.sizes[k] != expected:
            problems.append(
                f"m[k]=n[k]*(m[k-1]-r[k])+r[k] violated at k={k}: "
                f"m[{k}]={stype.sizes[k]}, expected {expected}")
    return problems


class DeltaCheck(NamedTuple):
    ok: bool
    root: Elements
    violation: str | None


def is_increasing_delta_system(members: Iterable[Sequence[int]]) -> DeltaCheck:
    """Decide whether a list of sorted tuples forms an increasing
    delta-system: equal pairwise intersections (the root), root below
    every non-root part, and non-root parts strictly stacked."""
    fam = [tuple(m) for m in members]
    if not fam:
        raise ValueError("empty family")
    for m in fam:
        if not is_strictly_increasing(m):
            return DeltaCheck(False, (), f"member {m} is not strictly increasing")
    if len(fam) == 1:
        return DeltaCheck(True, (), None)
    root = tuple(sorted(set(fam[0]) & set(fam[1])))
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            meet = tuple(sorted(set(fam[i]) & set(fam[j])))
            if meet != root:
                return DeltaCheck(
                    False, (),
                    f"members {fam[i]} and {fam[j]} meet in {meet}, "
                    f"but the first two meet in {root}")
    rootset = set(root)
    blocks = [[x for x in m if x not in rootset] for m in fam]
    for m, block in zip(fam, blocks):
        if root and block and max(root) > min(block):
            return DeltaCheck(
                False, (), f"root {root} does not precede the rest of {m}")
    # strictly stacked means position by position: the t-th non-root
    # element grows from one piece to the next
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if len(blocks[i]) != len(blocks[j]):
                return DeltaCheck(
                    False, (),
                    f"pieces {i} and {j} have different sizes: "
                    f"{blocks[i]} against {blocks[j]}")
            if any(a >= b for a, b in zip(blocks[i], blocks[j])):
                return DeltaCheck(
                    False, (),
                    f"pieces {i} and {j} are not increasing: "
                    f"{blocks[i]} against {blocks[j]}")
    return DeltaCheck(True, root, None)


@dataclass(frozen=True)
class DeltaSystem:
    """An increasing delta-system given by its members and root."""

    members: tuple[Elements, ...]
    root: Elements

    @staticmethod
    def from_sets(members: Iterable[Sequence[int]]) -> "DeltaSystem":
        fam = tuple(tuple(m) for m in members)
        check = is_increasing_delta_system(fam)
        if not check.ok:
            raise ValueError(check.violation)
        return DeltaSystem(fam, check.root)


@dataclass(frozen=True)
class OrderIso:
    """The unique order isomorphism between two sets of equal size."""

    source: Elements
    target: Elements

    @cached_property
    def _forward(self) -> dict[int, int]:
        return dict(zip(self.source, self.target))

    @cached_property
    def _backward(self) -> dict[int, int]:
        return dict(zip(self.target, self.source))

    def apply(self, x: int) -> int:
        return self._forward[x]

    def invert(self, y: int) -> int:
        return self._backward[y]

    def inverse(self) -> "OrderIso":
        return OrderIso(self.target, self.source)

    def then(self, other: "OrderIso") -> "OrderIso":
        if self.target != other.source:
            raise ValueError(
                f"cannot compose: target {self.target} is not the "
                f"source {other.source}")
        return OrderIso(self.source, tuple(other.apply(y) for y in self.target))

    def pairing(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.source, self.target))


def order_iso(source: Sequence[int], target: Sequence[int]) -> OrderIso:
    src = tuple(source)
    tgt = tuple(target)
    if len(src) != len(tgt):
        raise ValueError(f"size mismatch: {len(src)} against {len(tgt)}")
    if not is_strictly_increasing(src) or not is_strictly_increasing(tgt):
        raise ValueError("both sides must be strictly increasing")
    return OrderIso(src, tgt)


def transport(iso: OrderIso, mapping: Mapping[int, object]) -> dict[int, object]:
    """Push a mapping on the source of an iso over to its target."""
    missing = [x for x in iso.source if x not in mapping]
    if missing:
        raise ValueError(f"mapping not total: missing {missing}")
    return {iso.apply(x): mapping[x] for x in iso.source}


@dataclass(frozen=True, eq=False)
class SchemeNode:
    """One member of a scheme: its elements, rank, the root shared by
    its pieces, and the pieces themselves."""

    elements: Elements
    rank: int
    root: Elements
    children: tuple["SchemeNode", ...] = ()

    def __repr__(self) -> str:
        return f"SchemeNode({self.elements}, rank={self.rank})"

    @property
    def root_size(self) -> int:
        return len(self.root)

    @property
    def block_width(self) -> int:
        if not self.children:
            raise ValueError("a rank-0 member has no blocks")
        return (len(self.elements) - len(self.root)) // len(self.children)

    def position(self, element: int) -> int:
        return self.elements.index(element)

    def block_of(self, element: int) -> tuple[int, int]:
        """Block index and offset of a non-root element."""
        pos = self.position(element)
        if pos < len(self.root):
            raise ValueError(f"element {element} lies in the root of {self.elements}")
        return divmod(pos - len(self.root), self.block_width)

    def child_iso(self, i: int) -> OrderIso:
        return order_iso(self.children[0].elements, self.children[i].elements)


@dataclass(frozen=True, eq=False)
class ConstructionScheme:
    stype: SchemeType
    universe: int
    top: SchemeNode
    members: tuple[SchemeNode, ...]

    @cached_property
    def node_index(self) -> dict[Elements, SchemeNode]:
        index: dict[Elements, SchemeNode] = {}
        for node in self.members:
            index.setdefault(node.elements, node)
        return index

    def member(self, elements: Sequence[int]) -> SchemeNode:
        return self.node_index[tuple(elements)]

    def members_of_rank(self, rank: int) -> tuple[SchemeNode, ...]:
        return tuple(node for node in self.members if node.rank == rank)


def _preorder_dedup(top: SchemeNode) -> tuple[SchemeNode, ...]:
    # first-visit depth-first order, shared pieces listed once
    out: list[SchemeNode] = []
    seen: set[int] = set()
    stack = [top]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        out.append(node)
        stack.extend(reversed(node.children))
    return tuple(out)


def generate_tower_scheme(stype: SchemeType) -> ConstructionScheme:
    """Build the canonical scheme of a type on the universe 0..m[K]-1.

    A rank-k member on a sorted element tuple keeps its first r[k]
    elements as the root and deals the rest into n[k] consecutive
    blocks; pieces are memoized so shared roots reuse one object.
    """
    problems = validate_type(stype)
    if problems:
        raise ValueError(f"invalid scheme type: {problems[0]}")
    registry: dict[Elements, SchemeNode] = {}

    def build(elements: Elements, rank: int) -> SchemeNode:
        node = registry.get(elements)
        if node is not None:
            return node
        if rank == 0:
            node = SchemeNode(elements, 0, (), ())
        else:
            rlen = stype.root_sizes[rank - 1]
            root = elements[:rlen]
            rest = elements[rlen:]
            width = stype.sizes[rank - 1] - rlen
            children = tuple(
                build(root + rest[i * width:(i + 1) * width], rank - 1)
                for i in range(stype.block_counts[rank - 1]))
            node = SchemeNode(elements, rank, root, children)
        registry[elements] = node
        return node

    top = build(tuple(range(stype.universe_size)), stype.max_rank)
    return ConstructionScheme(stype, stype.universe_size, top,
                              _preorder_dedup(top))


def verify_scheme(scheme: ConstructionScheme) -> Report:
    """Re-check every defining property of a scheme from scratch,
    without trusting how it was built."""
    failures: list[str] = []
    stype = scheme.stype

    first_for: dict[Elements, SchemeNode] = {}
    for node in scheme.members:
        if node.elements in first_for:
            failures.append(
                f"unique-decomposition: member {node.elements} is listed twice")
        else:
            first_for[node.elements] = node

    for node in scheme.members:
        if not is_strictly_increasing(node.elements):
            failures.append(
                f"element-order: member {node.elements} is not strictly increasing")
            continue
        if any(x < 0 or x >= scheme.universe for x in node.elements):
            failures.append(
                f"element-range: member {node.elements} leaves the universe "
                f"of size {scheme.universe}")
        if not 0 <= node.rank <= stype.max_rank:
            failures.append(
                f"rank-range: member {node.elements} has rank {node.rank}")
            continue
        if len(node.elements) != stype.sizes[node.rank]:
            failures.append(
                f"size: member {node.elements} has |F|={len(node.elements)}, "
                f"violates |F|=m[{node.rank}]={stype.sizes[node.rank]}")
        if node.rank == 0:
            if node.children:
                failures.append(
                    f"leaf-children: rank-0 member {node.elements} has pieces")
            continue
        if len(node.children) != stype.block_counts[node.rank - 1]:
            failures.append(
                f"child-count: member {node.elements} has {len(node.children)} "
                f"pieces, expected {stype.block_counts[node.rank - 1]}")
        if len(node.root) != stype.root_sizes[node.rank - 1]:
            failures.append(
                f"root-size: member {node.elements} declares a root of size "
                f"{len(node.root)}, expected {stype.root_sizes[node.rank - 1]}")
        for child in node.children:
            if child.rank != node.rank - 1:
                failures.append(
                    f"child-rank: piece {child.elements} of {node.elements} "
                    f"has rank {child.rank}")
            registered = first_for.get(child.elements)
            if registered is None:
                failures.append(
                    f"closure: piece {child.elements} of {node.elements} "
                    f"is not a listed member")
            elif registered is not child:
                failures.append(
                    f"unique-decomposition: piece {child.elements} of "
                    f"{node.elements} is not the registered member object")
        if not node.children:
            continue
        check = is_increasing_delta_system([c.elements for c in node.children])
        if not check.ok:
            failures.append(f"delta-system: member {node.elements}: {check.violation}")
        elif check.root != node.root:
            failures.append(
                f"root-match: member {node.elements} declares root {node.root} "
                f"but its pieces share {check.root}")
        covered = set()
        for child in node.children:
            covered.update(child.elements)
        if covered != set(node.elements):
            failures.append(
                f"union: member {node.elements} is not the union of its pieces")

    if not scheme.members or scheme.members[0] is not scheme.top:
        failures.append("top-first: the member list does not start at the top")
    if scheme.top.elements != tuple(range(scheme.universe)):
        failures.append(
            f"top-cover: top {scheme.top.elements} does not cover the "
            f"universe of size {scheme.universe}")
    if scheme.top.rank != stype.max_rank:
        failures.append(
            f"top-rank: top has rank {scheme.top.rank}, expected {stype.max_rank}")
    return Report(tuple(failures))


def occurrence_counts(scheme: ConstructionScheme) -> dict[int, int]:
    """How often each rank occurs in the full decomposition walk.

    A piece below several parents is counted once per occurrence, so
    the count at rank k is the product of the block counts above k.
    """
    counts: Counter[int] = Counter()

    def walk(node: SchemeNode) -> None:
        counts[node.rank] += 1
        for child in node.children:
            walk(child)

    walk(scheme.top)
    return dict(counts)


def distinct_counts(scheme: ConstructionScheme) -> dict[int, int]:
    return dict(Counter(node.rank for node in scheme.members))
