"""Binary labels along scheme members and the branch tree they span.

Every member carries, for each of its elements, a pair of bit patterns
over the member: a low pattern that is 0 exactly at the element's own
position within its block, and a high pattern that is 1 there. The
patterns are built by one recursion from the rank-0 seed (0,)/(1,):
a root element copies its pattern from the first piece into every
block, and a non-root element in block b tiles low and high copies of
its pullback pattern around block b, with the roles swapped on odd
blocks. Reading the low pattern of the top member below an element
yields a branch function; the set of all restrictions of branches is a
finite tree ordered by end-extension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capture import (ConsequenceStats, enumerate_captured_tuples,
                      tally_consequences)
from .core import ConstructionScheme, Report, SchemeNode, verify_scheme

Bits = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class LabelPair:
    node: SchemeNode
    element: int
    low: Bits
    high: Bits

    def low_map(self) -> dict[int, int]:
        return dict(zip(self.node.elements, self.low))

    def high_map(self) -> dict[int, int]:
        return dict(zip(self.node.elements, self.high))


@dataclass(frozen=True, eq=False)
class LabeledScheme:
    scheme: ConstructionScheme
    labels: dict[tuple[tuple[int, ...], int], LabelPair]

    def pair(self, node: SchemeNode, element: int) -> LabelPair:
        return self.labels[(node.elements, element)]


def build_labels(scheme: ConstructionScheme) -> LabeledScheme:
    """Run the label recursion bottom-up over a verified scheme."""
    report = verify_scheme(scheme)
    if report.failures:
        raise ValueError(f"scheme fails verification: {report.failures[0]}")
    labels: dict[tuple[tuple[int, ...], int], LabelPair] = {}
    for node in sorted(scheme.members, key=lambda n: (n.rank, n.elements)):
        if node.rank == 0:
            element = node.elements[0]
            labels[(node.elements, element)] = LabelPair(node, element, (0,), (1,))
            continue
        rlen = len(node.root)
        blocks = len(node.children)
        width = node.block_width
        child0 = node.children[0]
        for pos, element in enumerate(node.elements):
            if pos < rlen:
                base = labels[(child0.elements, element)]
                low = base.low[:rlen] + base.low[rlen:] * blocks
                high = base.high[:rlen] + base.high[rlen:] * blocks
            else:
                b, offset = divmod(pos - rlen, width)
                base = labels[(child0.elements, child0.elements[rlen + offset])]
                head = base.low[:rlen]
                lowblk = base.low[rlen:]
                highblk = base.high[rlen:]
                if b % 2 == 0:
                    low = head + lowblk * (b + 1) + highblk * (blocks - b - 1)
                    high = head + lowblk * b + highblk * (blocks - b)
                else:
                    low = head + highblk * b + lowblk * (blocks - b)
                    high = head + highblk * (b + 1) + lowblk * (blocks - b - 1)
            labels[(node.elements, element)] = LabelPair(node, element, low, high)
    return LabeledScheme(scheme, labels)


@dataclass(frozen=True)
class BranchFunction:
    """The 0/1 values an element induces on everything below it."""

    element: int
    bits: Bits

    def value(self, gamma: int) -> int:
        return self.bits[gamma]

    def restricted(self, depth: int) -> Bits:
        return self.bits[:depth]


def branch(labeled: LabeledScheme, element: int) -> BranchFunction:
    scheme = labeled.scheme
    if not 0 <= element < scheme.universe:
        raise ValueError(
            f"element {element} outside the universe of {scheme.universe}")
    pair = labeled.pair(scheme.top, element)
    pos = scheme.top.position(element)
    return BranchFunction(element, pair.low[:pos])


def all_branches(labeled: LabeledScheme) -> tuple[BranchFunction, ...]:
    return tuple(branch(labeled, element)
                 for element in labeled.scheme.top.elements)


@dataclass(frozen=True)
class TreeApprox:
    """All restrictions of the branch functions, as a finite tree under
    end-extension."""

    nodes: tuple[Bits, ...]

    def edges(self) -> tuple[tuple[Bits, Bits], ...]:
        return tuple((bits[:-1], bits) for bits in self.nodes if bits)

    def check(self) -> Report:
        present = set(self.nodes)
        failures = tuple(
            f"restriction-closed: {bits} is present without {bits[:-1]}"
            for bits in self.nodes if bits and bits[:-1] not in present)
        return Report(failures)


def build_tree(labeled: LabeledScheme) -> TreeApprox:
    seen: set[Bits] = set()
    for fn in all_branches(labeled):
        for depth in range(len(fn.bits) + 1):
            seen.add(fn.bits[:depth])
    return TreeApprox(tuple(sorted(seen, key=lambda bits: (len(bits), bits))))


def export_tree_dot(tree: TreeApprox) -> str:
    """Graphviz rendering of the branch tree."""
    lines = ["digraph branch_tree {"]
    for bits in tree.nodes:
        name = "b" + "".join(str(bit) for bit in bits)
        label = "".join(str(bit) for bit in bits) or "root"
        lines.append(f'  {name} [label="{label}"];')
    for parent, child in tree.edges():
        parent_name = "b" + "".join(str(bit) for bit in parent)
        child_name = "b" + "".join(str(bit) for bit in child)
        lines.append(f"  {parent_name} -> {child_name};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def check_label_invariants(labeled: LabeledScheme) -> Report:
    """Re-check the label family against its defining constraints.

    Failures: domain coverage, the 0/1 values at the element's own
    position, low and high agreeing outside the element's block,
    positional agreement of sibling pieces (iso-coherence), parents
    restricting to their pieces (extension-coherence), and agreement
    with the top-level branch readings. A flag is raised when members
    of equal rank disagree positionally across different parents.
    """
    scheme = labeled.scheme
    labels = labeled.labels
    failures: list[str] = []
    flags: list[str] = []

    expected = {(node.elements, element)
                for node in scheme.members for element in node.elements}
    present = set(labels)
    for elements, element in sorted(expected - present):
        failures.append(
            f"domain: missing label pair for member {elements} element {element}")
    for elements, element in sorted(present - expected):
        failures.append(
            f"domain: unexpected label pair for {elements} element {element}")

    def usable(node: SchemeNode, element: int) -> LabelPair | None:
        pair = labels.get((node.elements, element))
        if pair is None:
            return None
        if len(pair.low) != len(node.elements) or \
                len(pair.high) != len(node.elements):
            return None
        return pair

    for node in scheme.members:
        for pos, element in enumerate(node.elements):
            pair = labels.get((node.elements, element))
            if pair is None:
                continue
            if len(pair.low) != len(node.elements) or \
                    len(pair.high) != len(node.elements):
                failures.append(
                    f"domain: pair for {node.elements} element {element} "
                    f"has the wrong length")
                continue
            if pair.low[pos] != 0 or pair.high[pos] != 1:
                failures.append(
                    f"value-at-element: member {node.elements} element "
                    f"{element} has low {pair.low[pos]}, high {pair.high[pos]} "
                    f"at its own position")
            if node.rank > 0 and pos >= len(node.root):
                width = node.block_width
                block = (pos - len(node.root)) // width
                start = len(node.root) + block * width
                for q in range(len(node.elements)):
                    if pair.low[q] != pair.high[q] and not start <= q < start + width:
                        failures.append(
                            f"own-block: member {node.elements} element "
                            f"{element} splits at position {q} outside its block")
                        break

    for node in scheme.members:
        if not node.children:
            continue
        child0 = node.children[0]
        for child in node.children[1:]:
            for t in range(len(child0.elements)):
                left = usable(child0, child0.elements[t])
                right = usable(child, child.elements[t])
                if left is None or right is None:
                    continue
                if left.low != right.low or left.high != right.high:
                    failures.append(
                        f"iso-coherence: pieces {child0.elements} and "
                        f"{child.elements} of {node.elements} disagree at "
                        f"position {t}")
                    break
        for child in node.children:
            positions = [node.elements.index(y) for y in child.elements]
            for element in child.elements:
                parent_pair = usable(node, element)
                child_pair = usable(child, element)
                if parent_pair is None or child_pair is None:
                    continue
                low_cut = tuple(parent_pair.low[q] for q in positions)
                high_cut = tuple(parent_pair.high[q] for q in positions)
                if (child_pair.low, child_pair.high) != (low_cut, high_cut):
                    failures.append(
                        f"extension-coherence: member {node.elements} element "
                        f"{element} does not restrict to piece {child.elements}")

    top = scheme.top
    for node in scheme.members:
        for pos, element in enumerate(node.elements):
            pair = usable(node, element)
            top_pair = usable(top, element)
            if pair is None or top_pair is None:
                continue
            for q in range(pos):
                gamma = node.elements[q]
                if pair.low[q] != top_pair.low[top.elements.index(gamma)]:
                    failures.append(
                        f"branch-agreement: member {node.elements} element "
                        f"{element} reads {pair.low[q]} at {gamma}, the top "
                        f"branch says {top_pair.low[top.elements.index(gamma)]}")
                    break

    by_rank: dict[int, list[SchemeNode]] = {}
    for node in scheme.members:
        by_rank.setdefault(node.rank, []).append(node)
    for rank, nodes in sorted(by_rank.items()):
        nodes.sort(key=lambda n: n.elements)
        reference = nodes[0]
        for node in nodes[1:]:
            for t in range(len(reference.elements)):
                left = usable(reference, reference.elements[t])
                right = usable(node, node.elements[t])
                if left is None or right is None:
                    continue
                if left.low != right.low or left.high != right.high:
                    flags.append(
                        f"global-iso-coherence: rank-{rank} members "
                        f"{reference.elements} and {node.elements} disagree "
                        f"at position {t}")
                    break

    return Report(tuple(failures), tuple(flags))


@dataclass(frozen=True)
class TreeConsequenceReport:
    pairs: ConsequenceStats
    triples: ConsequenceStats

    @property
    def all_satisfied(self) -> bool:
        return self.pairs.all_satisfied and self.triples.all_satisfied


def capture_tree_consequences(labeled: LabeledScheme) -> TreeConsequenceReport:
    """Evaluate the branch claims on every captured pair and triple.

    For a captured pair (base, second) the claims are that the second
    branch strictly end-extends the base branch and takes the value 1
    at the base. A captured triple (base, second, third) additionally
    asks the third branch to extend the base, to take the value 0 at
    the base, and to split from the second branch there. The extension
    claims do not hold for every captured tuple; the value and split
    claims do.
    """
    scheme = labeled.scheme
    branches = {fn.element: fn.bits for fn in all_branches(labeled)}

    def extends(shorter: Bits, longer: Bits) -> bool:
        return len(shorter) < len(longer) and longer[:len(shorter)] == shorter

    def bit_at(element: int, base: int) -> int | None:
        bits = branches[element]
        return bits[base] if base < len(bits) else None

    pair_rows = []
    for node, tup in enumerate_captured_tuples(scheme, 2):
        base, second = tup
        claims = {
            "base-extends": extends(branches[base], branches[second]),
            "value-one-at-base": bit_at(second, base) == 1,
        }
        pair_rows.append((f"node {node.elements} pair {tup}", claims))

    triple_rows = []
    for node, tup in enumerate_captured_tuples(scheme, 3):
        base, second, third = tup
        claims = {
            "base-extends-second": extends(branches[base], branches[second]),
            "base-extends-third": extends(branches[base], branches[third]),
            "value-one-at-base": bit_at(second, base) == 1,
            "value-zero-at-base": bit_at(third, base) == 0,
            "split-at-base": bit_at(second, base) is not None
            and bit_at(third, base) is not None
            and bit_at(second, base) != bit_at(third, base),
        }
        triple_rows.append((f"node {node.elements} triple {tup}", claims))

    return TreeConsequenceReport(tally_consequences(pair_rows),
                                 tally_consequences(triple_rows))
