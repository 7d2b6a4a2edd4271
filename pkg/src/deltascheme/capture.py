"""Capture of small set families inside scheme members.

A member with pieces P_0, ..., P_{n-1} captures a delta-system
D_0, ..., D_{n-1} when the family's root sits inside the member's root,
D_0 minus the root sits in the free part of the first piece, and each
later D_i is the image of D_0 under the order isomorphism P_0 -> P_i.
The canonical examples are the tuples harvested straight from the free
part of the first piece.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import ConstructionScheme, DeltaSystem, SchemeNode


@dataclass(frozen=True, eq=False)
class CaptureWitness:
    node: SchemeNode
    captured: DeltaSystem
    block_count: int


def check_capture_witness(node: SchemeNode, captured: DeltaSystem,
                          block_count: int) -> list[str]:
    """Verify one capture claim. Returns the problems found, empty when
    the member really captures the family with this many pieces."""
    problems: list[str] = []
    if len(node.children) < block_count:
        problems.append(
            f"member {node.elements} has {len(node.children)} pieces, "
            f"needs {block_count}")
        return problems
    if len(captured.members) != block_count:
        problems.append(
            f"family has {len(captured.members)} sets, expected {block_count}")
        return problems
    if not set(captured.root) <= set(node.root):
        problems.append(
            f"family root {captured.root} is not inside the member root "
            f"{node.root}")
        return problems
    first_piece = node.children[0]
    free = set(first_piece.elements) - set(node.root)
    first = captured.members[0]
    if not set(first) - set(node.root) <= free:
        problems.append(
            f"first set {first} does not sit in the free part of the "
            f"first piece {first_piece.elements}")
        return problems
    for i in range(1, block_count):
        iso = node.child_iso(i)
        image = tuple(iso.apply(x) for x in first)
        if captured.members[i] != image:
            problems.append(
                f"piece {i} holds {captured.members[i]}, expected the "
                f"image {image}")
    return problems


def find_captures(scheme: ConstructionScheme, family: DeltaSystem,
                  n_wanted: int) -> tuple[CaptureWitness, ...]:
    """Scan every member for a captured subfamily of the given size.

    Subfamilies are tried in index order and the first hit per member is
    kept, so the result is deterministic.
    """
    if n_wanted < 1:
        raise ValueError("need at least one piece")
    if n_wanted > len(family.members):
        raise ValueError(
            f"cannot capture {n_wanted} sets out of {len(family.members)}")
    witnesses: list[CaptureWitness] = []
    for node in _nodes_with_children(scheme):
        for combo in combinations(range(len(family.members)), n_wanted):
            sub = DeltaSystem(tuple(family.members[i] for i in combo),
                              family.root)
            if not check_capture_witness(node, sub, n_wanted):
                witnesses.append(CaptureWitness(node, sub, n_wanted))
                break
    return tuple(witnesses)


def enumerate_captured_tuples(
        scheme: ConstructionScheme,
        n: int) -> tuple[tuple[SchemeNode, tuple[int, ...]], ...]:
    """All singleton tuples a member captures with its first n pieces:
    one per element of the first piece's free part, paired with its
    images in the following pieces."""
    if n < 2:
        raise ValueError("captured tuples need at least two pieces")
    out: list[tuple[SchemeNode, tuple[int, ...]]] = []
    for node in _nodes_with_children(scheme):
        if len(node.children) < n:
            continue
        isos = [node.child_iso(i) for i in range(n)]
        rootset = set(node.root)
        for element in node.children[0].elements:
            if element in rootset:
                continue
            out.append((node, tuple(iso.apply(element) for iso in isos)))
    return tuple(out)


def _nodes_with_children(scheme: ConstructionScheme) -> list[SchemeNode]:
    return sorted((node for node in scheme.members if node.children),
                  key=lambda node: node.elements)


@dataclass(frozen=True)
class ConsequenceStats:
    """Tally of named claims over a batch of checks."""

    total: int
    satisfied: int
    claim_counts: tuple[tuple[str, int, int], ...]
    violations: tuple[str, ...]

    @property
    def all_satisfied(self) -> bool:
        return self.satisfied == self.total


def tally_consequences(
        rows: Iterable[tuple[str, dict[str, bool]]]) -> ConsequenceStats:
    """Aggregate (label, {claim: holds}) rows into per-claim counts and
    one violation line per row with a failed claim."""
    total = 0
    satisfied = 0
    good: dict[str, int] = {}
    bad: dict[str, int] = {}
    violations: list[str] = []
    for label, claims in rows:
        total += 1
        failed = sorted(name for name, holds in claims.items() if not holds)
        for name, holds in claims.items():
            bucket = good if holds else bad
            bucket[name] = bucket.get(name, 0) + 1
        if failed:
            violations.append(f"{label}: failed {', '.join(failed)}")
        else:
            satisfied += 1
    names = sorted(set(good) | set(bad))
    counts = tuple((name, good.get(name, 0), bad.get(name, 0)) for name in names)
    return ConsequenceStats(total, satisfied, counts, tuple(violations))
