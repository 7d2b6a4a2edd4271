"""JSON artifact formats.

Every artifact is a JSON object with a "kind" field: scheme types,
construction schemes, label families, side families, and finite gap
families all serialize to plain objects and parse back. Scheme nodes
are stored once in a flat list and referenced by index, so shared
pieces stay shared through a round trip. Label and side artifacts
embed a verification block (recomputed on write, ignored on read) so a
stored artifact documents its own health.
"""

from __future__ import annotations

import json

from .core import ConstructionScheme, Report, SchemeNode, SchemeType
from .gapanalysis import FiniteGapFamily, make_gap_family
from .gapsides import (SideFamily, SidePair, capture_gap_consequences,
                       check_side_invariants)
from .treelabels import (LabeledScheme, LabelPair, capture_tree_consequences,
                         check_label_invariants)


def dumps_canonical(obj) -> str:
    """Canonical text form: sorted keys, two-space indent, one trailing
    newline. Equal objects give byte-equal text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _expect_kind(obj, kind: str) -> None:
    if not isinstance(obj, dict) or obj.get("kind") != kind:
        raise ValueError(f"expected a {kind} object")


def type_to_obj(stype: SchemeType) -> dict:
    return {
        "kind": "scheme_type",
        "max_rank": stype.max_rank,
        "sizes": list(stype.sizes),
        "block_counts": list(stype.block_counts),
        "root_sizes": list(stype.root_sizes),
    }


def type_from_obj(obj) -> SchemeType:
    _expect_kind(obj, "scheme_type")
    stype = SchemeType(tuple(obj["sizes"]), tuple(obj["block_counts"]),
                       tuple(obj["root_sizes"]))
    if stype.max_rank != obj["max_rank"]:
        raise ValueError(f"stored max_rank {obj['max_rank']} does not match "
                         f"the sizes (expected {stype.max_rank})")
    return stype


def scheme_to_obj(scheme: ConstructionScheme) -> dict:
    index = {id(node): i for i, node in enumerate(scheme.members)}
    nodes = [{
        "elements": list(node.elements),
        "rank": node.rank,
        "root": list(node.root),
        "children": [index[id(child)] for child in node.children],
    } for node in scheme.members]
    return {
        "kind": "construction_scheme",
        "type": type_to_obj(scheme.stype),
        "universe": scheme.universe,
        "top": index[id(scheme.top)],
        "nodes": nodes,
    }


def scheme_from_obj(obj) -> ConstructionScheme:
    _expect_kind(obj, "construction_scheme")
    stype = type_from_obj(obj["type"])
    rows = obj["nodes"]
    built: dict[int, SchemeNode] = {}
    in_progress: set[int] = set()

    def build(i) -> SchemeNode:
        if not isinstance(i, int) or not 0 <= i < len(rows):
            raise ValueError(f"child index {i} out of range")
        if i in built:
            return built[i]
        if i in in_progress:
            raise ValueError(f"node {i} is its own ancestor")
        in_progress.add(i)
        row = rows[i]
        node = SchemeNode(tuple(row["elements"]), row["rank"],
                          tuple(row["root"]),
                          tuple(build(j) for j in row["children"]))
        in_progress.discard(i)
        built[i] = node
        return node

    members = tuple(build(i) for i in range(len(rows)))
    top_index = obj["top"]
    if not isinstance(top_index, int) or not 0 <= top_index < len(members):
        raise ValueError(f"top index {top_index} out of range")
    return ConstructionScheme(stype, obj["universe"], members[top_index],
                              members)


def report_to_obj(report: Report) -> dict:
    return {"failures": list(report.failures), "flags": list(report.flags)}


def stats_to_obj(stats) -> dict:
    return {
        "total": stats.total,
        "satisfied": stats.satisfied,
        "claims": {name: [good, bad]
                   for name, good, bad in stats.claim_counts},
        "violations": list(stats.violations),
    }


def _node_indexed_rows(scheme: ConstructionScheme, table):
    """Yield (node_index, node, element, value) sorted by index then
    element, for dict tables keyed (node elements, element)."""
    rows = []
    for i, node in enumerate(scheme.members):
        for element in node.elements:
            value = table.get((node.elements, element))
            if value is not None:
                rows.append((i, node, element, value))
    return rows


def labels_to_obj(labeled: LabeledScheme) -> dict:
    scheme = labeled.scheme
    rows = []
    for i, node, element, pair in _node_indexed_rows(scheme, labeled.labels):
        rows.append({
            "node": i,
            "element": element,
            "low": [[gamma, bit] for gamma, bit in zip(node.elements, pair.low)],
            "high": [[gamma, bit]
                     for gamma, bit in zip(node.elements, pair.high)],
        })
    consequences = capture_tree_consequences(labeled)
    return {
        "kind": "tree_labels",
        "scheme": scheme_to_obj(scheme),
        "labels": rows,
        "verification": {
            "invariants": report_to_obj(check_label_invariants(labeled)),
            "consequences": {
                "pairs": stats_to_obj(consequences.pairs),
                "triples": stats_to_obj(consequences.triples),
            },
        },
    }


def _bits_from_pairs(node: SchemeNode, pairs) -> tuple[int, ...]:
    mapping = {}
    for gamma, bit in pairs:
        mapping[gamma] = bit
    if len(pairs) != len(node.elements) or \
            set(mapping) != set(node.elements):
        raise ValueError(
            f"label row does not cover member {node.elements} exactly")
    return tuple(mapping[gamma] for gamma in node.elements)


def labels_from_obj(obj) -> LabeledScheme:
    _expect_kind(obj, "tree_labels")
    scheme = scheme_from_obj(obj["scheme"])
    labels: dict[tuple[tuple[int, ...], int], LabelPair] = {}
    for row in obj["labels"]:
        i = row["node"]
        if not isinstance(i, int) or not 0 <= i < len(scheme.members):
            raise ValueError(f"label row points at missing node {i}")
        node = scheme.members[i]
        element = row["element"]
        labels[(node.elements, element)] = LabelPair(
            node, element,
            _bits_from_pairs(node, row["low"]),
            _bits_from_pairs(node, row["high"]))
    return LabeledScheme(scheme, labels)


def sides_to_obj(sides: SideFamily) -> dict:
    scheme = sides.scheme
    rows = []
    for i, node, element, pair in _node_indexed_rows(scheme, sides.pairs):
        rows.append({
            "node": i,
            "element": element,
            "a_side": sorted(pair.a_side),
            "b_side": sorted(pair.b_side),
        })
    top = scheme.top
    limit = []
    for element in top.elements:
        pair = sides.pairs.get((top.elements, element))
        if pair is None:
            continue
        limit.append({
            "element": element,
            "a_side": sorted(pair.a_side),
            "b_side": sorted(pair.b_side),
        })
    consequences = capture_gap_consequences(sides)
    return {
        "kind": "gap_sides",
        "scheme": scheme_to_obj(scheme),
        "pairs": rows,
        "point_budgets": list(sides.point_budgets),
        "limit": limit,
        "verification": {
            "invariants": report_to_obj(check_side_invariants(sides)),
            "consequences": {
                "pairs": stats_to_obj(consequences.pairs),
                "triples": stats_to_obj(consequences.triples),
            },
        },
    }


def sides_from_obj(obj) -> SideFamily:
    _expect_kind(obj, "gap_sides")
    scheme = scheme_from_obj(obj["scheme"])
    pairs: dict[tuple[tuple[int, ...], int], SidePair] = {}
    for row in obj["pairs"]:
        i = row["node"]
        if not isinstance(i, int) or not 0 <= i < len(scheme.members):
            raise ValueError(f"side row points at missing node {i}")
        node = scheme.members[i]
        element = row["element"]
        pairs[(node.elements, element)] = SidePair(
            node, element, frozenset(row["a_side"]), frozenset(row["b_side"]))
    return SideFamily(scheme, pairs, tuple(obj["point_budgets"]))


def gap_family_to_obj(family: FiniteGapFamily) -> dict:
    return {
        "kind": "gap_family",
        "entries": [{
            "index": i,
            "a_side": sorted(family.a_side[i]),
            "b_side": sorted(family.b_side[i]),
        } for i in family.indices],
    }


def gap_family_from_obj(obj) -> FiniteGapFamily:
    _expect_kind(obj, "gap_family")
    return make_gap_family((row["index"], row["a_side"], row["b_side"])
                           for row in obj["entries"])


PARSERS = {
    "construction_scheme": scheme_from_obj,
    "tree_labels": labels_from_obj,
    "gap_sides": sides_from_obj,
    "gap_family": gap_family_from_obj,
    "scheme_type": type_from_obj,
}


def parse_artifact(text: str):
    """Parse any artifact text; returns (kind, parsed object)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("an artifact must be a JSON object")
    kind = obj.get("kind")
    parser = PARSERS.get(kind)
    if parser is None:
        raise ValueError(f"unknown artifact kind: {kind!r}")
    return kind, parser(obj)


def family_from_artifact(text: str) -> FiniteGapFamily:
    """Read a finite gap family out of an artifact: either a gap_family
    itself or the limit rows of a gap_sides artifact."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("an artifact must be a JSON object")
    kind = obj.get("kind")
    if kind == "gap_family":
        return gap_family_from_obj(obj)
    if kind == "gap_sides":
        return make_gap_family((row["element"], row["a_side"], row["b_side"])
                               for row in obj["limit"])
    raise ValueError(f"no gap family inside a {kind!r} artifact")
