"""Command line front end.

Subcommands: gen builds a scheme from its arities, tree and gap run
the two recursions over a stored scheme, verify re-checks any artifact
from scratch, gapcheck runs the brute-force gap searches, and captures
lists the captured tuples of a scheme. All artifacts are canonical
JSON, stdout carries only artifacts, chatter goes to stderr and is
silenced by --json. Exit codes: 0 clean, 1 verification found
failures, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .capture import enumerate_captured_tuples
from .core import (Report, SchemeType, generate_tower_scheme, validate_type,
                   verify_scheme)
from .gapanalysis import (ramsey_pair_search, s_pair_search, t_pair_search,
                          union_splitter)
from .gapsides import (build_sides, capture_gap_consequences,
                       check_side_invariants)
from .jsonio import (dumps_canonical, family_from_artifact,
                     gap_family_from_obj, labels_from_obj, labels_to_obj,
                     parse_artifact, report_to_obj, scheme_from_obj,
                     scheme_to_obj, sides_from_obj, sides_to_obj,
                     stats_to_obj, type_from_obj)
from .treelabels import (build_labels, build_tree, capture_tree_consequences,
                         check_label_invariants, export_tree_dot)

# a wildly broken artifact should not overflow the 8-bit exit status
VERIFY_EXIT_CAP = 100


def _comma_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}")


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write_text(dest: Optional[str], text: str) -> None:
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def _say(args, message: str) -> None:
    if not args.json:
        print(message, file=sys.stderr)


def _say_failures(args, failures) -> None:
    shown = failures if args.verbose else failures[:10]
    for line in shown:
        _say(args, line)
    if len(failures) > len(shown):
        _say(args, f"... and {len(failures) - len(shown)} more")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltascheme",
        description="build, verify and analyze finite construction schemes")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None,
                       help="output file ('-' or omitted: stdout)")
        p.add_argument("--json", action="store_true",
                       help="artifact only, no stderr chatter")
        p.add_argument("-v", "--verbose", action="store_true",
                       help="show every failure line")

    p_gen = sub.add_parser("gen", help="generate a scheme from its arities")
    p_gen.add_argument("--n", type=_comma_ints, required=True,
                       help="piece counts per rank, comma separated")
    p_gen.add_argument("--r", type=_comma_ints, required=True,
                       help="root sizes per rank, comma separated")
    common(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_tree = sub.add_parser("tree", help="label a scheme and emit the labels")
    p_tree.add_argument("scheme", help="construction_scheme artifact")
    p_tree.add_argument("--dot", default=None,
                        help="also write the branch tree as graphviz")
    common(p_tree)
    p_tree.set_defaults(func=cmd_tree)

    p_gap = sub.add_parser("gap", help="build the side family of a scheme")
    p_gap.add_argument("scheme", help="construction_scheme artifact")
    common(p_gap)
    p_gap.set_defaults(func=cmd_gap)

    p_verify = sub.add_parser("verify", help="re-check any artifact")
    p_verify.add_argument("artifact", help="artifact file of any kind")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_check = sub.add_parser("gapcheck",
                             help="run a brute-force gap search")
    p_check.add_argument("family",
                         help="gap_family or gap_sides artifact")
    p_check.add_argument("--mode", required=True,
                         choices=("ramsey", "s", "t", "split"),
                         help="which search to run")
    p_check.add_argument("--subset", type=_comma_ints, default=None,
                         help="restrict the search to these indices")
    common(p_check)
    p_check.set_defaults(func=cmd_gapcheck)

    p_cap = sub.add_parser("captures",
                           help="list the captured tuples of a scheme")
    p_cap.add_argument("scheme", help="construction_scheme artifact")
    p_cap.add_argument("--n", type=int, required=True,
                       help="how many pieces each capture uses")
    common(p_cap)
    p_cap.set_defaults(func=cmd_captures)

    return parser


def cmd_gen(args) -> int:
    stype = SchemeType.from_arities(args.n, args.r)
    problems = validate_type(stype)
    if problems:
        for line in problems:
            print(f"invalid type: {line}", file=sys.stderr)
        return 2
    scheme = generate_tower_scheme(stype)
    _write_text(args.out, dumps_canonical(scheme_to_obj(scheme)))
    _say(args, f"scheme of universe {scheme.universe} with "
               f"{len(scheme.members)} members")
    return 0


def _load_scheme(args):
    """Parse and verify the scheme artifact named by args.scheme.
    Returns (scheme, exit_code); scheme is None when exit_code is set."""
    kind, parsed = parse_artifact(_read_text(args.scheme))
    if kind != "construction_scheme":
        print(f"error: expected a construction_scheme artifact, got {kind}",
              file=sys.stderr)
        return None, 2
    report = verify_scheme(parsed)
    if report.failures:
        _say_failures(args, report.failures)
        _say(args, f"scheme has {len(report.failures)} failures")
        return None, 1
    return parsed, 0


def cmd_tree(args) -> int:
    scheme, code = _load_scheme(args)
    if scheme is None:
        return code
    labeled = build_labels(scheme)
    _write_text(args.out, dumps_canonical(labels_to_obj(labeled)))
    if args.dot is not None:
        _write_text(args.dot, export_tree_dot(build_tree(labeled)))
    report = check_label_invariants(labeled)
    if report.failures:
        _say_failures(args, report.failures)
        return 1
    _say(args, f"labeled {len(scheme.members)} members, "
               f"{len(labeled.labels)} label pairs")
    return 0


def cmd_gap(args) -> int:
    scheme, code = _load_scheme(args)
    if scheme is None:
        return code
    sides = build_sides(scheme)
    _write_text(args.out, dumps_canonical(sides_to_obj(sides)))
    report = check_side_invariants(sides)
    if report.failures:
        _say_failures(args, report.failures)
        return 1
    _say(args, f"built side pairs for {len(scheme.members)} members")
    return 0


def cmd_verify(args) -> int:
    try:
        obj = json.loads(_read_text(args.artifact))
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("an artifact must be a JSON object")
    kind = obj.get("kind")

    sections: list[tuple[str, Report]] = []
    consequence_stats = None
    if kind == "construction_scheme":
        sections.append(("scheme", verify_scheme(scheme_from_obj(obj))))
    elif kind == "tree_labels":
        labeled = labels_from_obj(obj)
        rep = capture_tree_consequences(labeled)
        sections.append(("scheme", verify_scheme(labeled.scheme)))
        sections.append(("labels", check_label_invariants(labeled)))
        sections.append(("tree-consequences",
                         Report(rep.pairs.violations + rep.triples.violations)))
        consequence_stats = {"pairs": stats_to_obj(rep.pairs),
                             "triples": stats_to_obj(rep.triples)}
    elif kind == "gap_sides":
        sides = sides_from_obj(obj)
        rep = capture_gap_consequences(sides)
        sections.append(("scheme", verify_scheme(sides.scheme)))
        sections.append(("sides", check_side_invariants(sides)))
        sections.append(("gap-consequences",
                         Report(rep.pairs.violations + rep.triples.violations)))
        consequence_stats = {"pairs": stats_to_obj(rep.pairs),
                             "triples": stats_to_obj(rep.triples)}
    elif kind == "gap_family":
        try:
            gap_family_from_obj(obj)
            sections.append(("family", Report()))
        except ValueError as exc:
            sections.append(("family", Report((f"family: {exc}",))))
    elif kind == "scheme_type":
        try:
            stype = type_from_obj(obj)
            sections.append(("type", Report(tuple(validate_type(stype)))))
        except ValueError as exc:
            sections.append(("type", Report((str(exc),))))
    else:
        raise ValueError(f"unknown artifact kind: {kind!r}")

    failure_total = sum(len(report.failures) for _, report in sections)
    out_obj = {
        "kind": "verification_report",
        "artifact": kind,
        "sections": [dict(report_to_obj(report), name=name)
                     for name, report in sections],
        "failure_total": failure_total,
    }
    if consequence_stats is not None:
        out_obj["consequence_stats"] = consequence_stats
    _write_text(args.out, dumps_canonical(out_obj))
    for name, report in sections:
        _say_failures(args, [f"{name}: {line}" for line in report.failures])
    _say(args, f"{failure_total} failures across {len(sections)} sections")
    return min(failure_total, VERIFY_EXIT_CAP)


def cmd_gapcheck(args) -> int:
    family = family_from_artifact(_read_text(args.family))
    subset = args.subset
    out = {
        "kind": "gapcheck_result",
        "mode": args.mode,
        "subset": list(subset) if subset is not None else None,
    }
    if args.mode == "split":
        sub = subset if subset is not None else family.indices
        report = union_splitter(family, sub)
        out["c"] = sorted(report.c)
        out["rows"] = [{
            "index": row.index,
            "a_minus_c": sorted(row.a_minus_c),
            "c_meets_b": sorted(row.c_meets_b),
        } for row in report.rows]
        _say(args, f"union of {len(sub)} a-sides has {len(report.c)} points")
    else:
        search = {"ramsey": ramsey_pair_search,
                  "s": s_pair_search,
                  "t": t_pair_search}[args.mode]
        witness = search(family, subset)
        out["witness"] = list(witness) if witness is not None else None
        _say(args, f"witness: {witness}" if witness else "no witness")
    _write_text(args.out, dumps_canonical(out))
    return 0


def cmd_captures(args) -> int:
    kind, parsed = parse_artifact(_read_text(args.scheme))
    if kind != "construction_scheme":
        print(f"error: expected a construction_scheme artifact, got {kind}",
              file=sys.stderr)
        return 2
    tuples = enumerate_captured_tuples(parsed, args.n)
    index = {id(node): i for i, node in enumerate(parsed.members)}
    rows = [{
        "node": index[id(node)],
        "node_elements": list(node.elements),
        "indices": list(tup),
    } for node, tup in tuples]
    obj = {"kind": "capture_list", "n": args.n,
           "count": len(rows), "tuples": rows}
    _write_text(args.out, dumps_canonical(obj))
    _say(args, f"{len(rows)} captured tuples")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
