"""deltascheme: a desk-scale engine for finite construction schemes.

Generate ranked delta-system families from a small arithmetic type,
re-verify them from scratch, run the two canonical recursions over
them (binary tree labels and two-sided gap families), and analyze the
resulting finite gaps with brute-force searches. Everything is
deterministic and serializes to canonical JSON artifacts.
"""

from .capture import (CaptureWitness, ConsequenceStats, check_capture_witness,
                      enumerate_captured_tuples, find_captures,
                      tally_consequences)
from .core import (ConstructionScheme, DeltaSystem, OrderIso, Report,
                   SchemeNode, SchemeType, distinct_counts,
                   generate_tower_scheme, is_increasing_delta_system,
                   occurrence_counts, order_iso, transport, validate_type,
                   verify_scheme)
from .gapanalysis import (AntichainResult, FiniteGapFamily, SplitterReport,
                          is_s_condition, is_t_condition, make_gap_family,
                          max_antichain_search, ramsey_pair_search,
                          s_pair_search, s_poset_compatible, t_pair_search,
                          t_poset_compatible, union_splitter)
from .gapsides import (LimitGapFamily, SideFamily, SidePair, build_sides,
                       capture_gap_consequences, check_side_invariants,
                       limit_family, point_budget)
from .jsonio import dumps_canonical, family_from_artifact, parse_artifact
from .treelabels import (BranchFunction, LabeledScheme, LabelPair, TreeApprox,
                         all_branches, branch, build_labels, build_tree,
                         capture_tree_consequences, check_label_invariants,
                         export_tree_dot)

__version__ = "0.1.0"

__all__ = [
    "AntichainResult", "BranchFunction", "CaptureWitness",
    "ConsequenceStats", "ConstructionScheme", "DeltaSystem",
    "FiniteGapFamily", "LabelPair", "LabeledScheme", "LimitGapFamily",
    "OrderIso", "Report", "SchemeNode", "SchemeType", "SideFamily",
    "SidePair", "SplitterReport", "TreeApprox", "all_branches", "branch",
    "build_labels", "build_sides", "build_tree", "capture_gap_consequences",
    "capture_tree_consequences", "check_capture_witness",
    "check_label_invariants", "check_side_invariants", "distinct_counts",
    "dumps_canonical", "enumerate_captured_tuples", "export_tree_dot",
    "family_from_artifact", "find_captures", "generate_tower_scheme",
    "is_increasing_delta_system", "is_s_condition", "is_t_condition",
    "limit_family", "make_gap_family", "max_antichain_search",
    "occurrence_counts", "order_iso", "parse_artifact", "point_budget",
    "ramsey_pair_search", "s_pair_search", "s_poset_compatible",
    "t_pair_search", "t_poset_compatible", "tally_consequences", "transport",
    "union_splitter", "validate_type", "verify_scheme",
]
