"""Multidimensional combinatorial substitutions.

Cells, patterns and substitutions live in :mod:`combsub.core` and
:mod:`combsub.substitution`; the decision procedures for domino-complete
substitutions are in :mod:`combsub.decide`, the Wang-tile constructions in
:mod:`combsub.wang`, and the bundled examples in :mod:`combsub.corpus`.
"""

from .core import Cell, CollisionError, DimensionError, Domino, Pattern, classify_domino, merge_checked, support, translate
from .substitution import (
    Consistent,
    Inconsistent,
    NonOverlapping,
    NotCoveredError,
    Overlapping,
    Rule,
    Substitution,
    apply,
    check_consistent_on,
    check_nonoverlapping_on,
    cover_graph,
    enumerate_simple_loops,
    image_vector,
    is_covered,
    is_domino_to_domino,
    is_valid_path,
    iterate,
    sigma_rule,
    starting_patterns,
    validate,
)

__all__ = [
    "Cell",
    "CollisionError",
    "DimensionError",
    "Domino",
    "Pattern",
    "classify_domino",
    "merge_checked",
    "support",
    "translate",
    "Consistent",
    "Inconsistent",
    "NonOverlapping",
    "NotCoveredError",
    "Overlapping",
    "Rule",
    "Substitution",
    "apply",
    "check_consistent_on",
    "check_nonoverlapping_on",
    "cover_graph",
    "enumerate_simple_loops",
    "image_vector",
    "is_covered",
    "is_domino_to_domino",
    "is_valid_path",
    "iterate",
    "sigma_rule",
    "starting_patterns",
    "validate",
]

__version__ = "0.1.0"
