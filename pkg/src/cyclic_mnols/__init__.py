"""Enumeration and classification of cyclic mutually nearly orthogonal Latin squares."""

from cyclic_mnols.actions import CyclicIsotopism, apply, reduce_to_first
from cyclic_mnols.canonical import (
    MnolsType,
    Scope,
    StabilizerCounts,
    canonical_form,
    classify_type,
    is_list_canonical,
    is_set_canonical,
    is_set_reduced,
    stabilizer_counts,
)
from cyclic_mnols.core import (
    Cmp,
    UsageError,
    check_order,
    compare_columns,
    compare_lists,
    difference_multiset,
    expand,
    format_column,
    format_list,
    identity,
    is_mnols_list,
    nearly_orthogonal,
    parse_column,
    parse_list,
)

__version__ = "0.1.0"

__all__ = [
    "Cmp",
    "CyclicIsotopism",
    "MnolsType",
    "Scope",
    "StabilizerCounts",
    "apply",
    "canonical_form",
    "classify_type",
    "is_list_canonical",
    "is_set_canonical",
    "is_set_reduced",
    "reduce_to_first",
    "stabilizer_counts",
    "UsageError",
    "check_order",
    "compare_columns",
    "compare_lists",
    "difference_multiset",
    "expand",
    "format_column",
    "format_list",
    "identity",
    "is_mnols_list",
    "nearly_orthogonal",
    "parse_column",
    "parse_list",
]
