"""Topological expansion of expectations, with exact and Monte Carlo cross-checks."""

from .compare import ComparisonReport, as_float_array, compare_mc
from .engine import (
    ExpansionEngine,
    ExpansionResult,
    ExpansionTerm,
    PartialSum,
    ResidualGroup,
    evaluate,
    evaluate_with_infinity,
    format_value,
    leading_terms,
    moment_oracle,
    term_ledger,
)
from .montecarlo import mc_expectation
from .oracles import (
    ColourExpansion,
    exact_expectation,
    haar_component_moment,
    haar_projection_moment,
    wick_exact_gaussian,
)
from .spec import (
    IDENTITY_COLOUR,
    ExpressionSpec,
    Shape,
    SpecModel,
    YMode,
    spec_from_json,
    spec_to_json,
    with_identity_colour,
)

__all__ = [
    "IDENTITY_COLOUR",
    "ColourExpansion",
    "ComparisonReport",
    "ExpansionEngine",
    "ExpansionResult",
    "ExpansionTerm",
    "ExpressionSpec",
    "PartialSum",
    "ResidualGroup",
    "Shape",
    "SpecModel",
    "YMode",
    "as_float_array",
    "compare_mc",
    "evaluate",
    "evaluate_with_infinity",
    "exact_expectation",
    "format_value",
    "haar_component_moment",
    "haar_projection_moment",
    "leading_terms",
    "mc_expectation",
    "moment_oracle",
    "spec_from_json",
    "spec_to_json",
    "term_ledger",
    "wick_exact_gaussian",
    "with_identity_colour",
]
