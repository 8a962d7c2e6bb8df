"""Bang calculus workbench: call-by-name and call-by-value λ-calculi, their
embeddings into the bang calculus, level-indexed strategies, and executable
property suites."""

from bangcalc.surface import parse, show
from bangcalc.syntax import (
    BANG,
    BANG_OPLUS,
    CBN,
    CBN_OPLUS,
    CBV,
    CBV_OPLUS,
    CalculusProfile,
    Term,
    alpha_eq,
    free_vars,
    substitute,
    to_canonical,
    validate,
)

__all__ = [
    "BANG",
    "BANG_OPLUS",
    "CBN",
    "CBN_OPLUS",
    "CBV",
    "CBV_OPLUS",
    "CalculusProfile",
    "Term",
    "alpha_eq",
    "free_vars",
    "parse",
    "show",
    "substitute",
    "to_canonical",
    "validate",
]
