"""Table algebras: axioms, closed subsets, quotients, characters and products."""

__version__ = "0.1.0"

from .algebra import AlgebraElement, TableAlgebra, validate  # noqa: E402
from .characters import character_table, decompose, dual_form  # noqa: E402
from .formats import load  # noqa: E402
from .subsets import ClosedSubset, closure, quotient  # noqa: E402

__all__ = [
    "AlgebraElement",
    "ClosedSubset",
    "TableAlgebra",
    "character_table",
    "closure",
    "decompose",
    "dual_form",
    "load",
    "quotient",
    "validate",
]
