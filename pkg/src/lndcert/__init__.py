"""Exact certificates for locally nilpotent derivations on finitely generated
subalgebras of polynomial rings over rational function fields."""

__version__ = "0.1.0"

from .poly import Poly, RatFunc, VarTable  # noqa: E402
from .derivation import Algebra, Derivation  # noqa: E402
from .dsl import parse_model, print_model  # noqa: E402
from .runner import run  # noqa: E402

__all__ = ["Poly", "RatFunc", "VarTable", "Algebra", "Derivation", "parse_model", "print_model", "run",
           "__version__"]
