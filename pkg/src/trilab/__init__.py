"""Exact computations around perfect 3-hash (trifferent) linear codes over F_3."""

from .errors import TrilabError
from .f3core import AffineHyperplane, F3Vector, GeneratorBasis, rref
from .dualgeom import SymmetricSet
from .trifference import is_perfect_3hash_set, is_trifferent_linear, max_trifferent_dimension

__all__ = [
    "AffineHyperplane",
    "F3Vector",
    "GeneratorBasis",
    "SymmetricSet",
    "TrilabError",
    "is_perfect_3hash_set",
    "is_trifferent_linear",
    "max_trifferent_dimension",
    "rref",
]
