"""Graded characters of line-bundle cohomology on the Springer resolution and
explicit SL2 models of exotic and perverse-coherent sheaves."""

from .characters import (
    DecompositionError, StabilizationError, aj_character, alternating_aj_identity, lusztig_q,
    partition_q, weyl_character, weyl_dimension,
)
from .kgroup import KClassExpr, Term, class_character, decompose_into_ic_basis, decompose_into_weyl_basis
from .qalg import LaurentPoly, QCharacter
from .rootdatum import RootDatum, RootDatumError, build_root_datum

__all__ = [
    "DecompositionError", "StabilizationError", "aj_character", "alternating_aj_identity",
    "lusztig_q", "partition_q", "weyl_character", "weyl_dimension", "KClassExpr", "Term",
    "class_character", "decompose_into_ic_basis", "decompose_into_weyl_basis", "LaurentPoly",
    "QCharacter", "RootDatum", "RootDatumError", "build_root_datum",
]
