"""Exact construction and verification of BiHom-Poisson color algebras."""

from .scalars import GF, QQ, FieldSpec, scalar_parse, scalar_pow, scalar_render
from .grading import (
    Bicharacter,
    FiniteAbelianGroup,
    Multiplier,
    bicharacter_of_multiplier,
    builtin_bicharacter,
    check_bicharacter,
    check_multiplier,
    group_add,
)
from .glinalg import BilinearMap, EvenMap, GradedSpace
from .axioms import (
    ColorAlgebraBundle,
    check_bihom_associative,
    check_bihom_leibniz,
    check_bihom_lie,
    check_bihom_poisson,
    check_commutative,
    check_morphism,
    check_regular,
)
from .reports import CheckReport
from . import constructions, kernels

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldSpec", "scalar_parse", "scalar_pow", "scalar_render",
    "Bicharacter", "FiniteAbelianGroup", "Multiplier", "bicharacter_of_multiplier",
    "builtin_bicharacter", "check_bicharacter", "check_multiplier", "group_add",
    "BilinearMap", "EvenMap", "GradedSpace",
    "ColorAlgebraBundle", "check_bihom_associative", "check_bihom_leibniz", "check_bihom_lie",
    "check_bihom_poisson", "check_commutative", "check_morphism", "check_regular",
    "CheckReport", "constructions", "kernels",
]
