from .field import QQ, FieldDescriptor, is_prime
from .groebner import (
    BaseSubmodule,
    groebner,
    groebner_basis,
    kernel_of_map,
    kernel_vectors,
    normal_form,
    saturate_irrelevant,
    saturation_vectors,
    step_budget,
)
from .local import PieceModule, direct_sum, subquotient, torsion_presentation, truncated_dimension
from .vectors import BlockElimination, DegRevLexTOP, LazardOrder

__all__ = [
    "QQ",
    "FieldDescriptor",
    "is_prime",
    "BaseSubmodule",
    "groebner",
    "groebner_basis",
    "kernel_of_map",
    "kernel_vectors",
    "normal_form",
    "saturate_irrelevant",
    "saturation_vectors",
    "step_budget",
    "PieceModule",
    "direct_sum",
    "subquotient",
    "torsion_presentation",
    "truncated_dimension",
    "BlockElimination",
    "DegRevLexTOP",
    "LazardOrder",
]
