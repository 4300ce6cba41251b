from .derived import (
    ColonModule,
    GrModule,
    IdealFiltration,
    ImageAlgebra,
    ModulePairSpec,
    QuotientModule,
    SubmoduleGenerated,
    TorsionModule,
    colon_element_piece,
    locally_contains,
    power_piece,
    quotient_by_element,
    quotient_piece,
    rees_algebra,
    torsion_piece,
)
from .parse import PolyRing, format_polynomial, parse_polynomial
from .presentation import (
    AlgebraPresentation,
    BasePresentation,
    GeneratedAlgebra,
    GradedObject,
    ModulePresentation,
    SubalgebraSpec,
    algebra_piece,
    free_module,
    module_piece,
    polynomial_ring,
)
