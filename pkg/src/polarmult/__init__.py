"""Polar multiplicities of graded modules over k[u]_(u) and the integrality,
birationality and reduction criteria built on them.
"""

from .criteria import (
    Verdict,
    buchsbaum_rim,
    check_birational,
    check_integral,
    check_reduction_ideal,
    check_reduction_module,
    relative_buchsbaum_rim,
    vanishing_profile,
)
from .errors import (
    BudgetExceeded,
    EmptySupport,
    GenericityFailure,
    InputError,
    NonIntegerCoefficient,
    NotContained,
    PolarError,
    Unstable,
)
from .hilbert import WindowOptions, fit_bivariate, hilbert_table
from .polar import (
    PolarVector,
    general_linear_cut,
    j_multiplicity,
    polar_vector,
    polar_wrt_linear_ideal,
    relative_polar,
    top_polar_check,
    truncated_relative,
)
from .problem import ProblemDescription
from .svlength import cross_validate, length_formula_vector

__all__ = [
    "Verdict",
    "buchsbaum_rim",
    "check_birational",
    "check_integral",
    "check_reduction_ideal",
    "check_reduction_module",
    "relative_buchsbaum_rim",
    "vanishing_profile",
    "BudgetExceeded",
    "EmptySupport",
    "GenericityFailure",
    "InputError",
    "NonIntegerCoefficient",
    "NotContained",
    "PolarError",
    "Unstable",
    "WindowOptions",
    "fit_bivariate",
    "hilbert_table",
    "PolarVector",
    "general_linear_cut",
    "j_multiplicity",
    "polar_vector",
    "polar_wrt_linear_ideal",
    "relative_polar",
    "top_polar_check",
    "truncated_relative",
    "ProblemDescription",
    "cross_validate",
    "length_formula_vector",
]
