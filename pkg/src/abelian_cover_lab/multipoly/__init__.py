"""Sparse polynomials over Q(omega), parsing, and Groebner-basis tools."""
from .groebner import (DEFAULT_STEP_BUDGET, ResourceLimitExceeded, buchberger_criterion,
                       groebner, reduce_poly, s_polynomial)
from .ideals import (IdealHandle, eliminate, exact_divide, groebner_basis, homogeneous_dimension_projective,
                     ideal, ideal_dimension, quotient_dimension, minors, minors_ideal, poly_gcd, poly_lcm,
                     radical_membership, squarefree_part)
from .parse import PolySyntaxError, UnknownIdentifier, format_poly, parse_number, parse_poly
from .poly import (GREVLEX, LEX, MonomialOrder, MPoly, VarSet, leading_coefficient,
                   leading_exponent, monic, normalize_scalar, proportional, scalar_ratio,
                   sorted_terms)

__all__ = [
    "DEFAULT_STEP_BUDGET", "GREVLEX", "LEX", "IdealHandle", "MPoly", "MonomialOrder",
    "PolySyntaxError", "ResourceLimitExceeded", "UnknownIdentifier", "VarSet",
    "buchberger_criterion", "eliminate", "exact_divide", "format_poly", "groebner",
    "groebner_basis", "homogeneous_dimension_projective", "ideal", "ideal_dimension",
    "leading_coefficient", "leading_exponent", "minors", "minors_ideal", "monic",
    "normalize_scalar", "parse_number", "parse_poly", "poly_gcd", "poly_lcm", "proportional", "quotient_dimension",
    "radical_membership", "reduce_poly", "s_polynomial", "scalar_ratio", "sorted_terms",
    "squarefree_part",
]
