"""Exact algebra kernel: rational functions, Laurent polynomials, Groebner and local bases."""

from .groebner import GroebnerBasis, NonFiniteQuotient, groebner_basis
from .laurent import LaurentPoly, NonMonomialDenominator
from .local import local_colength, local_dimension, local_standard_basis
from .matrix import charpoly
from .orders import MonomialOrder
from .radical import RadicalRing
from .ratfunc import RatFunc, SpecializationError
from .upoly import UPoly

__all__ = ["GroebnerBasis", "LaurentPoly", "MonomialOrder", "NonFiniteQuotient", "NonMonomialDenominator",
           "RadicalRing", "RatFunc", "SpecializationError", "UPoly", "charpoly", "groebner_basis",
           "local_colength", "local_dimension", "local_standard_basis"]
