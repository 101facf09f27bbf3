"""Laurent polynomial mirrors of weighted projective hypersurfaces, computed exactly."""

from .algebra import GroebnerBasis, LaurentPoly, MonomialOrder, RatFunc, UPoly
from .gauss_manin import basic_example_verify, birkhoff_quadric_verify, gm_reduce
from .ghv import build_model
from .infinity import conjecture_check, homogenize_graph, nu_at_point
from .parser import parse_expression
from .qde import DOperator, build_PH, reduce_PH, theta0_relation
from .wps import WeightSystem, analyze

__version__ = "0.1.0"

__all__ = ["DOperator", "GroebnerBasis", "LaurentPoly", "MonomialOrder", "RatFunc", "UPoly", "WeightSystem",
           "analyze", "basic_example_verify", "birkhoff_quadric_verify", "build_PH", "build_model",
           "conjecture_check", "gm_reduce", "homogenize_graph", "nu_at_point", "parse_expression", "reduce_PH",
           "theta0_relation"]
