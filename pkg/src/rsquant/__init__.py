"""Exact computations in two-parameter quantum groups U_{r,s}(g)."""

from .cartan import CartanDatum, CartanError, cartan_type, validate
from .freealg import Element, TensorElement
from .parse import ParseError, format_element, parse_element, parse_scalar
from .scalars import Scalar, ScalarError, qbinom, qnumber, var
from .urs import HeightBoundError, UrsAlgebra

__version__ = "0.1.0"

__all__ = [
    "CartanDatum", "CartanError", "cartan_type", "validate",
    "Element", "TensorElement",
    "ParseError", "format_element", "parse_element", "parse_scalar",
    "Scalar", "ScalarError", "qbinom", "qnumber", "var",
    "HeightBoundError", "UrsAlgebra",
]
