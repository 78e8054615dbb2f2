"""Exact conjugate duality for polyhedral set-valued functions.

Values of the functions are closed convex upper sets of ``Q^m`` ordered by a
polyhedral cone; all arithmetic is over the rationals.
"""

from .errors import InputError, PremiseViolation, SvconvexError, TheoremViolation
from .polyhedra import Polyhedron
from .scalar_fn import ScalarFn
from .upperset_fn import (HalfSpaceValue, OrderedSpace, SetFn, UnionSetFn, UpperSet,
                          biconjugate, conjugate, scalarize, setify)
from .xreal import NEG_INF, POS_INF, XReal, idif, inf_add, sdif, sup_add, xr

__version__ = "0.1.0"

__all__ = [
    "HalfSpaceValue", "InputError", "NEG_INF", "OrderedSpace", "POS_INF", "Polyhedron",
    "PremiseViolation", "ScalarFn", "SetFn", "SvconvexError", "TheoremViolation",
    "UnionSetFn", "UpperSet", "XReal", "biconjugate", "conjugate", "idif", "inf_add",
    "scalarize", "sdif", "setify", "sup_add", "xr",
]
