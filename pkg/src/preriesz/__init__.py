"""Exact computations in finite-dimensional pre-Riesz spaces of operators.

Ordered spaces are given by polyhedral cones over the rationals.  The package
converts between cone descriptions, represents the positive operators between
two such spaces through their extremal positive functionals, and reads
disjointness, bands and moduli off that representation.
"""
from .errors import (CapExceeded, ConsistencyError, InputError, NotFullDimensionalError,
                     NotPointedError, PreRieszError)
from .space import OrderedSpace
from .operators import OperatorSpaceCtx, build_ctx

__version__ = "0.1.0"

__all__ = ["OrderedSpace", "OperatorSpaceCtx", "build_ctx", "PreRieszError", "InputError",
           "NotPointedError", "NotFullDimensionalError", "CapExceeded", "ConsistencyError"]
