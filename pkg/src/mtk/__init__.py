"""Exact computations with premodular and modular fusion-category data."""

from .cyclo import CycloNum, Rational, RootOfUnity, zeta
from .errors import (
    ConstructionError,
    FixedPointDataRequiredError,
    MtkError,
    OrderOverflowError,
    SqrtNotRepresentableError,
    ValidationError,
)

__all__ = [
    "CycloNum",
    "Rational",
    "RootOfUnity",
    "zeta",
    "MtkError",
    "OrderOverflowError",
    "ValidationError",
    "ConstructionError",
    "SqrtNotRepresentableError",
    "FixedPointDataRequiredError",
]

__version__ = "0.1.0"
