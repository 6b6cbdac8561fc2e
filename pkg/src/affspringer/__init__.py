"""Exact combinatorics of affine Weyl groups, alcove blocks and GKM graphs."""
from .errors import InputError, InvariantViolation, ResourceError
from .rootdata import RootDatum, build_root_datum, root_datum

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "InvariantViolation",
    "ResourceError",
    "RootDatum",
    "build_root_datum",
    "root_datum",
]
