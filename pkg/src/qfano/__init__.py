"""Residual q-Fano planes: construction and exhaustive verification."""

from .gf import FieldSpec, field_new, gf
from .linalg import Subspace, canonicalize, enumerate_subspaces, gaussian_binomial
from .construction import ConstructionOptions, construct
from .verify import coverage, verify_pair

__all__ = [
    "FieldSpec", "field_new", "gf", "Subspace", "canonicalize", "enumerate_subspaces",
    "gaussian_binomial", "ConstructionOptions", "construct", "coverage", "verify_pair",
]
__version__ = "0.1.0"
