"""Quantum MDS convolutional codes from Hermitian dual-containing GRS codes."""

from __future__ import annotations

__version__ = "0.1.0"

from .galois import FiniteField, field_build, gf, hermitian_field
from .grs import GrsCode, search_dual_containing
from .quantum import QConvParams, construct_one, construct_two, mds_bound

__all__ = [
    "FiniteField",
    "GrsCode",
    "QConvParams",
    "__version__",
    "construct_one",
    "construct_two",
    "field_build",
    "gf",
    "hermitian_field",
    "mds_bound",
    "search_dual_containing",
]
