"""Exact tools for totally geodesic subalgebras of graded filiform Lie algebras."""

from __future__ import annotations

from .catalog import FamilySpec, build, build_family
from .exactlinalg import InnerProduct, Subspace
from .exactnum import RadNum
from .liecore import LieAlgebra, bracket, jacobi_check
from .tgsverify import graded_tgs_search, is_totally_geodesic

__version__ = "0.1.0"

__all__ = [
    "FamilySpec",
    "InnerProduct",
    "LieAlgebra",
    "RadNum",
    "Subspace",
    "bracket",
    "build",
    "build_family",
    "graded_tgs_search",
    "is_totally_geodesic",
    "jacobi_check",
]
