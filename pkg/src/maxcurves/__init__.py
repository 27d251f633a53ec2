"""Exact tools for maximal curves that might be Galois subcovers of the Hermitian curve."""

from . import autgroup, covers, curves, feasibility, ff
from .curves import check_maximal, make_model
from .feasibility import feasible_degrees

__all__ = ["autgroup", "covers", "curves", "feasibility", "ff", "check_maximal", "make_model",
           "feasible_degrees"]
__version__ = "0.1.0"
