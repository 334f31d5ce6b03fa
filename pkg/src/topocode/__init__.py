"""Parameterized total colorings, matrix algebra, set-colorings and key strings for small graphs."""
from .errors import TopocodeError
from .linform import LinForm, parse_form
from .graph_core import Graph
from .total_coloring import TotalColoring
from .topcode_matrix import TopcodeMatrix
from .coloring_engine import FamilySpec, VerifyReport, verify, transform, derive_equivalent

__all__ = ["TopocodeError", "LinForm", "parse_form", "Graph", "TotalColoring", "TopcodeMatrix",
           "FamilySpec", "VerifyReport", "verify", "transform", "derive_equivalent"]
