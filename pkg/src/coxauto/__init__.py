"""Automata for the reduced-word languages of Coxeter systems.

Builds Garside-shadow automata, n-canonical automata and the minimal
automaton of the reduced-word language, together with the weak-order,
small-root and Garside-shadow machinery they are made of.  All algebra is
exact (real cyclotomic scalars with decidable sign).
"""

from .elements import Element
from .scalars import FieldContext, Scalar, make_field_context
from .system import INFINITY, CoxeterMatrix, CoxeterSystem, parse_coxeter_system

__version__ = "0.1.0"

__all__ = [
    "FieldContext",
    "Scalar",
    "make_field_context",
    "INFINITY",
    "CoxeterMatrix",
    "CoxeterSystem",
    "parse_coxeter_system",
    "Element",
    "__version__",
]
