"""Feature selection on boolean symbolic objects.

Greedy search for a small variable subset that keeps the discrimination
power of the full variable set, with boolean (Minset) or partial
(Minset-Plus) discrimination between assertions.
"""
from .discrimination import DiscriminationMatrix, build_matrix
from .errors import DatasetError, MinsetError, MissingValueError, SelectionError
from .measures import Measure
from .model import (
    Assertion,
    IndividualTable,
    KnowledgeBase,
    ValueSet,
    VariableSpec,
)
from .selection import (
    SelectionResult,
    minset,
    minset_partial_naive,
    minset_plus,
    select_from_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Assertion",
    "DatasetError",
    "DiscriminationMatrix",
    "IndividualTable",
    "KnowledgeBase",
    "Measure",
    "MinsetError",
    "MissingValueError",
    "SelectionError",
    "SelectionResult",
    "ValueSet",
    "VariableSpec",
    "build_matrix",
    "minset",
    "minset_partial_naive",
    "minset_plus",
    "select_from_matrix",
]
