"""Equipartitions of masses on the moment curve by hyperplane arrangements.

Gray codes and equiparting matrices, an exact-arithmetic geometric realization,
a combinatorial cell model of the configuration space, and the resulting
bounds for Delta(j, k).
"""

from .errors import DegeneracyError, HyperpartError, InvariantError, ParameterError, ResourceError
from .graycode import GrayCode, enumerate_gray_codes, gray_classes, is_gray_code, transition_counts
from .equipart import (
    EquipartingMatrix,
    ParamTriple,
    canonical_form,
    count_classes,
    enumerate_classes,
    validate,
)
from .moment import (
    ArrangementSpec,
    HyperplaneSpec,
    IntervalLayout,
    arrangement_to_matrix,
    layout_points,
    matrix_to_arrangement,
    verify_equipartition,
)
from .cwmodel import Cell, CellSymbol, SignedPermutation, act, canonicalize, contains, facets, stats
from .admissibility import DeltaReport, decide, k2_count, kummer_valuation, ramos_bound, table1

__version__ = "0.1.0"
