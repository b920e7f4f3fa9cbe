"""Exact genus-zero and genus-one invariants of local Calabi-Yau spaces
``Tot(O(-c_1) + ... + O(-c_m) -> P^l)``."""
from .exactmath import BiSeries, LaurentSeries, QSeries, Rational, TQSeries, format_rational
from .geometry import InvariantKind, SplitGeometry, discriminant_constant, make_geometry, parse_geometry
from .ifunctions import a_coefficients, i_function_row, ipp_ladder, mirror_map
from .genus1 import (
    conjecture_in_t,
    conjecture_invariants,
    degree_one_closed,
    extremal_closed,
    hypersurface_degree_one_closed,
    zinger_hypersurface,
)
from .genus0 import bps_table, gv_genus0, integrality_report, onepoint_gw, twopoint_gw

__version__ = "0.1.0"
