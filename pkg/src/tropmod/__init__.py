"""Dimensions of moduli spaces of tropical plane curves with a fixed Newton polygon."""

from .exceptions import (
    FormulaMismatchError,
    NonmaximalHyperellipticError,
    NotHoneycombError,
    NotRegularError,
    ParseError,
    PreconditionError,
    TropmodError,
)
from .lattice import LatticePolygon, classify, column_count, interior_hull, is_maximal, maximal_model, relax
from .moduli import (
    DimensionReport,
    algebraic_dim,
    d_planar,
    dim_MDelta_closed,
    dim_MDelta_exhaustive,
    dim_MT,
    generic_rank,
    radial_classification,
    theorem_2g1_polygons,
)
from .subdivision import Triangulation, beehive, enumerate_unimodular, honeycomb, induce, prune, regularity_witness
from .tropical import dual_curve, kappa_matrix, lambda_matrix, skeletonize

__version__ = "0.1.0"
