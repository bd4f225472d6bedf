"""Regular subdivisions, triangulation enumeration and the standard constructions."""

from .regular import (
    ConeWitness,
    certify,
    fold_rows,
    fold_values,
    height_map,
    induce,
    is_regular,
    is_regular_fm,
    lift_with_fixed_values,
    refine_regular,
    regularity_witness,
)
from .triangulation import Subdivision, Triangulation, is_unimodular
from .enumeration import enumerate_branch, enumerate_unimodular, first_branches, flip_graph_triangulations
from .constructions import (
    CellFrame,
    beehive,
    beehive_choices,
    cell_frame,
    composition_triangles,
    convex_sets_meet,
    honeycomb,
    honeycomb_heights,
    is_honeycomb,
    is_pruned,
    prune,
    random_parts,
    refine_cells,
)
