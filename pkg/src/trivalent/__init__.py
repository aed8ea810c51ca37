"""Numberings of 3-regular semi-graphs and the combinatorial Miura transformation."""

from .semigraph import (
    OPEN,
    Branch,
    CheckResult,
    Edge,
    GraphType,
    InvalidGraphError,
    MarkedSemiGraph,
    SemiGraph,
    StructureError,
    ValidationReport,
    betti,
    cycle_with_legs,
    dumbbell,
    dumps_graph,
    graph_from_json_obj,
    graph_to_json_obj,
    graph_type,
    loads_graph,
    loop_with_leg,
    reduced_loop,
    theta,
    tripod,
    validate,
)
from .numbering import (
    BranchNumbering,
    EdgeNumbering,
    ExponentVector,
    balanced_triple,
    check_prime,
    dumps_numbering,
    exponent_of,
    inv,
    is_balanced,
    is_branch_numbering,
    is_strict,
    loads_numbering,
    numbering_from_json_obj,
    numbering_to_json_obj,
    radii_of,
)
from .miura import (
    Pp004Result,
    check_pp004,
    miura_transform,
    mu_value,
    tripod_strict_set,
)
from .search import (
    CensusReport,
    EnumerationQuery,
    count,
    count_by_contraction,
    enumerate_numberings,
)
from .verify import (
    TheoremReport,
    figure_numbering,
    figure_tree,
    verify_figure_vector,
    verify_miura,
    verify_p048,
    verify_p048_structure,
)

__version__ = "0.1.0"
