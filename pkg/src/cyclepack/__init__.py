"""Vertex-disjoint cycle packing under high/low degree conditions."""

from ._kernels import BACKEND
from .augment import (
    AuxDigraph,
    RotationError,
    RotationPlan,
    attachment_heavy_vertices,
    build_aux_digraph,
    grow_good_packing,
    reachable_sources,
    rotate_augment,
    rotation_plans,
)
from .classify import (
    DegreeProfile,
    Hypothesis,
    HypothesisVerdict,
    Witness,
    check_hypothesis,
    classify,
    h_minus_ell,
    is_sk5,
    low_fraction_bound,
    sk_graph,
)
from .extremal import FAMILIES, ExpectedProfile, FamilySpec, expected_profile, generate
from .graph import (
    Contraction,
    EdgeListError,
    Graph,
    contract_edge,
    delete_edge,
    delete_vertices,
    induced_subgraph,
    parse_edge_list,
    read_edge_list,
    two_core,
    write_edge_list,
)
from .harness import EnumerationSpec, VerificationReport, enumerate_graphs, hunt_gap, verify_theorem
from .packing import (
    Config,
    CyclePacking,
    ExactLimitError,
    SearchExhausted,
    SearchResult,
    Status,
    TrianglePacking,
    find_disjoint_cycles,
    max_cycle_packing,
    max_triangle_packing,
    maximum_cycle_packing,
    triangle_number,
    verify_cycle_packing,
    verify_triangle_packing,
)
from .reduce import (
    ReductionRecord,
    ReductionState,
    ReductionTrace,
    apply_rule,
    lift_packing,
    reduce_fully,
    reduce_step,
    solve_with_reduction,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
