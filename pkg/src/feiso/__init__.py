"""Graph isomorphism heuristics built on free-energy (Perron root) encodings."""

from .canonical import (
    RefinedMatrix,
    canonical_number,
    overlay_node_weights,
    refine,
    weighted_canonical_number,
)
from .graph import (
    Graph,
    Permutation,
    apply_permutation,
    emit_graph6,
    neighbourhood_subgraph,
    parse_edge_list,
    parse_graph6,
    random_permutation,
    shared_neighbours_subgraph,
    union_neighbours_subgraph,
)
from .nutcracker import MatchFailure, Partition, find_correspondence, partition_by_stationary, verify_correspondence
from .oracle import CanonicalForm, brute_force_isomorphism, exact_canonical_form
from .spectral import (
    ConvergenceError,
    ReducibleMatrixError,
    SpectralResult,
    all_pairs_shortest_distance,
    parry_stationary,
    perron,
    reciprocal_distance_matrix,
    subgraph_free_energy,
)

__version__ = "0.1.0"
