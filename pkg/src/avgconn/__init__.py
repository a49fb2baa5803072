"""Average (edge-)connectivity toolkit for minimally k-(edge-)connected graphs."""
from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    asymptotic_average,
    balance_sequence,
    check_total_le_potential,
    kappa_bar_upper,
    potential,
    potential_of_graph,
)
from .connectivity import (
    PairConnectivityReport,
    all_pairs_report,
    global_connectivity,
    is_degree_partitioned,
    is_minimally_k_connected,
    local_edge_connectivity,
    local_vertex_connectivity,
)
from .constructions import ConstructionSpec, build_gamma, build_gkp, build_phi, build_psi
from .graph import Graph, GraphError, decode_graph6, encode_graph6, from_edge_list

__all__ = [
    "ConstructionSpec",
    "Graph",
    "GraphError",
    "PairConnectivityReport",
    "all_pairs_report",
    "asymptotic_average",
    "balance_sequence",
    "build_gamma",
    "build_gkp",
    "build_phi",
    "build_psi",
    "check_total_le_potential",
    "decode_graph6",
    "encode_graph6",
    "from_edge_list",
    "global_connectivity",
    "is_degree_partitioned",
    "is_minimally_k_connected",
    "kappa_bar_upper",
    "local_edge_connectivity",
    "local_vertex_connectivity",
    "potential",
    "potential_of_graph",
]
