"""Multilevel mapping of hypergraphs onto weighted target graphs under the Steiner tree metric."""

from .errors import (
    AsymmetricEdge,
    Disconnected,
    DisconnectedTarget,
    EmptyNet,
    EmptyRegion,
    FormatError,
    InfeasibleBalance,
    InvalidBlock,
    LengthMismatch,
    MalformedHeader,
    PinOutOfRange,
    SizeLimitTooLarge,
    SteinerMapError,
    TooLarge,
)
from .hypergraph import Hypergraph, TargetGraph, complete_target, contract, project
from .steiner import ConnectivityDistance, SteinerTable, delta_dist, precompute_steiner_trees, steiner_distance
from .mapping import (
    Mapping,
    evaluate_connectivity_metric,
    evaluate_cut_metric,
    evaluate_steiner_metric,
    is_balanced,
    max_block_weight,
)
from .gains import GainTable, compute_gain
from .coarsening import coarsen, compute_clustering
from .initial import greedy_opmp, initial_kway_partition, initial_mapping, kl_refine, map_partition
from .lp import lp_refine
from .fm import fm_refine
from .flows import flow_refine, grow_region, refine_pair
from .io import (
    generate_grid,
    generate_hierarchy,
    parse_hmetis,
    parse_mapping,
    parse_target_graph,
    write_hmetis,
    write_mapping,
    write_target_graph,
)
from .pipeline import Config, Result, map_hypergraph

__version__ = "0.1.0"
