"""Exact betweenness centrality in O(kn) time, k being the feedback edge number."""

from .brandes import SourceDAG, accumulate_generalized, brandes_weighted, sssp_dag
from .cycle import CycleInstance, cycle_bc, opposite_index
from .decomposition import (
    Block,
    CopyRecord,
    MaxPath,
    ReductionLog,
    find_max_paths,
    recombine,
    reduce_degree_one,
    split_blocks,
)
from .fen import block_bc
from .generators import FamilySpec, generate
from .graph import (
    DegreePartition,
    Graph,
    GraphFormatError,
    WeightedGraph,
    build_graph,
    connected_components,
    degree_partition,
    feedback_edge_number,
)
from .oracle import oracle_bc, oracle_pair_dependency
from .pipeline import SolverChoice, compute_bc

__all__ = [
    "Block",
    "CopyRecord",
    "CycleInstance",
    "DegreePartition",
    "FamilySpec",
    "Graph",
    "GraphFormatError",
    "MaxPath",
    "ReductionLog",
    "SolverChoice",
    "SourceDAG",
    "WeightedGraph",
    "accumulate_generalized",
    "block_bc",
    "brandes_weighted",
    "build_graph",
    "compute_bc",
    "connected_components",
    "cycle_bc",
    "degree_partition",
    "feedback_edge_number",
    "find_max_paths",
    "generate",
    "opposite_index",
    "oracle_bc",
    "oracle_pair_dependency",
    "recombine",
    "reduce_degree_one",
    "split_blocks",
    "sssp_dag",
]
