"""Grover walks on graphs and perfect state transfer between vertex type states."""

from .graph_core import (
    ArcSet,
    Graph,
    GraphError,
    MultipartiteSpec,
    build_arcs,
    complete,
    complete_multipartite,
    cycle,
    from_edge_list,
)
from .pst_engine import (
    PeriodReport,
    ScanResult,
    TransferReport,
    detect_pst,
    find_period,
    necessary_condition,
    prepare,
    scan_pst,
    transfer_amplitude,
)
from .spectral import SpectralDecomposition, decompose, poly_apply, support
from .walk_operators import ArcState, WalkOperators, build, step, vertex_state

__version__ = "0.1.0"
