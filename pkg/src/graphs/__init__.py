from .multigraph import (
    CutSide,
    EdgeRecord,
    Label,
    MultiGraph,
    build_graph,
    components,
    contract,
    cut_edges,
    is_connected,
    subgraph,
    unsafe_bridges,
)
from .mincut import global_min_cut, min_cut_value
from .cuts import CutCollection, enumerate_near_min_cuts, k_edge_cut_collection

__all__ = [
    'CutSide', 'EdgeRecord', 'Label', 'MultiGraph', 'build_graph', 'components',
    'contract', 'cut_edges', 'is_connected', 'subgraph', 'unsafe_bridges',
    'global_min_cut', 'min_cut_value',
    'CutCollection', 'enumerate_near_min_cuts', 'k_edge_cut_collection',
]
