# src/optimization/joins.py

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx
from networkx.utils import UnionFind

from graphs.exceptions import DisconnectedGraphError
from graphs.multigraph import MultiGraph, components, is_connected

from .exceptions import NoJoinError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JoinProblem:
    """Find a minimum-size edge set whose odd-degree vertices are exactly W."""
    graph: MultiGraph
    W: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'W', frozenset(self.W))
        for w in self.W:
            if not 0 <= w < self.graph.vertex_count:
                raise ValueError(f"W vertex {w} outside 0..{self.graph.vertex_count - 1}")


def safe_max_spanning_tree(G: MultiGraph) -> FrozenSet[int]:
    """Kruskal under weights 0 (safe) / 1 (unsafe), ties by edge id."""
    if not is_connected(G):
        raise DisconnectedGraphError("spanning tree needs a connected graph")
    forest = UnionFind(G.vertices)
    tree = []
    for e in sorted(G.edges, key=lambda e: (0 if e.is_safe else 1, e.id)):
        if forest[e.u] != forest[e.v]:
            forest.union(e.u, e.v)
            tree.append(e.id)
    return frozenset(tree)


def odd_degree_set(G: MultiGraph, T: Iterable[int]) -> FrozenSet[int]:
    """Vertices with odd degree in (V, T)."""
    degree = [0] * G.vertex_count
    for i in T:
        degree[G.edges[i].u] += 1
        degree[G.edges[i].v] += 1
    return frozenset(v for v in G.vertices if degree[v] % 2)


def _ordered_simple_graph(G: MultiGraph) -> nx.Graph:
    """
    Simple graph whose adjacency lists follow (neighbor, edge id) order.

    Vertices are scanned in increasing order, so every adjacency dict is
    filled with sorted neighbours; a parallel class keeps its smallest id.
    """
    adjacency = G.adjacency()
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    for v in sorted(adjacency):
        for w, edge_id in adjacency[v]:
            if not H.has_edge(v, w):
                H.add_edge(v, w, edge_id=edge_id)
    return H


def _shortest_path_tree(H: nx.Graph, source: int) -> Tuple[Dict[int, int], Dict[int, int]]:
    """BFS distances and parent edges from source."""
    distance = {source: 0}
    parent_edge: Dict[int, int] = {}
    for parent, child in nx.bfs_edges(H, source):
        distance[child] = distance[parent] + 1
        parent_edge[child] = H[parent][child]['edge_id']
    return distance, parent_edge



def min_cardinality_wjoin(P: JoinProblem) -> FrozenSet[int]:
    """
    Minimum-cardinality W-join.

    Pairs W by a minimum-weight perfect matching on BFS distances and
    returns the symmetric difference of the matched shortest paths.
    """
    G, W = P.graph, P.W
    if not W:
        return frozenset()
    for part in components(G):
        if len(part & W) % 2:
            raise NoJoinError(f"component {sorted(part)} holds an odd number of W vertices")

    H = _ordered_simple_graph(G)
    trees = {w: _shortest_path_tree(H, w) for w in sorted(W)}

    K = nx.Graph()
    K.add_nodes_from(sorted(W))
    for a in sorted(W):
        distance, _ = trees[a]
        for b in sorted(W):
            if a < b and b in distance:
                K.add_edge(a, b, weight=distance[b])
    matching = nx.min_weight_matching(K, weight='weight')
    if 2 * len(matching) != len(W):
        raise NoJoinError("W vertices cannot be paired within their components")

    join = set()
    for a, b in sorted(tuple(sorted(pair)) for pair in matching):
        _, parent_edge = trees[a]
        v = b
        while v != a:
            edge_id = parent_edge[v]
            join ^= {edge_id}
            v = G.edges[edge_id].other(v)

    logger.debug("W-join: |W| = %d, |J| = %d", len(W), len(join))
    return frozenset(join)
