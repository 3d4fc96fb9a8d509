# src/graphs/mincut.py

import logging
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, List, Mapping, Tuple, Union

import networkx as nx

from .exceptions import InvalidCutError
from .multigraph import CutSide, MultiGraph, as_rational, components

logger = logging.getLogger(__name__)

WeightSpec = Union[Mapping[int, object], Callable[[int], object]]


def edge_weights(G: MultiGraph, weight: WeightSpec) -> List[Fraction]:
    """Per-edge exact weights; ids missing from a mapping weigh zero."""
    if callable(weight):
        values = [as_rational(weight(i)) for i in range(G.m)]
    else:
        values = [as_rational(weight.get(i, 0)) for i in range(G.m)]
    for i, w in enumerate(values):
        if w < 0:
            raise ValueError(f"edge {i}: negative weight {w}")
    return values


def weighted_support(n: int, triples: Iterable[Tuple[int, int, Fraction]]) -> nx.Graph:
    """Simple graph on 0..n-1 with parallel weights summed; self-loops and zero weights dropped."""
    H = nx.Graph()
    H.add_nodes_from(range(n))
    for u, v, w in triples:
        if u == v or w == 0:
            continue
        if H.has_edge(u, v):
            H[u][v]['weight'] += w
        else:
            H.add_edge(u, v, weight=w)
    return H


def support_min_cut(H: nx.Graph) -> Fraction:
    """Exact minimum cut value of a weighted support graph; 0 when it is disconnected."""
    if H.number_of_nodes() < 2:
        raise InvalidCutError("a cut needs at least two vertices")
    if not nx.is_connected(H):
        return Fraction(0)
    value, _ = nx.stoer_wagner(H, weight='weight')
    return as_rational(value)


def min_cut_value(G: MultiGraph, weight: WeightSpec) -> Fraction:
    """Global minimum cut value only (0 when the positive-weight support is disconnected)."""
    weights = edge_weights(G, weight)
    return support_min_cut(weighted_support(G.vertex_count, ((e.u, e.v, weights[e.id]) for e in G.edges)))


def global_min_cut(G: MultiGraph, weight: WeightSpec) -> Tuple[Fraction, CutSide]:
    """
    Global minimum cut of G under exact weights.

    The value comes from networkx's Stoer-Wagner; the returned side is
    the lexicographically smallest canonical side among all optimal cuts.
    """
    if G.vertex_count < 2:
        raise InvalidCutError("global_min_cut needs at least two vertices")

    weights = edge_weights(G, weight)
    value = support_min_cut(weighted_support(G.vertex_count, ((e.u, e.v, weights[e.id]) for e in G.edges)))

    if value == 0:
        support = [e.id for e in G.edges if weights[e.id] > 0]
        parts = components(G, support)
        rest = parts[1:]
        candidates = []
        for size in range(1, len(rest) + 1):
            for chosen in combinations(rest, size):
                candidates.append(CutSide.canonical(frozenset().union(*chosen), G.vertex_count))
        return value, min(candidates)

    from .cuts import enumerate_near_min_cuts
    optimal = enumerate_near_min_cuts(G, dict(enumerate(weights)), Fraction(1))
    return value, optimal.cuts[0]
