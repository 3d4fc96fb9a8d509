# src/optimization/oracle.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, FrozenSet, Iterable, List, Optional, Union

import networkx as nx

from graphs.multigraph import MultiGraph

from .data_interface import CapEcssInstance, FgcInstance, HittingSetProblem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum; `optimum_cost` is None when nothing is feasible."""
    optimum_cost: Optional[Fraction]
    witness: FrozenSet[int]
    explored: int = 0

    @property
    def feasible(self) -> bool:
        return self.optimum_cost is not None

    def describe(self) -> str:
        return "infeasible" if self.optimum_cost is None else str(self.optimum_cost)


def _edge_connectivity(G: MultiGraph, F: Iterable[int], weight: Optional[Callable] = None) -> float:
    """Minimum cut of (V, F) with parallel edges summed, via networkx's Stoer-Wagner."""
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    for i in F:
        e = G.edges[i]
        w = 1 if weight is None else weight(e)
        if w == 0:
            continue
        if H.has_edge(e.u, e.v):
            H[e.u][e.v]['weight'] += w
        else:
            H.add_edge(e.u, e.v, weight=w)
    if G.vertex_count == 1:
        return float('inf')
    if not nx.is_connected(H):
        return 0
    value, _ = nx.stoer_wagner(H, weight='weight')
    return value


def brute_force_feasible(inst: FgcInstance, F: Iterable[int]) -> bool:
    """
    Literal (p,q)-FGC check: removing any q unsafe edges of F leaves (V, F) p-edge-connected.

    Removing fewer edges never hurts, so only failure sets of the largest
    admissible size are tried.
    """
    G = inst.graph
    F = frozenset(F)
    if G.vertex_count == 1:
        return True
    unsafe = sorted(i for i in F if not G.edges[i].is_safe)
    size = min(inst.q, len(unsafe))
    for failed in combinations(unsafe, size):
        if _edge_connectivity(G, F - set(failed)) < inst.p:
            return False
    return True


def capacitated_feasible(inst: CapEcssInstance, F: Iterable[int]) -> bool:
    """Every cut of (V, F) carries capacity >= k."""
    return _edge_connectivity(inst.graph, F, weight=lambda e: e.capacity) >= inst.k


def brute_force_opt(inst: Union[FgcInstance, CapEcssInstance]) -> OracleResult:
    """
    Exact optimum by depth-first search over edges sorted by (cost, id).

    Branches are cut when their cost reaches the incumbent or when adding
    every remaining edge still cannot make them feasible.
    """
    G = inst.graph
    feasible = capacitated_feasible if isinstance(inst, CapEcssInstance) else brute_force_feasible
    order = [e.id for e in sorted(G.edges, key=lambda e: (e.cost, e.id))]

    if not feasible(inst, order):
        return OracleResult(None, frozenset(), 1)

    best = {'cost': G.total_cost(order), 'witness': frozenset(order), 'explored': 0}

    def search(position: int, chosen: List[int], cost: Fraction):
        best['explored'] += 1
        if cost >= best['cost']:
            return
        if feasible(inst, chosen):
            best['cost'], best['witness'] = cost, frozenset(chosen)
            return
        if position == len(order):
            return
        if not feasible(inst, chosen + order[position:]):
            return
        edge_id = order[position]
        chosen.append(edge_id)
        search(position + 1, chosen, cost + G.edges[edge_id].cost)
        chosen.pop()
        search(position + 1, chosen, cost)

    # the empty set is only feasible on one vertex
    if feasible(inst, []):
        return OracleResult(Fraction(0), frozenset(), 1)
    search(0, [], Fraction(0))
    logger.debug("Oracle: optimum %s after %d search nodes", best['cost'], best['explored'])
    return OracleResult(best['cost'], best['witness'], best['explored'])


def brute_force_min_hitting_set(P: HittingSetProblem) -> OracleResult:
    """Exact minimum-cost hitting set: branch over the elements of the first unhit set."""
    if any(not s for s in P.sets):
        return OracleResult(None, frozenset(), 0)

    best = {'cost': P.cost_of(range(len(P.costs))), 'witness': frozenset(range(len(P.costs))), 'explored': 0}

    def search(chosen: FrozenSet[int], cost: Fraction):
        best['explored'] += 1
        if cost >= best['cost']:
            return
        unhit = next((s for s in P.sets if not (s & chosen)), None)
        if unhit is None:
            best['cost'], best['witness'] = cost, chosen
            return
        for element in sorted(unhit):
            search(chosen | {element}, cost + P.costs[element])

    search(frozenset(), Fraction(0))
    return OracleResult(best['cost'], best['witness'], best['explored'])
