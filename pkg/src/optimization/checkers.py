# src/optimization/checkers.py

import logging
from typing import Dict, Iterable, Optional, Union

from graphs.cuts import enumerate_near_min_cuts
from graphs.mincut import global_min_cut, min_cut_value
from graphs.multigraph import CutSide, MultiGraph, cut_edges

from .data_interface import CapEcssInstance, FgcInstance

logger = logging.getLogger(__name__)


def _label_weights(G: MultiGraph, F: Iterable[int], safe: int, unsafe: int) -> Dict[int, int]:
    return {i: (safe if G.edges[i].is_safe else unsafe) for i in F}


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


def check_1k(inst: FgcInstance, F: Iterable[int]) -> bool:
    """(1,k)-FGC: every cut of F holds a safe edge or k+1 unsafe edges."""
    _require(inst.p == 1, f"check_1k needs p = 1, got p = {inst.p}")
    G, k = inst.graph, inst.q
    if G.vertex_count == 1:
        return True
    return min_cut_value(G, _label_weights(G, F, k + 1, 1)) >= k + 1


def check_k1(inst: FgcInstance, F: Iterable[int]) -> bool:
    """(k,1)-FGC: every cut of F holds k safe edges or k+1 edges."""
    _require(inst.q == 1, f"check_k1 needs q = 1, got q = {inst.q}")
    G, k = inst.graph, inst.p
    if G.vertex_count == 1:
        return True
    return min_cut_value(G, _label_weights(G, F, k + 1, k)) >= k * (k + 1)


def is_deficient(G: MultiGraph, side: CutSide, F, p: int, q: int) -> bool:
    crossing = cut_edges(G, side, F)
    safe = sum(1 for i in crossing if G.edges[i].is_safe)
    return safe < p and len(crossing) < p + q


def find_deficient_cut(inst: Union[FgcInstance, CapEcssInstance], F: Iterable[int]) -> Optional[CutSide]:
    """
    A cut of (V, F) that violates the instance, or None when F is feasible.

    For (p,q)-FGC a violated cut has fewer than p safe edges and fewer than
    p+q edges of F. With capacities p+q (safe) / p (unsafe) every such cut
    lies below p(p+q) or within twice the minimum capacity, so only the
    2-approximate minimum cuts need scanning.
    """
    G = inst.graph
    F = frozenset(F)
    if G.vertex_count == 1:
        return None

    if isinstance(inst, CapEcssInstance):
        value, side = global_min_cut(G, {i: G.edges[i].capacity for i in F})
        return side if value < inst.k else None

    p, q = inst.p, inst.q
    weights = _label_weights(G, F, p + q, p)
    mu, side = global_min_cut(G, weights)
    if mu < p * (p + q):
        return side
    for candidate in enumerate_near_min_cuts(G, weights, 2):
        if is_deficient(G, candidate, F, p, q):
            return candidate
    return None


def check_pq(inst: FgcInstance, F: Iterable[int]) -> bool:
    """(p,q)-FGC via the capacitated cut scan."""
    G, p, q = inst.graph, inst.p, inst.q
    F = frozenset(F)
    if G.vertex_count == 1:
        return True
    weights = _label_weights(G, F, p + q, p)
    mu = min_cut_value(G, weights)
    if mu < p * (p + q):
        return False
    cuts = enumerate_near_min_cuts(G, weights, 2)
    logger.debug("check_pq: mu = %s, %d cuts within 2mu", mu, len(cuts))
    return not any(is_deficient(G, side, F, p, q) for side in cuts)


def check_cap_kecss(inst: CapEcssInstance, F: Iterable[int]) -> bool:
    """Every cut of F carries capacity at least k."""
    G = inst.graph
    if G.vertex_count == 1:
        return True
    return min_cut_value(G, {i: G.edges[i].capacity for i in F}) >= inst.k


def is_feasible(inst: Union[FgcInstance, CapEcssInstance], F: Iterable[int]) -> bool:
    """Dispatch to the checker that matches the instance."""
    if isinstance(inst, CapEcssInstance):
        return check_cap_kecss(inst, F)
    if inst.p == 1:
        return check_1k(inst, F)
    if inst.q == 1:
        return check_k1(inst, F)
    return check_pq(inst, F)
