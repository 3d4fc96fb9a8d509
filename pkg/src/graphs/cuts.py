# src/graphs/cuts.py

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .exceptions import DisconnectedGraphError, NotKEdgeConnectedError
from .mincut import WeightSpec, edge_weights, min_cut_value, support_min_cut, weighted_support
from .multigraph import CutSide, MultiGraph, as_rational, is_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutCollection:
    """
    Every cut side whose weight lies in [reference_value, radius * reference_value].

    `cuts` and `values` are parallel and sorted by (weight, canonical side).
    """
    cuts: Tuple[CutSide, ...]
    reference_value: Fraction
    approximation_radius: Fraction
    values: Tuple[Fraction, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __contains__(self, side) -> bool:
        return side in self._index

    @property
    def _index(self) -> frozenset:
        return frozenset(self.cuts)


class _SideAssignment:
    """Union-find with parity: parity 1 means 'opposite side of the cut'."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def copy(self) -> "_SideAssignment":
        other = _SideAssignment.__new__(_SideAssignment)
        other.parent = list(self.parent)
        other.parity = list(self.parity)
        return other

    def find(self, v: int) -> Tuple[int, int]:
        parity = 0
        while self.parent[v] != v:
            parity ^= self.parity[v]
            v = self.parent[v]
        return v, parity

    def join(self, a: int, b: int, apart: int) -> None:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ apart

    def classes(self, n: int) -> Dict[int, Tuple[int, int]]:
        return {v: self.find(v) for v in range(n)}


class NearMinCutEnumerator:
    """
    Branch-and-bound over the positive-weight edges in id order.

    Each undecided edge is either contracted (both ends on one side) or
    deleted into the cut (ends on opposite sides). A branch is pruned when
    the weight already forced into the cut, or the minimum cut of the graph
    with all same-side classes contracted, exceeds the threshold.
    """

    def __init__(self, G: MultiGraph, weights: List[Fraction], threshold: Fraction):
        self.G = G
        self.n = G.vertex_count
        self.weights = weights
        self.threshold = threshold
        self.edges = [e for e in G.edges if weights[e.id] > 0]
        self.found: Dict[CutSide, Fraction] = {}
        self.nodes = 0

    def run(self) -> Dict[CutSide, Fraction]:
        self._branch(0, _SideAssignment(self.n), Fraction(0))
        logger.debug("Cut enumeration: %d search nodes, %d cuts within %s",
                     self.nodes, len(self.found), self.threshold)
        return self.found

    def _contracted_bound(self, state: _SideAssignment) -> Fraction:
        classes = state.classes(self.n)
        labels = {}
        for v in range(self.n):
            labels.setdefault(classes[v], len(labels))
        if len(labels) < 2:
            return None
        pairs = ((labels[classes[e.u]], labels[classes[e.v]], self.weights[e.id]) for e in self.edges)
        return support_min_cut(weighted_support(len(labels), pairs))

    def _branch(self, position: int, state: _SideAssignment, forced: Fraction) -> None:
        self.nodes += 1
        while position < len(self.edges):
            e = self.edges[position]
            ru, pu = state.find(e.u)
            rv, pv = state.find(e.v)
            if ru != rv:
                break
            if pu != pv:
                forced += self.weights[e.id]
                if forced > self.threshold:
                    return
            position += 1

        if position == len(self.edges):
            _, root_parity = state.find(0)
            side = [v for v in range(self.n) if state.find(v)[1] != root_parity]
            if side and forced <= self.threshold:
                self.found[CutSide(tuple(side))] = forced
            return

        e = self.edges[position]

        # contract
        merged = state.copy()
        merged.join(e.u, e.v, 0)
        bound = self._contracted_bound(merged)
        if bound is not None and max(bound, forced) <= self.threshold:
            self._branch(position + 1, merged, forced)

        # delete into the cut
        split = state.copy()
        split.join(e.u, e.v, 1)
        cut_weight = forced + self.weights[e.id]
        if cut_weight <= self.threshold:
            self._branch(position + 1, split, cut_weight)


def enumerate_near_min_cuts(G: MultiGraph, weight: WeightSpec, alpha=1) -> CutCollection:
    """All cut sides of weight at most alpha times the global minimum cut, sorted by (weight, side)."""
    alpha = as_rational(alpha)
    if alpha < 1:
        raise ValueError(f"approximation radius must be >= 1, got {alpha}")
    if G.vertex_count < 2:
        raise DisconnectedGraphError("cut enumeration needs at least two vertices")

    weights = edge_weights(G, weight)
    support = [e.id for e in G.edges if weights[e.id] > 0]
    if not is_connected(G, support):
        raise DisconnectedGraphError("positive-weight support of the graph is disconnected")

    reference = min_cut_value(G, dict(enumerate(weights)))

    found = NearMinCutEnumerator(G, weights, alpha * reference).run()
    ordered = sorted(found.items(), key=lambda item: (item[1], item[0]))
    return CutCollection(
        cuts=tuple(side for side, _ in ordered),
        reference_value=reference,
        approximation_radius=alpha,
        values=tuple(value for _, value in ordered),
    )


def k_edge_cut_collection(G: MultiGraph, edge_ids: Iterable[int], k: int) -> CutCollection:
    """Canonical sides S with exactly k edges of F in the cut; F must be k-edge-connected."""
    F = set(edge_ids)
    unit = {i: 1 for i in F}
    if G.vertex_count < 2:
        return CutCollection((), Fraction(0), Fraction(1))

    value = min_cut_value(G, unit)
    if value < k:
        raise NotKEdgeConnectedError(f"subgraph has a cut of size {value} < k = {k}")
    if value > k:
        return CutCollection((), value, Fraction(1))
    return enumerate_near_min_cuts(G, unit, 1)
