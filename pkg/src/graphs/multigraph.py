# src/graphs/multigraph.py

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .exceptions import GraphConstructionError, InvalidCutError

logger = logging.getLogger(__name__)

Rational = Fraction


class Label(str, Enum):
    SAFE = "S"
    UNSAFE = "U"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Label):
            return value
        text = str(value).strip().upper()
        if text in ("S", "SAFE"):
            return cls.SAFE
        if text in ("U", "UNSAFE"):
            return cls.UNSAFE
        raise ValueError(f"unknown edge label {value!r}")


def as_rational(value) -> Fraction:
    """Exact rational from int, Fraction, 'a/b' or decimal text (floats go through str)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class EdgeRecord:
    id: int
    u: int
    v: int
    cost: Fraction
    label: Label = Label.UNSAFE
    capacity: int = 1
    origin: int = -1

    @property
    def endpoints(self) -> Tuple[int, int]:
        return (self.u, self.v)

    @property
    def is_safe(self) -> bool:
        return self.label is Label.SAFE

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class MultiGraph:
    """
    Undirected multigraph on vertices 0..n-1.

    Edge ids are dense (0..m-1) and the edge order is the canonical
    tie-breaking order. `origin` points back to the id in the graph the
    edge was first built in, so contracted or restricted graphs can be
    mapped back.
    """
    vertex_count: int
    edges: Tuple[EdgeRecord, ...] = field(default_factory=tuple)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def edge(self, edge_id: int) -> EdgeRecord:
        return self.edges[edge_id]

    def edge_ids(self) -> FrozenSet[int]:
        return frozenset(range(len(self.edges)))

    def safe_ids(self) -> FrozenSet[int]:
        return frozenset(e.id for e in self.edges if e.is_safe)

    def unsafe_ids(self) -> FrozenSet[int]:
        return frozenset(e.id for e in self.edges if not e.is_safe)

    def total_cost(self, edge_ids: Iterable[int]) -> Fraction:
        return sum((self.edges[i].cost for i in edge_ids), Fraction(0))

    def adjacency(self, edge_ids: Optional[Iterable[int]] = None) -> Dict[int, List[Tuple[int, int]]]:
        """vertex -> [(neighbor, edge id)] sorted by (neighbor, edge id)."""
        ids = range(self.m) if edge_ids is None else edge_ids
        adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self.vertices}
        for i in ids:
            e = self.edges[i]
            adj[e.u].append((e.v, i))
            adj[e.v].append((e.u, i))
        for v in adj:
            adj[v].sort()
        return adj


@dataclass(frozen=True, order=True)
class CutSide:
    """One side S of a cut, stored canonically so that vertex 0 is never in S."""
    members: Tuple[int, ...]

    @classmethod
    def canonical(cls, vertex_set: Iterable[int], vertex_count: int) -> "CutSide":
        S = frozenset(vertex_set)
        if not S or len(S) >= vertex_count:
            raise InvalidCutError(f"cut side must be nonempty and proper, got {sorted(S)}")
        if any(v < 0 or v >= vertex_count for v in S):
            raise InvalidCutError(f"cut side {sorted(S)} has vertices outside 0..{vertex_count - 1}")
        if 0 in S:
            S = frozenset(range(vertex_count)) - S
            if len(S) == 0:
                raise InvalidCutError("cut side covers every vertex")
        return cls(tuple(sorted(S)))

    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    def complement(self, vertex_count: int) -> FrozenSet[int]:
        return frozenset(range(vertex_count)) - self.as_set()

    def __contains__(self, vertex) -> bool:
        return vertex in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def build_graph(n: int, edge_descriptions: Sequence) -> MultiGraph:
    """
    Build a MultiGraph from (u, v, cost[, label[, capacity]]) tuples.

    Ids are assigned 0..m-1 in input order.
    """
    if n < 1:
        raise GraphConstructionError(f"vertex count must be positive, got {n}")

    records = []
    for index, desc in enumerate(edge_descriptions):
        if len(desc) < 3:
            raise GraphConstructionError(f"edge {index}: expected (u, v, cost[, label[, capacity]])")
        u, v, raw_cost = desc[0], desc[1], desc[2]
        label = Label.parse(desc[3]) if len(desc) > 3 else Label.UNSAFE
        capacity = int(desc[4]) if len(desc) > 4 else 1

        if not (0 <= u < n and 0 <= v < n):
            raise GraphConstructionError(f"edge {index}: endpoint out of range 0..{n - 1}")
        if u == v:
            raise GraphConstructionError(f"edge {index}: self-loop at vertex {u}")
        try:
            cost = as_rational(raw_cost)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphConstructionError(f"edge {index}: bad cost {raw_cost!r}") from exc
        if cost < 0:
            raise GraphConstructionError(f"edge {index}: negative cost {cost}")
        if capacity < 0:
            raise GraphConstructionError(f"edge {index}: negative capacity {capacity}")

        records.append(EdgeRecord(index, int(u), int(v), cost, label, capacity, index))

    return MultiGraph(n, tuple(records))


def cut_edges(G: MultiGraph, S, edge_ids: Optional[Iterable[int]] = None) -> List[int]:
    """Edge ids with exactly one endpoint in S, in id order (optionally restricted to edge_ids)."""
    side = S if isinstance(S, CutSide) else CutSide.canonical(S, G.vertex_count)
    members = side.as_set()
    ids = range(G.m) if edge_ids is None else sorted(edge_ids)
    return [i for i in ids if (G.edges[i].u in members) != (G.edges[i].v in members)]


def crossing(G: MultiGraph, vertex_set: FrozenSet[int], edge_ids: Iterable[int]) -> List[int]:
    """Like cut_edges but for a raw vertex set (no canonicalization or validation)."""
    return [i for i in edge_ids if (G.edges[i].u in vertex_set) != (G.edges[i].v in vertex_set)]


def components(G: MultiGraph, edge_ids: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
    """Connected components of (V, F), ordered by their smallest vertex."""
    forest = UnionFind(G.vertices)
    for i in (range(G.m) if edge_ids is None else edge_ids):
        forest.union(G.edges[i].u, G.edges[i].v)
    groups = [frozenset(g) for g in forest.to_sets()]
    return sorted(groups, key=min)


def is_connected(G: MultiGraph, edge_ids: Optional[Iterable[int]] = None) -> bool:
    return len(components(G, edge_ids)) == 1


def contract(G: MultiGraph, edge_ids: Iterable[int]) -> Tuple[MultiGraph, Tuple[int, ...]]:
    """
    Contract every component of (V, F) into one vertex.

    Self-loops are dropped and parallel edges kept; new vertices are numbered
    by the smallest old vertex they contain. Returns the contracted graph and
    vertex_map[old] = new.
    """
    F = set(edge_ids)
    for i in F:
        if not 0 <= i < G.m:
            raise GraphConstructionError(f"edge id {i} not in graph")

    groups = components(G, F)
    vertex_map = [0] * G.vertex_count
    for new, group in enumerate(groups):
        for v in group:
            vertex_map[v] = new

    records = []
    for e in G.edges:
        a, b = vertex_map[e.u], vertex_map[e.v]
        if e.id in F or a == b:
            continue
        records.append(replace(e, id=len(records), u=a, v=b))

    H = MultiGraph(len(groups), tuple(records))
    logger.debug("Contracted %d edges: %d -> %d vertices, %d edges kept",
                 len(F), G.vertex_count, H.vertex_count, H.m)
    return H, tuple(vertex_map)


def subgraph(G: MultiGraph, edge_ids: Iterable[int]) -> MultiGraph:
    """Spanning subgraph with only the given edges, renumbered densely; origins are kept."""
    records = []
    for i in sorted(set(edge_ids)):
        records.append(replace(G.edges[i], id=len(records)))
    return MultiGraph(G.vertex_count, tuple(records))


def unsafe_bridges(G: MultiGraph, edge_ids: Optional[Iterable[int]] = None) -> List[int]:
    """Unsafe edges whose removal disconnects (V, F)."""
    F = set(range(G.m) if edge_ids is None else edge_ids)
    base = len(components(G, F))
    return [i for i in sorted(F)
            if not G.edges[i].is_safe and len(components(G, F - {i})) > base]
