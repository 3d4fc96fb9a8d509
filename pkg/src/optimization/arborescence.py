# src/optimization/arborescence.py

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import networkx as nx
import pulp

from graphs.multigraph import MultiGraph

from .exceptions import ArborescenceSolverError, DecompositionError, NoArborescenceError

logger = logging.getLogger(__name__)

# Tolerance for reading LP values back from CBC.
LP_TOLERANCE = 1e-6
# Relative error tolerated on a node LP objective before it is trusted as a bound.
BOUND_TOLERANCE = Fraction(1, 10**6)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    cost: Fraction
    origin: int


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on 0..n-1; arcs are addressed by their list index."""
    vertex_count: int
    arcs: Tuple[Arc, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for index, arc in enumerate(self.arcs):
            if arc.tail == arc.head:
                raise ValueError(f"arc {index}: self-loop at vertex {arc.tail}")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def cost_of(self, arc_ids: Iterable[int]) -> Fraction:
        return sum((self.arcs[a].cost for a in arc_ids), Fraction(0))


@dataclass(frozen=True)
class KArborescence:
    root: int
    k: int
    arc_ids: Tuple[int, ...]
    cost: Fraction = Fraction(0)


def bidirect(G: MultiGraph, multiplicity: Union[Mapping[int, int], Callable[[int], int]]) -> Digraph:
    """multiplicity(e) bidirected pairs (u,v),(v,u) per edge, each remembering e as its origin."""
    count = multiplicity if callable(multiplicity) else (lambda i: multiplicity.get(i, 0))
    arcs: List[Arc] = []
    for e in G.edges:
        copies = int(count(e.id))
        if copies < 0:
            raise ValueError(f"edge {e.id}: negative multiplicity {copies}")
        for _ in range(copies):
            arcs.append(Arc(e.u, e.v, e.cost, e.id))
            arcs.append(Arc(e.v, e.u, e.cost, e.id))
    return Digraph(G.vertex_count, tuple(arcs))


def _flow_network(n: int, arcs: Iterable[Tuple[int, int]], capacities: Iterable) -> nx.DiGraph:
    """Collapse parallel arcs into one capacitated arc."""
    H = nx.DiGraph()
    H.add_nodes_from(range(n))
    for (tail, head), cap in zip(arcs, capacities):
        if H.has_edge(tail, head):
            H[tail][head]['capacity'] += cap
        else:
            H.add_edge(tail, head, capacity=cap)
    return H


def _rooted_connectivity_at_least(n: int, arcs: List[Tuple[int, int]], r: int, k: int) -> bool:
    """True iff every v != r receives k arc-disjoint paths from r."""
    if k <= 0 or n == 1:
        return True
    H = _flow_network(n, arcs, [1] * len(arcs))
    for v in range(n):
        if v == r:
            continue
        if nx.maximum_flow_value(H, r, v) < k:
            return False
    return True


def has_k_arborescence(D: Digraph, r: int, k: int) -> bool:
    """Menger test: min over v != r of the r->v max flow (unit arc capacities) is at least k."""
    return _rooted_connectivity_at_least(D.vertex_count, [(a.tail, a.head) for a in D.arcs], r, k)


def _cost_granularity(D: Digraph) -> Fraction:
    """Smallest positive difference between the costs of two arc sets: 1 / lcm of the denominators."""
    return Fraction(1, math.lcm(*(a.cost.denominator for a in D.arcs))) if D.arcs else Fraction(1)


def _scaled_costs(D: Digraph) -> List[int]:
    """Arc costs as exact integers (costs divided by the granularity)."""
    granularity = _cost_granularity(D)
    return [int(a.cost / granularity) for a in D.arcs]


def _min_arborescence_edmonds(D: Digraph, r: int) -> Tuple[int, ...]:
    """
    k = 1 via networkx's Edmonds implementation.

    Arcs into r are removed so r is the only possible root. Parallel arcs
    keep their cheapest lowest-index member, and the weight carries the
    arc index in its low digits so that the optimum is unique and prefers
    lower indices.
    """
    costs = _scaled_costs(D)
    spread = D.vertex_count * max(D.arc_count, 1) + 1
    H = nx.DiGraph()
    H.add_nodes_from(range(D.vertex_count))
    for index, arc in enumerate(D.arcs):
        if arc.head == r:
            continue
        weight = costs[index] * spread + index
        if H.has_edge(arc.tail, arc.head) and H[arc.tail][arc.head]['weight'] <= weight:
            continue
        H.add_edge(arc.tail, arc.head, weight=weight, index=index)

    try:
        B = nx.minimum_spanning_arborescence(H, attr='weight', preserve_attrs=True)
    except nx.NetworkXException as exc:
        raise NoArborescenceError(f"no 1-arborescence rooted at {r}") from exc
    return tuple(sorted(data['index'] for _, _, data in B.edges(data=True)))


class KArborescenceSolver:
    """
    Exact minimum-cost r-rooted k-arborescence by branch-and-cut.

    The LP relaxation starts from the in-degree equalities
    x(δ^in(v)) = k for v != r. Violated cut constraints x(δ^in(S)) >= k
    are separated lazily with an r->v minimum cut per vertex and kept in a
    global pool. Branching fixes the lowest-index fractional arc.

    CBC only sees costs divided by the largest arc cost, as floats. Node
    bounds are turned back into exact lower bounds (widened by
    BOUND_TOLERANCE) and incumbents are compared on their exact cost, so a
    node is pruned only when it cannot hold an arc set cheaper than the
    incumbent by at least the cost granularity.
    """

    def __init__(self, D: Digraph, root: int, k: int, time_limit: int = 60, random_seed: int = 0):
        self.D = D
        self.root = root
        self.k = k
        self.time_limit = time_limit
        self.random_seed = random_seed
        self.model = None
        self.x_vars: Dict[int, pulp.LpVariable] = {}
        self.cut_pool: List[FrozenSet[int]] = []
        self.nodes_explored = 0
        self.solution: Optional[KArborescence] = None
        largest = max((a.cost for a in D.arcs), default=Fraction(0))
        self.cost_unit = largest if largest > 0 else Fraction(1)
        self.lp_costs = [float(a.cost / self.cost_unit) for a in D.arcs]
        self.granularity = _cost_granularity(D)

    def build_model(self):
        """Root LP: arc variables, normalised cost objective and in-degree equalities."""
        self.model = pulp.LpProblem("k_arborescence", pulp.LpMinimize)
        self._create_variables()
        self._set_objective()
        self._add_indegree_constraints()
        logger.debug("k-arborescence LP: %d variables, %d constraints",
                     len(self.x_vars), len(self.model.constraints))
        return self.model

    def _create_variables(self):
        """
        Continuous x_a in [0, 1] for every arc a not entering the root.

        Arcs into r can never belong to an r-rooted arborescence.
        """
        for index, arc in enumerate(self.D.arcs):
            if arc.head == self.root:
                continue
            self.x_vars[index] = pulp.LpVariable(f"x_{index}", lowBound=0, upBound=1)

    def _set_objective(self):
        """Min Σ_a (c_a / c_max) · x_a."""
        self.model += pulp.lpSum(self.lp_costs[a] * var for a, var in self.x_vars.items()), "arc_cost"

    def _add_indegree_constraints(self):
        """x(δ^in(v)) = k for every v != r."""
        for v in range(self.D.vertex_count):
            if v == self.root:
                continue
            incoming = [self.x_vars[a] for a in self.x_vars if self.D.arcs[a].head == v]
            self.model += (pulp.lpSum(incoming) == self.k, f"indegree_{v}")

    def _add_cut(self, S: FrozenSet[int]):
        """Add x(δ^in(S)) >= k to the model and to the global pool."""
        entering = [self.x_vars[a] for a in self.x_vars
                    if self.D.arcs[a].head in S and self.D.arcs[a].tail not in S]
        self.model += (pulp.lpSum(entering) >= self.k, f"cut_{len(self.cut_pool)}")
        self.cut_pool.append(S)

    def _separate(self, values: Dict[int, float]) -> List[FrozenSet[int]]:
        """Sink sides S (r not in S) with x(δ^in(S)) < k under the current LP point."""
        arcs = [(self.D.arcs[a].tail, self.D.arcs[a].head) for a in self.x_vars]
        H = _flow_network(self.D.vertex_count, arcs, [max(values[a], 0.0) for a in self.x_vars])
        violated = []
        seen = set(self.cut_pool)
        for v in range(self.D.vertex_count):
            if v == self.root:
                continue
            cut_value, (_, sink_side) = nx.minimum_cut(H, self.root, v)
            S = frozenset(sink_side)
            if cut_value < self.k - LP_TOLERANCE and S not in seen:
                seen.add(S)
                violated.append(S)
        return violated

    def _cbc(self) -> pulp.PULP_CBC_CMD:
        """CBC with the configured time limit and random seed."""
        return pulp.PULP_CBC_CMD(msg=0, timeLimit=self.time_limit, options=[f"randomSeed {self.random_seed}"])

    def _apply_fixings(self, fixings: Dict[int, int]):
        """Fix branched arcs to 0 or 1 and release every other arc to [0, 1]."""
        for a, var in self.x_vars.items():
            value = fixings.get(a)
            var.lowBound = 0 if value is None else value
            var.upBound = 1 if value is None else value

    def _solve_node(self, fixings: Dict[int, int]) -> Optional[Tuple[float, Dict[int, float]]]:
        """
        Solve one node LP to cut-closure.

        Returns None when CBC proves the node infeasible and raises
        ArborescenceSolverError on any other non-optimal status.
        """
        self._apply_fixings(fixings)
        while True:
            status = self.model.solve(self._cbc())
            if status == pulp.LpStatusInfeasible:
                return None
            if status != pulp.LpStatusOptimal:
                raise ArborescenceSolverError(
                    f"CBC returned {pulp.LpStatus[status]!r} on branch-and-cut node {self.nodes_explored} "
                    f"(k={self.k}, {len(self.x_vars)} arcs, time limit {self.time_limit}s)")
            values = {a: (var.varValue or 0.0) for a, var in self.x_vars.items()}
            violated = self._separate(values)
            if not violated:
                return pulp.value(self.model.objective) or 0.0, values
            for S in violated:
                self._add_cut(S)

    def solve(self) -> KArborescence:
        """
        Depth-first branch-and-cut.

        The 1-branch of each node is explored first. Raises
        NoArborescenceError when no integral k-arborescence exists and
        ArborescenceSolverError when CBC fails on a node.
        """
        if self.model is None:
            self.build_model()

        best_cost = None
        best_arcs = None
        stack: List[Dict[int, int]] = [{}]

        while stack:
            fixings = stack.pop()
            self.nodes_explored += 1
            result = self._solve_node(fixings)
            if result is None:
                continue
            bound, values = result
            if best_cost is not None and self._exact_lower_bound(bound) > best_cost - self.granularity:
                continue

            fractional = [a for a, x in values.items() if LP_TOLERANCE < x < 1 - LP_TOLERANCE]
            if not fractional:
                chosen = tuple(sorted(a for a, x in values.items() if x > 0.5))
                if self._is_k_arborescence(chosen):
                    cost = self.D.cost_of(chosen)
                    if best_cost is None or cost < best_cost:
                        best_cost, best_arcs = cost, chosen
                        logger.debug("Incumbent k-arborescence of cost %s", cost)
                    continue
                # rounded point violates a cut the float separation missed
                missed = self._separate({a: float(round(x)) for a, x in values.items()})
                for S in missed:
                    self._add_cut(S)
                if missed:
                    stack.append(fixings)
                continue

            arc = min(fractional)
            stack.append({**fixings, arc: 0})
            stack.append({**fixings, arc: 1})

        if best_arcs is None:
            raise NoArborescenceError(f"no {self.k}-arborescence rooted at {self.root}")

        self.solution = KArborescence(self.root, self.k, best_arcs, self.D.cost_of(best_arcs))
        logger.info("Minimum %d-arborescence: cost %s, %d B&C nodes, %d cuts",
                    self.k, self.solution.cost, self.nodes_explored, len(self.cut_pool))
        return self.solution

    def _exact_lower_bound(self, lp_value: float) -> Fraction:
        """Cost lower bound for every integral arc set below a node, from its normalised LP value."""
        value = Fraction(lp_value)
        return (value - BOUND_TOLERANCE * (1 + abs(value))) * self.cost_unit

    def _is_k_arborescence(self, arc_ids: Tuple[int, ...]) -> bool:
        return _satisfies_arborescence_invariants(self.D, self.root, self.k, arc_ids)


def _satisfies_arborescence_invariants(D: Digraph, r: int, k: int, arc_ids: Iterable[int]) -> bool:
    arc_ids = list(arc_ids)
    if len(arc_ids) != k * (D.vertex_count - 1):
        return False
    indegree = [0] * D.vertex_count
    for a in arc_ids:
        indegree[D.arcs[a].head] += 1
    if indegree[r] != 0 or any(indegree[v] != k for v in range(D.vertex_count) if v != r):
        return False
    return _rooted_connectivity_at_least(D.vertex_count, [(D.arcs[a].tail, D.arcs[a].head) for a in arc_ids], r, k)


def min_cost_k_arborescence(D: Digraph, r: int, k: int, method: str = "auto",
                            time_limit: int = 60, random_seed: int = 0) -> KArborescence:
    """
    Exact minimum-cost r-rooted k-arborescence.

    method="auto" uses Edmonds' algorithm for k = 1 and branch-and-cut
    otherwise; method="branch_and_cut" forces the LP-based solver.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= r < D.vertex_count:
        raise ValueError(f"root {r} outside 0..{D.vertex_count - 1}")
    if not has_k_arborescence(D, r, k):
        raise NoArborescenceError(f"no {k}-arborescence rooted at {r}")
    if D.vertex_count == 1:
        return KArborescence(r, k, (), Fraction(0))

    if k == 1 and method == "auto":
        arc_ids = _min_arborescence_edmonds(D, r)
        return KArborescence(r, 1, arc_ids, D.cost_of(arc_ids))
    if method not in ("auto", "branch_and_cut"):
        raise ValueError(f"unknown arborescence method {method!r}")
    return KArborescenceSolver(D, r, k, time_limit=time_limit, random_seed=random_seed).solve()


def decompose_k_arborescence(D: Digraph, T: KArborescence) -> List[Tuple[int, ...]]:
    """
    Split T into k arc-disjoint spanning arborescences rooted at T.root.

    Each arborescence is grown from the root by taking, in index order, the
    first arc leaving the reached set whose removal keeps the remaining
    arcs rooted-(i-1)-connected.
    """
    n, r = D.vertex_count, T.root
    if not _satisfies_arborescence_invariants(D, r, T.k, T.arc_ids):
        raise DecompositionError(f"arc set is not a {T.k}-arborescence rooted at {r}")

    remaining = sorted(T.arc_ids)
    parts: List[Tuple[int, ...]] = []
    for level in range(T.k, 0, -1):
        reached = {r}
        tree: List[int] = []
        while len(reached) < n:
            for a in remaining:
                arc = D.arcs[a]
                if arc.tail not in reached or arc.head in reached:
                    continue
                rest = [(D.arcs[b].tail, D.arcs[b].head) for b in remaining if b != a]
                if _rooted_connectivity_at_least(n, rest, r, level - 1):
                    tree.append(a)
                    reached.add(arc.head)
                    remaining.remove(a)
                    break
            else:
                raise DecompositionError("no extendable arc while growing an arborescence")
        parts.append(tuple(sorted(tree)))
    return parts


def project_arcs_to_edges(T: KArborescence, D: Digraph) -> FrozenSet[int]:
    """Origin edges of the arcs of T, each once."""
    return frozenset(D.arcs[a].origin for a in T.arc_ids)
