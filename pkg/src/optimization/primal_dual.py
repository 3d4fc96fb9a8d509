# src/optimization/primal_dual.py

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from graphs.cuts import CutCollection
from graphs.multigraph import CutSide, MultiGraph, crossing

from .exceptions import AugmentationInfeasibleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RequirementOracle:
    """
    0/1 requirement f over vertex sets of `ground_graph`.

    f(S) = 1 iff the canonical side of S is in `active_cuts` and, with
    `unsafe_filter`, some unsafe edge of `first_stage` crosses S.
    """
    ground_graph: MultiGraph
    active_cuts: CutCollection
    first_stage: FrozenSet[int] = frozenset()
    unsafe_filter: bool = True
    required: FrozenSet[CutSide] = field(init=False, repr=False)

    def __post_init__(self):
        G = self.ground_graph
        unsafe_first_stage = [i for i in sorted(self.first_stage) if not G.edges[i].is_safe]
        required = []
        for side in self.active_cuts.cuts:
            if not self.unsafe_filter or crossing(G, side.as_set(), unsafe_first_stage):
                required.append(side)
        object.__setattr__(self, 'required', frozenset(required))

    @property
    def vertex_count(self) -> int:
        return self.ground_graph.vertex_count

    def __call__(self, vertex_set: Iterable[int]) -> int:
        S = frozenset(vertex_set)
        if not S or len(S) >= self.vertex_count:
            return 0
        return int(CutSide.canonical(S, self.vertex_count) in self.required)

    def required_sides(self) -> List[CutSide]:
        return sorted(self.required)


def build_requirement(C: CutCollection, F1: Iterable[int], G: MultiGraph) -> RequirementOracle:
    """f(S) = 1 iff S is one of the k-edge-cuts of (V, F1) and an unsafe F1 edge crosses it."""
    return RequirementOracle(G, C, frozenset(F1), unsafe_filter=True)


@dataclass
class DualState:
    """
    Duals grown by the primal-dual method, keyed by the grown vertex set.

    Both sides of a cut can carry duals of their own, so keys are raw
    vertex sets rather than canonical cut sides.
    """
    dual_values: Dict[FrozenSet[int], Fraction] = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return sum(self.dual_values.values(), Fraction(0))

    def load_on(self, G: MultiGraph, edge_id: int) -> Fraction:
        e = G.edges[edge_id]
        return sum((y for S, y in self.dual_values.items() if (e.u in S) != (e.v in S)), Fraction(0))

    def is_feasible(self, G: MultiGraph) -> bool:
        return all(y >= 0 for y in self.dual_values.values()) and \
            all(self.load_on(G, e.id) <= e.cost for e in G.edges)


def _uncovered_sides(oracle: RequirementOracle, G: MultiGraph, F: Iterable[int]) -> List[CutSide]:
    chosen = sorted(F)
    return [side for side in oracle.required_sides() if not crossing(G, side.as_set(), chosen)]


def _minimal_violated(oracle: RequirementOracle, G: MultiGraph, F: Iterable[int]) -> List[FrozenSet[int]]:
    """All inclusion-minimal violated vertex sets, both sides of every uncovered cut considered."""
    n = oracle.vertex_count
    violated = []
    for side in _uncovered_sides(oracle, G, F):
        violated.append(side.as_set())
        violated.append(side.complement(n))
    minimal = [S for S in violated if not any(T < S for T in violated)]
    return sorted(set(minimal), key=lambda S: (len(S), sorted(S)))


def minimal_violated_sets(oracle: RequirementOracle, F: Iterable[int],
                          G: Optional[MultiGraph] = None) -> List[CutSide]:
    """
    Inclusion-minimal violated sets S with f(S) = 1 that F does not cross.

    Sets are found by scanning the explicit cut collection. Only the
    minimal sets avoiding vertex 0 are reported (their complements are the
    mirror images). F holds edge ids of G, the ground graph by default.
    """
    graph = oracle.ground_graph if G is None else G
    return sorted(CutSide(tuple(sorted(S))) for S in _minimal_violated(oracle, graph, F) if 0 not in S)


def is_feasible_augmentation(oracle: RequirementOracle, F: Iterable[int],
                             G: Optional[MultiGraph] = None) -> bool:
    graph = oracle.ground_graph if G is None else G
    return not _uncovered_sides(oracle, graph, F)


def wgmv_solve(G_aug: MultiGraph, oracle: RequirementOracle) -> Tuple[FrozenSet[int], DualState]:
    """
    Primal-dual 2-approximation for covering an uncrossable requirement.

    Each phase raises the duals of all minimal violated sets uniformly until
    an edge goes tight, adds the tight edge with the smallest id, and
    recomputes the minimal violated sets. A final reverse-delete pass drops
    redundant edges in reverse order of addition.
    """
    if G_aug.vertex_count != oracle.vertex_count:
        raise ValueError("augmentation graph and requirement live on different vertex sets")

    dual = DualState()
    load = {e.id: Fraction(0) for e in G_aug.edges}
    added: List[int] = []
    chosen = set()
    phase = 0

    while True:
        active = _minimal_violated(oracle, G_aug, chosen)
        if not active:
            break
        phase += 1

        hits: Dict[int, int] = {}
        for S in active:
            candidates = [i for i in crossing(G_aug, S, range(G_aug.m)) if i not in chosen]
            if not candidates:
                raise AugmentationInfeasibleError(
                    f"augmentation infeasible: no edge crosses required set {sorted(S)}")
            for i in candidates:
                hits[i] = hits.get(i, 0) + 1

        step = None
        tight = None
        for i in sorted(hits):
            ratio = (G_aug.edges[i].cost - load[i]) / hits[i]
            if step is None or ratio < step:
                step, tight = ratio, i

        for S in active:
            dual.dual_values[S] = dual.dual_values.get(S, Fraction(0)) + step
        for i, count in hits.items():
            load[i] += step * count

        added.append(tight)
        chosen.add(tight)
        logger.debug("Phase %d: %d active sets, step %s, edge %d tight", phase, len(active), step, tight)

    for i in reversed(added):
        if is_feasible_augmentation(oracle, chosen - {i}, G_aug):
            chosen.discard(i)

    F2 = frozenset(chosen)
    logger.info("Primal-dual augmentation: %d edges, cost %s, dual %s",
                len(F2), G_aug.total_cost(F2), dual.total)
    return F2, dual


def _all_proper_subsets(n: int) -> List[FrozenSet[int]]:
    vertices = range(n)
    return [frozenset(c) for size in range(1, n) for c in combinations(vertices, size)]


def _vertex_count_of(oracle: Callable, vertex_count: Optional[int]) -> int:
    if vertex_count is not None:
        return vertex_count
    return oracle.vertex_count


def _value(f: Callable, S: FrozenSet[int], n: int) -> int:
    if not S or len(S) >= n:
        return 0
    return int(f(S))


def is_uncrossable_bruteforce(oracle: Callable, vertex_count: Optional[int] = None) -> bool:
    """Symmetry plus the uncrossing condition over every pair of requirement-1 sets."""
    n = _vertex_count_of(oracle, vertex_count)
    everything = frozenset(range(n))
    subsets = _all_proper_subsets(n)
    for S in subsets:
        if _value(oracle, S, n) != _value(oracle, everything - S, n):
            return False

    ones = [S for S in subsets if _value(oracle, S, n)]
    for A, B in combinations(ones, 2):
        if _value(oracle, A & B, n) and _value(oracle, A | B, n):
            continue
        if _value(oracle, A - B, n) and _value(oracle, B - A, n):
            continue
        return False
    return True


def has_maximality_bruteforce(oracle: Callable, vertex_count: Optional[int] = None) -> bool:
    """f(A ∪ B) <= max(f(A), f(B)) for all disjoint nonempty A, B."""
    n = _vertex_count_of(oracle, vertex_count)
    subsets = _all_proper_subsets(n)
    for A in subsets:
        for B in subsets:
            if A & B or len(A | B) >= n:
                continue
            if _value(oracle, A | B, n) > max(_value(oracle, A, n), _value(oracle, B, n)):
                return False
    return True


def is_weakly_supermodular_bruteforce(oracle: Callable, vertex_count: Optional[int] = None) -> bool:
    """f(A) + f(B) <= max(f(A∩B) + f(A∪B), f(A−B) + f(B−A)) for all A, B."""
    n = _vertex_count_of(oracle, vertex_count)
    subsets = _all_proper_subsets(n)
    for A in subsets:
        for B in subsets:
            lhs = _value(oracle, A, n) + _value(oracle, B, n)
            if lhs == 0:
                continue
            rhs = max(_value(oracle, A & B, n) + _value(oracle, A | B, n),
                      _value(oracle, A - B, n) + _value(oracle, B - A, n))
            if lhs > rhs:
                return False
    return True
