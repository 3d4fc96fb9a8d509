# src/optimization/data_interface.py

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from graphs.exceptions import DisconnectedGraphError
from graphs.multigraph import MultiGraph, as_rational, is_connected


@dataclass(frozen=True)
class FgcInstance:
    """(p,q)-FGC: keep (V,F) p-edge-connected after any q unsafe edges fail."""
    graph: MultiGraph
    p: int = 1
    q: int = 1

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.q < 0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if not is_connected(self.graph):
            raise DisconnectedGraphError("FGC instance graph must be connected")

    @property
    def problem(self) -> str:
        return "fgc"

    def is_unweighted(self) -> bool:
        return all(e.cost == 1 for e in self.graph.edges)


@dataclass(frozen=True)
class CapEcssInstance:
    """Cap-k-ECSS: every cut of the chosen edges must carry capacity >= k."""
    graph: MultiGraph
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def problem(self) -> str:
        return "capk"

    @property
    def u_max(self) -> int:
        return max((e.capacity for e in self.graph.edges), default=0)

    @property
    def u_min(self) -> int:
        return min((e.capacity for e in self.graph.edges), default=0)

    def normalized(self) -> "CapEcssInstance":
        """Drop zero-capacity edges and clamp capacities at k; origins point at this graph's ids."""
        records = []
        for e in self.graph.edges:
            if e.capacity <= 0:
                continue
            records.append(replace(e, id=len(records), capacity=min(e.capacity, self.k), origin=e.id))
        return CapEcssInstance(MultiGraph(self.graph.vertex_count, tuple(records)), self.k)


# Guarantee of the arborescence-based k-ECSS routine used when nothing is plugged in.
BUILTIN_ECSS_FACTOR = Fraction(2)


@dataclass(frozen=True)
class SolverConfig:
    """
    Knobs shared by the solvers.

    two_ecss_factor / k_ecss_factor declare the guarantee of the plugged
    unweighted 2-ECSS / k-ECSS subroutines; all reported guarantees are
    computed from them. A plugged subroutine takes a MultiGraph (and k for
    k-ECSS) and returns an edge-id set of that graph.
    Without a plugged subroutine the built-in arborescence routine runs,
    whose factor is BUILTIN_ECSS_FACTOR; a smaller declared factor is rejected.
    random_seed is handed to CBC.
    """
    two_ecss_factor: Fraction = Fraction(2)
    k_ecss_factor: Fraction = Fraction(2)
    random_seed: int = 0
    two_ecss_solver: Optional[Callable[[MultiGraph], FrozenSet[int]]] = None
    k_ecss_solver: Optional[Callable[[MultiGraph, int], FrozenSet[int]]] = None
    time_limit: int = 60

    def __post_init__(self):
        object.__setattr__(self, 'two_ecss_factor', as_rational(self.two_ecss_factor))
        object.__setattr__(self, 'k_ecss_factor', as_rational(self.k_ecss_factor))
        if self.two_ecss_factor < 1 or self.k_ecss_factor < 1:
            raise ValueError("approximation factors must be >= 1")
        if self.two_ecss_solver is None and self.two_ecss_factor < BUILTIN_ECSS_FACTOR:
            raise ValueError(f"two_ecss_factor {self.two_ecss_factor} < {BUILTIN_ECSS_FACTOR} needs a plugged two_ecss_solver")
        if self.k_ecss_solver is None and self.k_ecss_factor < BUILTIN_ECSS_FACTOR:
            raise ValueError(f"k_ecss_factor {self.k_ecss_factor} < {BUILTIN_ECSS_FACTOR} needs a plugged k_ecss_solver")


@dataclass
class SolveReport:
    """Result of one solver run; `cost` and bounds are exact."""
    algorithm: str
    solution: FrozenSet[int]
    cost: Fraction
    guarantee: Fraction
    lower_bound: Optional[Fraction] = None
    iterations: int = 0
    stage_costs: List[Fraction] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class HittingSetProblem:
    """Elements 0..len(costs)-1 with costs; every set must be hit by a chosen element."""
    costs: Tuple[Fraction, ...]
    sets: Tuple[FrozenSet[int], ...]
    labels: Tuple[Any, ...] = ()

    @classmethod
    def from_labeled(cls, costs: Dict[Any, Any], sets: Sequence) -> "HittingSetProblem":
        """Build from arbitrary element labels (e.g. edge ids); labels are kept in sorted order."""
        labels = tuple(sorted(costs))
        position = {label: i for i, label in enumerate(labels)}
        return cls(
            costs=tuple(as_rational(costs[label]) for label in labels),
            sets=tuple(frozenset(position[x] for x in s) for s in sets),
            labels=labels,
        )

    def label_of(self, element: int):
        return self.labels[element] if self.labels else element

    def cost_of(self, elements) -> Fraction:
        return sum((self.costs[i] for i in elements), Fraction(0))
