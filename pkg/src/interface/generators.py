# src/interface/generators.py

import logging
import random
from typing import List, Tuple

from graphs.multigraph import Label, build_graph

from optimization.checkers import find_deficient_cut
from optimization.data_interface import CapEcssInstance, FgcInstance

logger = logging.getLogger(__name__)


def gen_figure1(n: int) -> FgcInstance:
    """
    Unweighted (1,1)-FGC family on 2n vertices.

    Unsafe unit edges form the Hamiltonian cycle 0-1-...-(2n-1)-0 and safe
    unit edges join every odd vertex 1, 3, ..., 2n-3 to vertex 2n-1. Every
    feasible solution needs the whole cycle.
    """
    if n < 2:
        raise ValueError(f"figure-1 family needs n >= 2, got {n}")
    size = 2 * n
    edges = [(i, (i + 1) % size, 1, Label.UNSAFE) for i in range(size)]
    edges += [(2 * i - 1, size - 1, 1, Label.SAFE) for i in range(1, n)]
    return FgcInstance(build_graph(size, edges), 1, 1)


def _random_edge(rng: random.Random, n: int, safe_probability: float, cost_range, cap_range,
                 endpoints: Tuple[int, int] = None) -> tuple:
    u, v = endpoints if endpoints else rng.sample(range(n), 2)
    label = Label.SAFE if rng.random() < safe_probability else Label.UNSAFE
    return (u, v, rng.randint(*cost_range), label, rng.randint(*cap_range))


def gen_random(n: int, m: int, safe_probability: float = 0.5, cost_range=(1, 10), cap_range=(1, 1),
               seed: int = 0, problem: str = "fgc", p: int = 1, q: int = 1, k: int = 2,
               repair: bool = True, max_repairs: int = 200):
    """
    Connected random multigraph instance, deterministic under `seed`.

    A random spanning tree is laid down first and the remaining m-n+1 edges
    join uniformly random vertex pairs. With `repair`, edges are added
    across violated cuts until the instance is feasible.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if m < n - 1:
        raise ValueError(f"cannot connect {n} vertices with {m} edges")
    if n == 1 and m > 0:
        raise ValueError("a single vertex cannot carry edges")
    rng = random.Random(seed)

    edges: List[tuple] = []
    order = list(range(n))
    rng.shuffle(order)
    for position in range(1, n):
        parent = order[rng.randrange(position)]
        edges.append(_random_edge(rng, n, safe_probability, cost_range, cap_range, (parent, order[position])))
    while len(edges) < m:
        edges.append(_random_edge(rng, n, safe_probability, cost_range, cap_range))

    def assemble(descs):
        graph = build_graph(n, descs)
        if problem == "capk":
            return CapEcssInstance(graph, k)
        if problem != "fgc":
            raise ValueError(f"unknown problem {problem!r}")
        return FgcInstance(graph, p, q)

    inst = assemble(edges)
    if not repair:
        return inst

    for _ in range(max_repairs):
        side = find_deficient_cut(inst, inst.graph.edge_ids())
        if side is None:
            return inst
        inside = rng.choice(list(side))
        outside = rng.choice(sorted(set(range(n)) - side.as_set()))
        edges.append(_random_edge(rng, n, safe_probability, cost_range, (max(cap_range[0], 1), max(cap_range[1], 1)),
                                  (inside, outside)))
        inst = assemble(edges)
        logger.debug("Repair: added edge %d-%d across cut %s", inside, outside, list(side))

    raise ValueError(f"could not repair random instance (seed {seed}) within {max_repairs} added edges")
