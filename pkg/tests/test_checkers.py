#!/usr/bin/env python3
"""
Feasibility checkers, compared with the literal failure-set definition on random instances.
"""

import random
import sys
from itertools import combinations
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent / 'src'))

import pytest

from graphs.multigraph import build_graph
from interface.generators import gen_random
from optimization.checkers import (
    check_1k, check_cap_kecss, check_k1, check_pq, find_deficient_cut, is_deficient, is_feasible,
)
from optimization.data_interface import CapEcssInstance, FgcInstance
from optimization.oracle import brute_force_feasible


def cycle(n, unsafe=()):
    return build_graph(n, [(v, (v + 1) % n, 1, "U" if v in unsafe else "S") for v in range(n)])


def complete_graph(n, label="S"):
    return build_graph(n, [(u, v, 1, label) for u, v in combinations(range(n), 2)])


def test_check_1k_examples():
    triangle = build_graph(3, [(0, 1, 1, "U"), (1, 2, 1, "U"), (0, 2, 1, "U")])
    inst = FgcInstance(triangle, 1, 1)
    assert check_1k(inst, {0, 1, 2})
    assert not check_1k(inst, {0, 1})

    tree = build_graph(4, [(0, 1, 1, "S"), (1, 2, 1, "S"), (1, 3, 1, "S")])
    for k in (1, 2, 3):
        assert check_1k(FgcInstance(tree, 1, k), {0, 1, 2})

    with pytest.raises(ValueError):
        check_1k(FgcInstance(tree, 2, 1), {0, 1, 2})


def test_check_k1_examples():
    assert check_k1(FgcInstance(cycle(4), 2, 1), range(4))
    assert not check_k1(FgcInstance(cycle(4, unsafe={1}), 2, 1), range(4))


def test_check_pq_examples():
    assert check_pq(FgcInstance(complete_graph(4), 2, 1), range(6))
    assert not check_pq(FgcInstance(cycle(4, unsafe={1}), 2, 1), range(4))
    assert check_pq(FgcInstance(complete_graph(4), 2, 2), range(6))
    assert not check_pq(FgcInstance(complete_graph(4, "U"), 2, 2), range(6))


def test_single_vertex_is_always_feasible():
    lone = build_graph(1, [])
    assert check_1k(FgcInstance(lone, 1, 2), [])
    assert check_pq(FgcInstance(lone, 3, 3), [])
    assert check_cap_kecss(CapEcssInstance(lone, 4), [])


def test_check_cap_kecss_examples():
    G = build_graph(2, [(0, 1, 3, "S", 2), (0, 1, 1, "S", 1), (0, 1, 1, "S", 1)])
    inst = CapEcssInstance(G, 2)
    assert check_cap_kecss(inst, {0})
    assert check_cap_kecss(inst, {1, 2})
    assert not check_cap_kecss(inst, {1})


def random_pair(rng, seed):
    n = rng.randint(2, 7)
    m = rng.randint(n - 1, 14)
    p = rng.randint(1, 3)
    q = rng.randint(0, 4 - p)
    inst = gen_random(n, m, safe_probability=rng.random(), cost_range=(1, 1),
                      seed=seed, p=p, q=q, repair=False)
    F = frozenset(i for i in range(inst.graph.m) if rng.random() < 0.75)
    return inst, F


def test_checkers_match_the_failure_set_definition():
    rng = random.Random(2718)
    disagreements = []
    for seed in range(500):
        inst, F = random_pair(rng, seed)
        expected = brute_force_feasible(inst, F)
        if check_pq(inst, F) != expected or is_feasible(inst, F) != expected:
            disagreements.append((seed, inst.p, inst.q, sorted(F)))
            continue
        side = find_deficient_cut(inst, F)
        assert (side is None) == expected
        if side is not None:
            assert is_deficient(inst.graph, side, F, inst.p, inst.q)
    assert disagreements == []


def test_specialised_checkers_agree_with_check_pq():
    rng = random.Random(161)
    for seed in range(200):
        n = rng.randint(2, 7)
        k = rng.randint(1, 3)
        inst_1k = gen_random(n, rng.randint(n - 1, 12), safe_probability=0.4, seed=seed, p=1, q=k, repair=False)
        F = frozenset(i for i in range(inst_1k.graph.m) if rng.random() < 0.8)
        assert check_1k(inst_1k, F) == check_pq(inst_1k, F)

        inst_k1 = FgcInstance(inst_1k.graph, k, 1)
        assert check_k1(inst_k1, F) == check_pq(inst_k1, F)
        if k == 1:
            assert check_k1(inst_k1, F) == check_1k(FgcInstance(inst_1k.graph, 1, 1), F)


if __name__ == "__main__":
    test_check_1k_examples()
    test_check_k1_examples()
    test_check_pq_examples()
    test_single_vertex_is_always_feasible()
    test_check_cap_kecss_examples()
    test_checkers_match_the_failure_set_definition()
    test_specialised_checkers_agree_with_check_pq()
    print("checkers: all checks passed")
