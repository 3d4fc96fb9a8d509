#!/usr/bin/env python3
"""
Requirement functions and the primal-dual augmentation used by the second stage of (k,1)-FGC.
"""

import random
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent / 'src'))

import pytest

from graphs.cuts import CutCollection, k_edge_cut_collection
from graphs.multigraph import CutSide, build_graph
from interface.generators import gen_random
from optimization.exceptions import AugmentationInfeasibleError
from optimization.primal_dual import (
    RequirementOracle, build_requirement, has_maximality_bruteforce, is_feasible_augmentation,
    is_uncrossable_bruteforce, is_weakly_supermodular_bruteforce, minimal_violated_sets, wgmv_solve,
)
from optimization.solvers import solve_k1


def requirement_of(G, k):
    F1 = G.edge_ids()
    return build_requirement(k_edge_cut_collection(G, F1, k), F1, G)


def maximality_counterexample():
    """Three vertices: doubled unsafe 0-1 plus unsafe 0-2 and 1-2."""
    G = build_graph(3, [(0, 1, 1, "U"), (0, 1, 1, "U"), (0, 2, 1, "U"), (1, 2, 1, "U")])
    return requirement_of(G, 2)


def supermodularity_counterexample():
    """Four vertices: unsafe 1-2, doubled safe 0-1 and 2-3, safe 3-0."""
    G = build_graph(4, [(1, 2, 1, "U"), (0, 1, 1, "S"), (0, 1, 1, "S"),
                        (2, 3, 1, "S"), (2, 3, 1, "S"), (3, 0, 1, "S")])
    return requirement_of(G, 2)


def nested_cuts():
    """Five vertices whose only 2-cuts are {4} and {3,4}, both carrying unsafe edges."""
    G = build_graph(5, [(3, 4, 1, "U"), (3, 4, 1, "U"), (1, 3, 1, "U"), (2, 3, 1, "S"),
                        (0, 1, 1, "S"), (0, 1, 1, "S"), (1, 2, 1, "S"), (1, 2, 1, "S"),
                        (0, 2, 1, "S"), (0, 2, 1, "S")])
    return requirement_of(G, 2)


def explicit_requirement(n, sides):
    ground = build_graph(n, [(0, v, 1) for v in range(1, n)])
    cuts = CutCollection(tuple(CutSide(s) for s in sides), Fraction(1), Fraction(1), tuple(Fraction(1) for _ in sides))
    return RequirementOracle(ground, cuts, frozenset(), unsafe_filter=False)


def test_requirement_fails_maximality():
    f = maximality_counterexample()
    assert f({0}) == 0
    assert f({0, 1}) == 1
    assert f({2}) == 1
    assert not has_maximality_bruteforce(f)
    assert is_uncrossable_bruteforce(f)
    assert minimal_violated_sets(f, []) == [CutSide((2,))]


def test_requirement_fails_weak_supermodularity():
    f = supermodularity_counterexample()
    assert f({0, 1}) == 1
    assert f({1, 2}) == 0
    assert not is_weakly_supermodular_bruteforce(f)
    assert is_uncrossable_bruteforce(f)


def test_all_safe_first_stage_requires_nothing():
    G = build_graph(4, [(0, 1, 1, "S"), (1, 2, 1, "S"), (2, 3, 1, "S"), (3, 0, 1, "S")])
    f = requirement_of(G, 2)
    assert not f.required
    assert is_uncrossable_bruteforce(f)
    assert minimal_violated_sets(f, []) == []


def test_uncrossable_bruteforce_on_hand_built_functions():
    assert is_uncrossable_bruteforce(lambda S: 0, 3)
    assert not is_uncrossable_bruteforce(lambda S: 1 if S == frozenset({1}) else 0, 3)


def test_minimal_violated_sets_keep_only_the_inner_cut():
    f = nested_cuts()
    assert f.required_sides() == [CutSide((3, 4)), CutSide((4,))]
    assert minimal_violated_sets(f, []) == [CutSide((4,))]


def test_single_violated_cut():
    f = maximality_counterexample()
    G_aug = build_graph(3, [(0, 2, 2), (1, 2, 5)])
    F2, dual = wgmv_solve(G_aug, f)
    assert F2 == frozenset({0})
    assert dual.total == 2
    assert dual.is_feasible(G_aug)


def test_shared_edge_covers_two_cuts():
    f = explicit_requirement(4, [(1,), (3,)])
    G_aug = build_graph(4, [(1, 3, 1), (0, 1, 3), (2, 3, 3)])
    F2, dual = wgmv_solve(G_aug, f)
    assert F2 == frozenset({0})
    assert dual.total == 1


def test_zero_requirement_and_infeasible_cover():
    f = explicit_requirement(3, [])
    F2, dual = wgmv_solve(build_graph(3, [(0, 1, 1)]), f)
    assert F2 == frozenset()
    assert dual.total == 0

    f = explicit_requirement(3, [(2,)])
    with pytest.raises(AugmentationInfeasibleError, match="augmentation infeasible"):
        wgmv_solve(build_graph(3, [(0, 1, 1)]), f)


def exhaustive_min_augmentation(G_aug, oracle):
    best = None
    for size in range(G_aug.m + 1):
        for chosen in combinations(range(G_aug.m), size):
            if is_feasible_augmentation(oracle, chosen, G_aug):
                cost = G_aug.total_cost(chosen)
                if best is None or cost < best:
                    best = cost
    return best


def test_augmentation_certificates_on_random_instances():
    exact_checks = 0
    for seed in range(40):
        k = 2 if seed % 3 else 3
        inst = gen_random(rng_size(seed), 2 * rng_size(seed), safe_probability=0.5,
                          cost_range=(1, 6), seed=seed, p=k, q=1)
        report = solve_k1(inst)
        oracle = report.details['requirement']
        G_aug = report.details['augmentation_graph']
        to_ground = report.details['augmentation_map']
        dual = report.details['dual']
        F2_aug = frozenset(j for j, i in enumerate(to_ground) if i in report.solution)

        assert G_aug.total_cost(F2_aug) <= 2 * dual.total
        assert dual.is_feasible(G_aug)
        assert is_feasible_augmentation(oracle, F2_aug, G_aug)
        for j in F2_aug:
            assert not is_feasible_augmentation(oracle, F2_aug - {j}, G_aug)
        assert is_uncrossable_bruteforce(oracle)

        if G_aug.m <= 12:
            assert dual.total <= exhaustive_min_augmentation(G_aug, oracle)
            exact_checks += 1
    assert exact_checks > 0


def rng_size(seed):
    return random.Random(seed).randint(4, 6)


if __name__ == "__main__":
    test_requirement_fails_maximality()
    test_requirement_fails_weak_supermodularity()
    test_all_safe_first_stage_requires_nothing()
    test_uncrossable_bruteforce_on_hand_built_functions()
    test_minimal_violated_sets_keep_only_the_inner_cut()
    test_single_violated_cut()
    test_shared_edge_covers_two_cuts()
    test_zero_requirement_and_infeasible_cover()
    test_augmentation_certificates_on_random_instances()
    print("primal-dual: all checks passed")
