#!/usr/bin/env python3
"""
Unweighted (1,1)-FGC and unweighted (k,1)-FGC.

Includes the hard family where every feasible solution needs the whole
unsafe cycle, and the size bounds of both candidates of the join-based
algorithm against exact optima.
"""

import random
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent / 'src'))

import pytest

from graphs.mincut import min_cut_value
from graphs.multigraph import build_graph, contract, crossing
from interface.generators import gen_figure1, gen_random
from optimization.checkers import check_1k, check_k1
from optimization.data_interface import FgcInstance, SolverConfig
from optimization.exceptions import InfeasibleInstanceError
from optimization.joins import odd_degree_set
from optimization.oracle import brute_force_opt
from optimization.solvers import (
    forest_first_baseline, solve_unweighted_fgc, solve_unweighted_k1, two_ecss_unweighted,
)


def unit_triangle(label="U"):
    return build_graph(3, [(0, 1, 1, label), (1, 2, 1, label), (0, 2, 1, label)])


def test_figure_one_family():
    print("\n" + "=" * 70)
    print("FIGURE-1 FAMILY: optimum, forest-first baseline, join-based algorithm")
    print("=" * 70)
    for n in range(2, 7):
        inst = gen_figure1(n)
        optimum = brute_force_opt(inst).optimum_cost
        assert optimum == 2 * n

        baseline = forest_first_baseline(inst)
        assert check_1k(inst, baseline)
        assert len(baseline) >= 3 * n - 1

        report = solve_unweighted_fgc(inst)
        assert check_1k(inst, report.solution)
        assert report.cost <= Fraction(8, 5) * optimum
        print(f"  n={n}: OPT={optimum}  baseline={len(baseline)}  algorithm={report.cost}")


def test_unweighted_fgc_small_cases():
    report = solve_unweighted_fgc(FgcInstance(unit_triangle("S"), 1, 1))
    assert len(report.solution) == 2
    assert report.details['two_ecss_candidate'] is None

    report = solve_unweighted_fgc(FgcInstance(unit_triangle("U"), 1, 1))
    assert report.cost == 3
    assert report.guarantee == Fraction(8, 5)
    assert report.lower_bound == 2


def test_unweighted_fgc_rejects_bad_instances():
    bridged = build_graph(3, [(0, 1, 1, "U"), (1, 2, 1, "S"), (1, 2, 1, "S")])
    with pytest.raises(InfeasibleInstanceError, match="unsafe bridge"):
        solve_unweighted_fgc(FgcInstance(bridged, 1, 1))

    weighted = build_graph(2, [(0, 1, 2, "S")])
    with pytest.raises(ValueError):
        solve_unweighted_fgc(FgcInstance(weighted, 1, 1))


def exact_two_ecss(H):
    """Smallest 2-edge-connected spanning edge set, by exhaustive search."""
    for size in range(H.vertex_count, H.m + 1):
        for chosen in combinations(sorted(H.edge_ids()), size):
            if min_cut_value(H, {i: 1 for i in chosen}) >= 2:
                return frozenset(chosen)
    raise InfeasibleInstanceError("graph is not 2-edge-connected")


def test_plugged_two_ecss_factor_changes_guarantee():
    inst = gen_figure1(3)
    config = SolverConfig(two_ecss_factor=1, two_ecss_solver=exact_two_ecss)
    report = solve_unweighted_fgc(inst, config)
    assert report.guarantee == Fraction(4, 3)
    assert check_1k(inst, report.solution)
    assert report.cost <= report.guarantee * brute_force_opt(inst).optimum_cost


def test_declared_factor_needs_a_plugged_subroutine():
    with pytest.raises(ValueError, match="two_ecss_solver"):
        SolverConfig(two_ecss_factor=Fraction(3, 2))
    with pytest.raises(ValueError, match="k_ecss_solver"):
        SolverConfig(k_ecss_factor=1)

    looser = solve_unweighted_fgc(gen_figure1(3), SolverConfig(two_ecss_factor=3))
    assert looser.guarantee == Fraction(12, 7)



def test_forest_first_without_safe_edges():
    inst = FgcInstance(unit_triangle("U"), 1, 1)
    F = forest_first_baseline(inst)
    assert check_1k(inst, F)
    assert not any(inst.graph.edges[i].is_safe for i in F)


def fractional_join_holds(G, tree, witness):
    """Half the unsafe witness edges cover every odd cut of the contracted graph."""
    safe_tree = frozenset(i for i in tree if G.edges[i].is_safe)
    H, _ = contract(G, safe_tree)
    tree_image = [j for j, e in enumerate(H.edges) if e.origin in tree]
    W = odd_degree_set(H, tree_image)
    B = [j for j, e in enumerate(H.edges) if e.origin in witness]
    for size in range(1, H.vertex_count):
        for side in combinations(range(H.vertex_count), size):
            S = frozenset(side)
            if len(S & W) % 2 and len(crossing(H, S, B)) < 2:
                return False
    return True


def test_candidate_bounds_against_optimum():
    rng = random.Random(55)
    for seed in range(40):
        n = rng.randint(4, 7)
        inst = gen_random(n, rng.randint(n, 10), safe_probability=0.4, cost_range=(1, 1), seed=seed, p=1, q=1)
        G = inst.graph
        result = brute_force_opt(inst)
        unsafe_opt = sum(1 for i in result.witness if not G.edges[i].is_safe)
        safe_opt = len(result.witness) - unsafe_opt

        report = solve_unweighted_fgc(inst)
        assert check_1k(inst, report.solution)
        assert report.cost <= report.guarantee * result.optimum_cost
        assert 2 * report.details['join_size'] <= unsafe_opt
        assert fractional_join_holds(G, report.details['tree'], result.witness)

        doubled = report.details['two_ecss_candidate']
        if doubled is not None:
            assert check_1k(inst, doubled)
            assert len(doubled) <= 2 * (2 * safe_opt + unsafe_opt)


def test_two_ecss_unweighted():
    cycle = build_graph(4, [(v, (v + 1) % 4, 1) for v in range(4)])
    assert two_ecss_unweighted(cycle) == frozenset(range(4))

    k4 = build_graph(4, [(u, v, 1) for u, v in combinations(range(4), 2)])
    F = two_ecss_unweighted(k4)
    assert len(F) <= 8
    assert check_k1(FgcInstance(k4, 1, 1), F)

    bridged = build_graph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (2, 3, 1)])
    with pytest.raises(InfeasibleInstanceError):
        two_ecss_unweighted(bridged)

    config = SolverConfig(two_ecss_solver=lambda G: G.edge_ids())
    assert two_ecss_unweighted(k4, config) == frozenset(range(6))


def test_unweighted_k1_examples():
    G = build_graph(4, [(v, (v + 1) % 4, 1, "S") for v in range(4)])
    report = solve_unweighted_k1(FgcInstance(G, 2, 1))
    assert report.cost == 4
    assert report.guarantee == 4
    assert report.lower_bound == 4

    chords = build_graph(4, [(0, 1, 1, "U"), (1, 2, 1, "S"), (2, 3, 1, "S"), (3, 0, 1, "S"),
                             (0, 2, 1, "S"), (1, 3, 1, "S")])
    inst = FgcInstance(chords, 2, 1)
    report = solve_unweighted_k1(inst)
    assert check_k1(inst, report.solution)
    assert report.cost <= 4 * brute_force_opt(inst).optimum_cost

    config = SolverConfig(k_ecss_factor=3, k_ecss_solver=lambda H, k: H.edge_ids())
    report = solve_unweighted_k1(inst, config)
    assert report.guarantee == 5
    assert check_k1(inst, report.solution)

    with pytest.raises(ValueError):
        solve_unweighted_k1(FgcInstance(build_graph(2, [(0, 1, 3, "S")] * 2), 2, 1))


if __name__ == "__main__":
    test_figure_one_family()
    test_unweighted_fgc_small_cases()
    test_unweighted_fgc_rejects_bad_instances()
    test_plugged_two_ecss_factor_changes_guarantee()
    test_declared_factor_needs_a_plugged_subroutine()
    test_forest_first_without_safe_edges()
    test_candidate_bounds_against_optimum()
    test_two_ecss_unweighted()
    test_unweighted_k1_examples()
    print("unweighted FGC: all checks passed")
