from .data_interface import CapEcssInstance, FgcInstance, HittingSetProblem, SolveReport, SolverConfig
from .arborescence import (
    Digraph,
    KArborescence,
    bidirect,
    decompose_k_arborescence,
    has_k_arborescence,
    min_cost_k_arborescence,
    project_arcs_to_edges,
)
from .checkers import check_1k, check_cap_kecss, check_k1, check_pq, find_deficient_cut, is_feasible
from .solvers import (
    forest_first_baseline,
    greedy_hitting_set,
    solve,
    solve_1k,
    solve_cap_kecss,
    solve_k1,
    solve_pq,
    solve_unweighted_fgc,
    solve_unweighted_k1,
    two_ecss_unweighted,
)
from .oracle import brute_force_feasible, brute_force_min_hitting_set, brute_force_opt

__all__ = [
    'CapEcssInstance', 'FgcInstance', 'HittingSetProblem', 'SolveReport', 'SolverConfig',
    'Digraph', 'KArborescence', 'bidirect', 'decompose_k_arborescence', 'has_k_arborescence',
    'min_cost_k_arborescence', 'project_arcs_to_edges',
    'check_1k', 'check_cap_kecss', 'check_k1', 'check_pq', 'find_deficient_cut', 'is_feasible',
    'forest_first_baseline', 'greedy_hitting_set', 'solve', 'solve_1k', 'solve_cap_kecss', 'solve_k1',
    'solve_pq', 'solve_unweighted_fgc', 'solve_unweighted_k1', 'two_ecss_unweighted',
    'brute_force_feasible', 'brute_force_min_hitting_set', 'brute_force_opt',
]
