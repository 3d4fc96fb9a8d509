# src/optimization/solvers.py

import logging
import time
from collections import Counter
from dataclasses import replace
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional

from networkx.utils import UnionFind

from graphs.cuts import enumerate_near_min_cuts, k_edge_cut_collection
from graphs.mincut import min_cut_value
from graphs.multigraph import MultiGraph, components, contract, cut_edges, unsafe_bridges

from .arborescence import bidirect, min_cost_k_arborescence, project_arcs_to_edges
from .checkers import check_1k, check_cap_kecss, check_k1, check_pq, is_deficient
from .data_interface import CapEcssInstance, FgcInstance, HittingSetProblem, SolveReport, SolverConfig
from .exceptions import InfeasibleHittingSetError, InfeasibleInstanceError
from .joins import JoinProblem, min_cardinality_wjoin, odd_degree_set, safe_max_spanning_tree
from .primal_dual import build_requirement, wgmv_solve

logger = logging.getLogger(__name__)

ROOT = 0


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def _with_capacities(G: MultiGraph, capacity: Callable) -> MultiGraph:
    return MultiGraph(G.vertex_count, tuple(replace(e, capacity=capacity(e)) for e in G.edges))


def _unit_costs(G: MultiGraph) -> MultiGraph:
    return MultiGraph(G.vertex_count, tuple(replace(e, cost=Fraction(1)) for e in G.edges))


def _empty_report(algorithm: str, guarantee: Fraction) -> SolveReport:
    return SolveReport(algorithm, frozenset(), Fraction(0), guarantee, lower_bound=Fraction(0))


def _stamp(report: SolveReport, started: float) -> SolveReport:
    report.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return report


def _require_unit_costs(inst: FgcInstance, algorithm: str):
    if not inst.is_unweighted():
        raise ValueError(f"{algorithm} needs unit edge costs")


# --------------------------------------------------------------------------
# arborescence-based algorithms
# --------------------------------------------------------------------------

def solve_1k(inst: FgcInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """
    (1,k)-FGC by a minimum-cost (k+1)-arborescence.

    Safe edges become k+1 bidirected pairs and unsafe edges one pair; the
    arborescence is projected back to its origin edges.
    """
    config = config or SolverConfig()
    started = time.perf_counter()
    if inst.p != 1:
        raise ValueError(f"solve_1k needs p = 1, got p = {inst.p}")
    G, k = inst.graph, inst.q
    if not check_1k(inst, G.edge_ids()):
        raise InfeasibleInstanceError("(1,k)-FGC instance is infeasible: some cut has no safe edge and at most k edges")
    if G.vertex_count == 1:
        return _stamp(_empty_report("1k", Fraction(k + 1)), started)

    D = bidirect(G, lambda i: k + 1 if G.edges[i].is_safe else 1)
    T = min_cost_k_arborescence(D, ROOT, k + 1, time_limit=config.time_limit,
                                random_seed=config.random_seed)
    F = project_arcs_to_edges(T, D)
    logger.info("solve_1k: k = %d, %d arcs, arborescence cost %s, %d edges", k, D.arc_count, T.cost, len(F))

    report = SolveReport(
        algorithm="1k",
        solution=F,
        cost=G.total_cost(F),
        guarantee=Fraction(k + 1),
        lower_bound=T.cost / (k + 1),
        stage_costs=[G.total_cost(F)],
        details={'arborescence_cost': T.cost},
    )
    return _stamp(report, started)


def solve_cap_kecss(inst: CapEcssInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """Cap-k-ECSS by a minimum-cost k-arborescence over u_e bidirected pairs per edge."""
    config = config or SolverConfig()
    started = time.perf_counter()
    norm = inst.normalized()
    if not check_cap_kecss(norm, norm.graph.edge_ids()):
        raise InfeasibleInstanceError(f"Cap-k-ECSS instance is infeasible: some cut has capacity below k = {inst.k}")
    guarantee = Fraction(min(norm.k, 2 * norm.u_max)) if norm.graph.m else Fraction(1)
    if norm.graph.vertex_count == 1:
        return _stamp(_empty_report("capk", guarantee), started)

    H = norm.graph
    D = bidirect(H, lambda i: H.edges[i].capacity)
    T = min_cost_k_arborescence(D, ROOT, norm.k, time_limit=config.time_limit,
                                random_seed=config.random_seed)
    F = frozenset(H.edges[i].origin for i in project_arcs_to_edges(T, D))
    cost = inst.graph.total_cost(F)
    logger.info("solve_cap_kecss: k = %d, u_max = %d, %d arcs, cost %s", norm.k, norm.u_max, D.arc_count, cost)

    report = SolveReport(
        algorithm="capk",
        solution=F,
        cost=cost,
        guarantee=guarantee,
        lower_bound=T.cost / guarantee,
        stage_costs=[cost],
        details={'arborescence_cost': T.cost, 'u_max': norm.u_max, 'u_min': norm.u_min},
    )
    return _stamp(report, started)


def _arborescence_kecss(G: MultiGraph, k: int, config: SolverConfig) -> SolveReport:
    """Unit-capacity k-ECSS through solve_cap_kecss; ids are those of G."""
    return solve_cap_kecss(CapEcssInstance(_with_capacities(G, lambda e: 1), k), config)


# --------------------------------------------------------------------------
# (k,1)-FGC
# --------------------------------------------------------------------------

def _augment_k_cuts(G: MultiGraph, F1: FrozenSet[int], k: int) -> Dict:
    """Second stage: cover every k-edge-cut of F1 that carries an unsafe F1 edge."""
    C = k_edge_cut_collection(G, F1, k)
    oracle = build_requirement(C, F1, G)
    rest = [i for i in range(G.m) if i not in F1]
    G_aug = MultiGraph(G.vertex_count, tuple(replace(G.edges[i], id=j) for j, i in enumerate(rest)))
    F2_aug, dual = wgmv_solve(G_aug, oracle)
    return {
        'augmentation': frozenset(rest[j] for j in F2_aug),
        'dual': dual,
        'requirement': oracle,
        'augmentation_graph': G_aug,
        'augmentation_map': tuple(rest),
    }


def _two_stage_k1(inst: FgcInstance, algorithm: str, first_stage: Callable, guarantee: Fraction) -> SolveReport:
    started = time.perf_counter()
    if inst.q != 1:
        raise ValueError(f"{algorithm} needs q = 1, got q = {inst.q}")
    G, k = inst.graph, inst.p
    if not check_k1(inst, G.edge_ids()):
        raise InfeasibleInstanceError("(k,1)-FGC instance is infeasible: some cut has fewer than k safe and at most k edges")
    if G.vertex_count == 1:
        return _stamp(_empty_report(algorithm, guarantee), started)

    F1, stage_one_bound = first_stage(G, k)
    stage_two = _augment_k_cuts(G, F1, k)
    F2 = stage_two['augmentation']
    F = F1 | F2
    lower_bound = max(stage_one_bound, stage_two['dual'].total)
    logger.info("%s: k = %d, stage 1 cost %s, stage 2 cost %s (dual %s)",
                algorithm, k, G.total_cost(F1), G.total_cost(F2), stage_two['dual'].total)

    report = SolveReport(
        algorithm=algorithm,
        solution=F,
        cost=G.total_cost(F),
        guarantee=guarantee,
        lower_bound=lower_bound,
        iterations=2,
        stage_costs=[G.total_cost(F1), G.total_cost(F2)],
        details={'first_stage': F1, 'first_stage_bound': stage_one_bound, **stage_two},
    )
    return _stamp(report, started)


def solve_k1(inst: FgcInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """(k,1)-FGC: k-ECSS first stage, then primal-dual cover of the unsafe k-edge-cuts."""
    config = config or SolverConfig()

    def first_stage(G, k):
        stage = _arborescence_kecss(G, k, config)
        return stage.solution, stage.lower_bound

    return _two_stage_k1(inst, "k1", first_stage, Fraction(4))


def solve_unweighted_k1(inst: FgcInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """Unit-cost (k,1)-FGC with a pluggable unweighted k-ECSS first stage; guarantee 2 + alpha_k."""
    config = config or SolverConfig()
    _require_unit_costs(inst, "solve_unweighted_k1")

    def first_stage(G, k):
        if config.k_ecss_solver is not None:
            F1 = frozenset(config.k_ecss_solver(_with_capacities(G, lambda e: 1), k))
        else:
            F1 = _arborescence_kecss(G, k, config).solution
        # every vertex needs degree >= k
        bound = Fraction(-(-k * G.vertex_count // 2))
        return F1, bound

    return _two_stage_k1(inst, "unweighted-k1", first_stage, 2 + config.k_ecss_factor)


# --------------------------------------------------------------------------
# (p,q)-FGC
# --------------------------------------------------------------------------

def greedy_hitting_set(P: HittingSetProblem) -> FrozenSet[int]:
    """Repeatedly take the element with the least cost per newly hit set; ties to the lowest element."""
    for index, s in enumerate(P.sets):
        if not s:
            raise InfeasibleHittingSetError(f"infeasible hitting set: set {index} is empty")

    unhit = set(range(len(P.sets)))
    chosen = set()
    while unhit:
        best = None
        best_ratio = None
        for element in range(len(P.costs)):
            if element in chosen:
                continue
            count = sum(1 for s in unhit if element in P.sets[s])
            if count == 0:
                continue
            ratio = P.costs[element] / count
            if best_ratio is None or ratio < best_ratio:
                best, best_ratio = element, ratio
        chosen.add(best)
        unhit = {s for s in unhit if best not in P.sets[s]}
    return frozenset(chosen)


def _pq_capacity_instance(inst: FgcInstance) -> CapEcssInstance:
    p, q = inst.p, inst.q
    if p > q:
        return CapEcssInstance(_with_capacities(inst.graph, lambda e: 1), p)
    return CapEcssInstance(_with_capacities(inst.graph, lambda e: p + q if e.is_safe else p), p * (p + q))


def solve_pq(inst: FgcInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """
    (p,q)-FGC in two stages.

    Stage 1 solves a Cap-k-ECSS relaxation (k = p with unit capacities when
    p > q, otherwise k = p(p+q) with capacities p+q / p). Stage 2 repeatedly
    collects the deficient cuts among the cuts of capacity at most 2k and
    hits them greedily with new edges until none remain.
    """
    config = config or SolverConfig()
    started = time.perf_counter()
    G, p, q = inst.graph, inst.p, inst.q

    if q == 0:
        report = solve_cap_kecss(CapEcssInstance(_with_capacities(G, lambda e: 1), p), config)
        report.algorithm = "pq"
        return _stamp(report, started)
    if q == 1:
        report = solve_k1(inst, config)
        report.algorithm = "pq"
        return _stamp(report, started)

    if not check_pq(inst, G.edge_ids()):
        raise InfeasibleInstanceError(f"({p},{q})-FGC instance is infeasible")
    if G.vertex_count == 1:
        return _stamp(_empty_report("pq", Fraction(1)), started)

    relaxation = _pq_capacity_instance(inst)
    k = relaxation.k
    stage_one = solve_cap_kecss(relaxation, config)
    F = set(stage_one.solution)
    capacity = {e.id: min(e.capacity, k) for e in relaxation.graph.edges}

    rounds = []
    harmonic_total = Fraction(0)
    while True:
        weights = {i: capacity[i] for i in F}
        lam = min_cut_value(G, weights)
        alpha = max(2 * lam, Fraction(2 * k)) / lam
        cuts = enumerate_near_min_cuts(G, weights, alpha)
        deficient = [side for side, value in zip(cuts.cuts, cuts.values)
                     if value <= 2 * k and is_deficient(G, side, F, p, q)]
        if not deficient:
            break

        sets = []
        for side in deficient:
            candidates = [i for i in cut_edges(G, side) if i not in F]
            if not candidates:
                raise InfeasibleInstanceError(f"instance infeasible: deficient cut {list(side)} has no remaining edge")
            sets.append(candidates)
        elements = sorted({i for s in sets for i in s})
        problem = HittingSetProblem.from_labeled({i: G.edges[i].cost for i in elements}, sets)
        picked = greedy_hitting_set(problem)
        added = frozenset(problem.label_of(j) for j in picked)
        F |= added

        harmonic_total += harmonic(len(deficient))
        rounds.append({'deficient_cuts': deficient, 'problem': problem,
                       'picked': picked, 'added': added, 'cost': problem.cost_of(picked)})
        logger.info("solve_pq round %d: %d deficient cuts, %d edges added", len(rounds), len(deficient), len(added))

    F = frozenset(F)
    stage_one_guarantee = stage_one.guarantee
    report = SolveReport(
        algorithm="pq",
        solution=F,
        cost=G.total_cost(F),
        guarantee=stage_one_guarantee + harmonic_total,
        lower_bound=stage_one.lower_bound,
        iterations=len(rounds),
        stage_costs=[stage_one.cost] + [r['cost'] for r in rounds],
        details={'first_stage': stage_one.solution, 'k': k, 'rounds': rounds},
    )
    return _stamp(report, started)


# --------------------------------------------------------------------------
# unweighted FGC
# --------------------------------------------------------------------------

def two_ecss_unweighted(G: MultiGraph, config: Optional[SolverConfig] = None) -> FrozenSet[int]:
    """Small 2-edge-connected spanning subgraph; the arborescence routine unless one is plugged in."""
    config = config or SolverConfig()
    if G.vertex_count == 1:
        return frozenset()
    if min_cut_value(G, lambda i: 1) < 2:
        raise InfeasibleInstanceError("graph is not 2-edge-connected")
    if config.two_ecss_solver is not None:
        return frozenset(config.two_ecss_solver(G))
    return _arborescence_kecss(_unit_costs(G), 2, config).solution


def _multiset_is_feasible(G: MultiGraph, copies: Counter) -> bool:
    """(1,1)-FGC with multiplicities: every cut needs weight 2 (safe copy 2, unsafe copy 1)."""
    weights = {i: c * (2 if G.edges[i].is_safe else 1) for i, c in copies.items() if c}
    return min_cut_value(G, weights) >= 2


def _join_candidate(G: MultiGraph) -> Dict:
    T = safe_max_spanning_tree(G)
    if all(G.edges[i].is_safe for i in T):
        return {'solution': T, 'tree': T, 'join': frozenset()}

    safe_tree = frozenset(i for i in T if G.edges[i].is_safe)
    H, vertex_map = contract(G, safe_tree)
    to_ground = [e.id for e in G.edges if e.id not in safe_tree and vertex_map[e.u] != vertex_map[e.v]]
    to_contracted = {g: h for h, g in enumerate(to_ground)}

    tree_image = [to_contracted[i] for i in sorted(T - safe_tree)]
    W = odd_degree_set(H, tree_image)
    join = frozenset(to_ground[h] for h in min_cardinality_wjoin(JoinProblem(H, W)))

    copies = Counter(T)
    copies.update(join)
    for i in sorted(i for i, c in copies.items() if c > 1):
        copies[i] -= 1
        if _multiset_is_feasible(G, copies):
            continue
        # i is now a bridge of the support; close its cut with the lowest-id outside edge
        support = [j for j, c in copies.items() if c]
        side = next(part for part in components(G, [j for j in support if j != i]) if G.edges[i].u in part)
        replacement = min(j for j in cut_edges(G, side) if not copies[j])
        copies[replacement] += 1
        logger.debug("De-duplication of edge %d needs replacement edge %d", i, replacement)

    return {'solution': frozenset(i for i, c in copies.items() if c), 'tree': T, 'join': join}


def _doubled_safe_candidate(G: MultiGraph, config: SolverConfig) -> FrozenSet[int]:
    """2-ECSS on G with every safe edge doubled; copies fold back onto their edge."""
    records = list(G.edges)
    ground = [e.id for e in G.edges]
    for e in G.edges:
        if e.is_safe:
            records.append(replace(e, id=len(records)))
            ground.append(e.id)
    doubled = MultiGraph(G.vertex_count, tuple(records))
    return frozenset(ground[j] for j in two_ecss_unweighted(doubled, config))


def solve_unweighted_fgc(inst: FgcInstance, config: Optional[SolverConfig] = None) -> SolveReport:
    """
    Unweighted (1,1)-FGC: the smaller of a join-based and a 2-ECSS-based candidate.

    The join candidate takes a spanning tree with the most safe edges, adds
    a minimum W-join of the contracted graph fixing the odd degrees of the
    unsafe tree edges, and removes doubled edges where feasible.
    """
    config = config or SolverConfig()
    started = time.perf_counter()
    if inst.p != 1 or inst.q != 1:
        raise ValueError(f"solve_unweighted_fgc needs p = q = 1, got ({inst.p},{inst.q})")
    _require_unit_costs(inst, "solve_unweighted_fgc")
    alpha = config.two_ecss_factor
    guarantee = 4 * alpha / (2 * alpha + 1)

    G = inst.graph
    bridges = unsafe_bridges(G)
    if bridges:
        raise InfeasibleInstanceError(f"FGC instance is infeasible: unsafe bridge {bridges[0]}")
    if G.vertex_count == 1:
        return _stamp(_empty_report("unweighted-fgc", guarantee), started)

    join = _join_candidate(G)
    details = {'tree': join['tree'], 'join_size': len(join['join']), 'join_candidate': join['solution']}
    if all(G.edges[i].is_safe for i in join['tree']):
        F = join['solution']
        details['two_ecss_candidate'] = None
    else:
        doubled = _doubled_safe_candidate(G, config)
        details['two_ecss_candidate'] = doubled
        F = join['solution'] if len(join['solution']) <= len(doubled) else doubled
    logger.info("solve_unweighted_fgc: join candidate %d edges, 2-ECSS candidate %s edges",
                len(join['solution']), len(details['two_ecss_candidate']) if details['two_ecss_candidate'] is not None else '-')

    report = SolveReport(
        algorithm="unweighted-fgc",
        solution=F,
        cost=G.total_cost(F),
        guarantee=guarantee,
        lower_bound=Fraction(G.vertex_count - 1),
        iterations=1,
        stage_costs=[G.total_cost(F)],
        details=details,
    )
    return _stamp(report, started)


def forest_first_baseline(inst: FgcInstance) -> FrozenSet[int]:
    """Maximal safe forest, then cheapest edges until feasible, then reverse delete of the additions."""
    G = inst.graph
    bridges = unsafe_bridges(G)
    if bridges:
        raise InfeasibleInstanceError(f"FGC instance is infeasible: unsafe bridge {bridges[0]}")

    forest = UnionFind(G.vertices)
    F = set()
    for e in G.edges:
        if e.is_safe and forest[e.u] != forest[e.v]:
            forest.union(e.u, e.v)
            F.add(e.id)

    added: List[int] = []
    for e in sorted(G.edges, key=lambda e: (e.cost, e.id)):
        if check_1k(inst, F):
            break
        if e.id not in F:
            F.add(e.id)
            added.append(e.id)

    for i in reversed(added):
        if check_1k(inst, F - {i}):
            F.discard(i)
    return frozenset(F)


ALGORITHMS: Dict[str, Callable] = {
    '1k': solve_1k,
    'capk': solve_cap_kecss,
    'k1': solve_k1,
    'pq': solve_pq,
    'unweighted-fgc': solve_unweighted_fgc,
    'unweighted-k1': solve_unweighted_k1,
}


def solve(inst, algorithm: str, config: Optional[SolverConfig] = None) -> SolveReport:
    try:
        runner = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}") from None
    if (algorithm == 'capk') != isinstance(inst, CapEcssInstance):
        raise ValueError(f"algorithm {algorithm!r} does not match a {inst.problem} instance")
    return runner(inst, config)
