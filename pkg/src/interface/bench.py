# src/interface/bench.py

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from optimization.data_interface import SolverConfig
from optimization.exceptions import InfeasibleInstanceError
from optimization.oracle import brute_force_opt
from optimization.solvers import solve

from .generators import gen_figure1, gen_random
from .instance_file import Instance
from .reports import RunReport

logger = logging.getLogger(__name__)

FAMILIES = ("figure1", "random")
DEFAULT_ALGORITHMS = {
    "figure1": ("unweighted-fgc", "1k"),
    "random": ("1k", "k1"),
}


def build_family(family: str, max_n: int = 6, count: int = 20, seed: int = 0,
                 p: int = 1, q: int = 1, k: int = 2) -> List[Instance]:
    """Instances of a benchmark family, in a fixed order."""
    if family == "figure1":
        return [gen_figure1(n) for n in range(2, max_n + 1)]
    if family != "random":
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")

    rng = random.Random(seed)
    instances = []
    for index in range(count):
        n = rng.randint(3, max(3, max_n))
        m = rng.randint(n, n + 6)
        instances.append(gen_random(n, m, safe_probability=0.4, cost_range=(1, 6),
                                    seed=seed * 10007 + index, p=p, q=q, k=k))
    return instances


def _run_instance(index: int, inst: Instance, algorithms: Sequence[str], config: SolverConfig,
                  with_oracle: bool) -> List[Dict]:
    optimum = None
    if with_oracle:
        result = brute_force_opt(inst)
        optimum = result.optimum_cost

    rows = []
    for algorithm in algorithms:
        row = {'instance': index, 'n': inst.graph.vertex_count, 'm': inst.graph.m,
               'algorithm': algorithm, 'error': None}
        try:
            run = RunReport.from_solve(inst, solve(inst, algorithm, config), optimum)
        except (InfeasibleInstanceError, ValueError) as exc:
            row['error'] = str(exc)
            rows.append(row)
            continue
        row.update({
            'cost': float(run.cost),
            'guarantee': float(run.guarantee),
            'optimum': None if optimum is None else float(optimum),
            'ratio': None if run.ratio is None else float(run.ratio),
            'within_guarantee': None if optimum is None else run.ratio is None or run.ratio <= run.guarantee,
            'iterations': run.iterations,
            'elapsed_ms': run.elapsed_ms,
        })
        rows.append(row)
    return rows


def run_bench(family: str, algorithms: Optional[Sequence[str]] = None, max_n: int = 6, count: int = 20,
              seed: int = 0, workers: int = 1, with_oracle: bool = True,
              config: Optional[SolverConfig] = None, p: int = 1, q: int = 1, k: int = 2) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Solve every instance of a family with each algorithm and compare to the oracle.

    Returns the per-run table and a per-algorithm summary (max/mean ratio,
    guarantee, number of guarantee violations). Rows are ordered by
    instance index whatever the number of workers.
    """
    config = config or SolverConfig(random_seed=seed)
    algorithms = tuple(algorithms or DEFAULT_ALGORITHMS[family])
    instances = build_family(family, max_n=max_n, count=count, seed=seed, p=p, q=q, k=k)
    logger.info("Benchmark %s: %d instances x %d algorithms", family, len(instances), len(algorithms))

    jobs = list(enumerate(instances))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda job: _run_instance(job[0], job[1], algorithms, config, with_oracle), jobs))
    else:
        batches = [_run_instance(index, inst, algorithms, config, with_oracle) for index, inst in jobs]

    table = pd.DataFrame([row for batch in batches for row in batch])
    return table, summarize(table)


def summarize(table: pd.DataFrame) -> pd.DataFrame:
    if table.empty or 'ratio' not in table:
        return pd.DataFrame(columns=['algorithm', 'runs', 'max_ratio', 'mean_ratio', 'guarantee', 'violations'])
    solved = table[table['error'].isna()].copy()
    solved['violation'] = solved['within_guarantee'].eq(False)
    summary = solved.groupby('algorithm').agg(
        runs=('instance', 'count'),
        max_ratio=('ratio', 'max'),
        mean_ratio=('ratio', 'mean'),
        guarantee=('guarantee', 'max'),
        violations=('violation', 'sum'),
    ).reset_index()
    return summary
