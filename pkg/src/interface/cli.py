# src/interface/cli.py

import json
import logging
from fractions import Fraction
from typing import List, Optional

import click

from graphs.cuts import enumerate_near_min_cuts

from optimization.checkers import find_deficient_cut, is_feasible
from optimization.data_interface import SolverConfig
from optimization.exceptions import ArborescenceSolverError, InfeasibleInstanceError
from optimization.oracle import brute_force_opt
from optimization.solvers import ALGORITHMS, solve

from .bench import DEFAULT_ALGORITHMS, FAMILIES, run_bench
from .generators import gen_figure1, gen_random
from .instance_file import InstanceFormatError, read_instance, read_solution, serialize_instance, write_solution
from .reports import RunReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


def _rational(ctx, param, value):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {value!r}") from None


@click.group()
@click.option('--verbose', '-v', is_flag=True, help="Log progress at DEBUG level.")
def cli(verbose):
    """Flexible graph connectivity solvers, checkers and exact oracle."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")


@cli.command()
@click.option('--family', type=click.Choice(FAMILIES), default="random", show_default=True)
@click.option('--n', 'n', type=int, default=6, show_default=True, help="Vertices (figure1: half the vertex count).")
@click.option('--m', 'm', type=int, default=10, show_default=True)
@click.option('--problem', type=click.Choice(["fgc", "capk"]), default="fgc", show_default=True)
@click.option('--p', 'p', type=int, default=1, show_default=True)
@click.option('--q', 'q', type=int, default=1, show_default=True)
@click.option('--k', 'k', type=int, default=2, show_default=True)
@click.option('--safe-probability', type=float, default=0.5, show_default=True)
@click.option('--cost-range', type=(int, int), default=(1, 10), show_default=True)
@click.option('--cap-range', type=(int, int), default=(1, 1), show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--output', type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
def gen(family, n, m, problem, p, q, k, safe_probability, cost_range, cap_range, seed, output):
    """Generate an instance file."""
    if family == "figure1":
        inst = gen_figure1(n)
    else:
        inst = gen_random(n, m, safe_probability, cost_range, cap_range, seed, problem=problem, p=p, q=q, k=k)
    text = serialize_instance(inst)
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


@cli.command()
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--solution', 'solution_path', type=click.Path(exists=True, dir_okay=False), required=True)
def check(input_path, solution_path):
    """Report whether a solution file is feasible for an instance."""
    inst = read_instance(input_path)
    F = read_solution(solution_path, inst.graph.m)
    if is_feasible(inst, F):
        click.echo("feasible")
    else:
        side = find_deficient_cut(inst, F)
        click.echo("infeasible")
        if side is not None:
            click.echo(f"violated cut: {' '.join(map(str, side))}")
    return EXIT_OK


@cli.command(name="solve")
@click.option('--algorithm', type=click.Choice(list(ALGORITHMS)), required=True)
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--alpha', callback=_rational, default="2", show_default=True, help="Declared 2-ECSS factor; below 2 needs a plugged routine.")
@click.option('--alpha-k', callback=_rational, default="2", show_default=True, help="Declared k-ECSS factor; below 2 needs a plugged routine.")
@click.option('--time-limit', type=int, default=60, show_default=True, help="CBC time limit per LP (s).")
@click.option('--seed', type=int, default=0, show_default=True, help="CBC random seed.")
@click.option('--with-oracle', is_flag=True, help="Use the exact optimum as lower bound.")
@click.option('--write-solution', 'solution_out', type=click.Path(dir_okay=False), default=None)
@click.option('--no-timing', is_flag=True, help="Omit elapsed_ms from the report.")
def solve_command(algorithm, input_path, alpha, alpha_k, time_limit, seed, with_oracle, solution_out, no_timing):
    """Run one algorithm and print its JSON report."""
    inst = read_instance(input_path)
    config = SolverConfig(two_ecss_factor=alpha, k_ecss_factor=alpha_k, random_seed=seed, time_limit=time_limit)
    report = solve(inst, algorithm, config)
    optimum = brute_force_opt(inst).optimum_cost if with_oracle else None
    if solution_out:
        write_solution(solution_out, report.solution)
    click.echo(RunReport.from_solve(inst, report, optimum).to_json(include_timing=not no_timing))
    return EXIT_OK


@cli.command()
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True)
def oracle(input_path):
    """Exact optimum by exhaustive search (small instances only)."""
    inst = read_instance(input_path)
    result = brute_force_opt(inst)
    if not result.feasible:
        click.echo("infeasible")
        return EXIT_INFEASIBLE
    click.echo(json.dumps({'optimum': str(result.optimum_cost), 'witness': sorted(result.witness),
                           'explored': result.explored}, indent=2, sort_keys=True))
    return EXIT_OK


@cli.command(name="enumerate-cuts")
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True)
@click.option('--alpha', callback=_rational, default="1", show_default=True)
@click.option('--weight', type=click.Choice(["unit", "cost", "capacity"]), default="unit", show_default=True)
def enumerate_cuts(input_path, alpha, weight):
    """List every cut within alpha times the minimum cut."""
    inst = read_instance(input_path)
    G = inst.graph
    weights = {
        'unit': lambda i: 1,
        'cost': lambda i: G.edges[i].cost,
        'capacity': lambda i: G.edges[i].capacity,
    }[weight]
    cuts = enumerate_near_min_cuts(G, weights, alpha)
    click.echo(f"# minimum cut {cuts.reference_value}, radius {cuts.approximation_radius}, {len(cuts)} cuts")
    for side, value in zip(cuts.cuts, cuts.values):
        click.echo(f"{value}: {' '.join(map(str, side))}")
    return EXIT_OK


@cli.command()
@click.option('--family', type=click.Choice(FAMILIES), default="figure1", show_default=True)
@click.option('--algorithm', 'algorithms', type=click.Choice(list(ALGORITHMS)), multiple=True)
@click.option('--max-n', type=int, default=6, show_default=True)
@click.option('--count', type=int, default=20, show_default=True, help="Instances in the random family.")
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--p', 'p', type=int, default=1, show_default=True)
@click.option('--q', 'q', type=int, default=1, show_default=True)
@click.option('--workers', type=int, default=1, show_default=True)
@click.option('--alpha', callback=_rational, default="2", show_default=True)
@click.option('--no-oracle', is_flag=True, help="Skip the exact optimum (ratios use certificates only).")
@click.option('--csv', 'csv_path', type=click.Path(dir_okay=False), default=None, help="Also write the per-run table.")
def bench(family, algorithms, max_n, count, seed, p, q, workers, alpha, no_oracle, csv_path):
    """Run a seeded instance family and print the ratio table."""
    config = SolverConfig(two_ecss_factor=alpha, random_seed=seed)
    table, summary = run_bench(family, algorithms or DEFAULT_ALGORITHMS[family], max_n=max_n, count=count,
                               seed=seed, workers=workers, with_oracle=not no_oracle, config=config, p=p, q=q)
    if csv_path:
        table.to_csv(csv_path, index=False)
    click.echo(summary.to_string(index=False))
    return EXIT_OK


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and map outcomes to exit codes: 0 ok, 1 usage or input error, 2 infeasible instance."""
    try:
        result = cli.main(args=argv, prog_name="fgc", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except InfeasibleInstanceError as exc:
        click.echo(f"infeasible instance: {exc}", err=True)
        return EXIT_INFEASIBLE
    except ArborescenceSolverError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        return EXIT_USAGE
    except (InstanceFormatError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return EXIT_OK if result is None else int(result)
