#!/usr/bin/env python3
"""
Instance and solution files, seeded generators and JSON run reports.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent / 'src'))

import pytest

from interface.generators import gen_figure1, gen_random
from interface.instance_file import (
    InstanceFormatError, parse_instance, parse_solution, read_instance, serialize_instance,
    serialize_solution, write_instance,
)
from interface.reports import RunReport, instance_digest
from optimization.checkers import check_cap_kecss, check_pq
from optimization.data_interface import CapEcssInstance, FgcInstance
from optimization.solvers import solve_1k

MINIMAL = "fgc 1\nn 2\np 1 q 1\nedge 0 1 1 S\n"

CAPK = """\
# two vertices, three parallel edges
capk 1
n 2
k 2
edge 0 1 3 2
edge 0 1 1 1   # cheap
edge 0 1 1 1
"""


def test_parse_minimal_instance():
    inst = parse_instance(MINIMAL)
    assert isinstance(inst, FgcInstance)
    assert inst.graph.vertex_count == 2
    assert inst.graph.m == 1
    assert inst.graph.edges[0].is_safe
    assert (inst.p, inst.q) == (1, 1)


def test_parse_capacitated_instance():
    inst = parse_instance(CAPK)
    assert isinstance(inst, CapEcssInstance)
    assert inst.k == 2
    assert [e.capacity for e in inst.graph.edges] == [2, 1, 1]
    assert serialize_instance(inst) == "capk 1\nn 2\nk 2\nedge 0 1 3 2\nedge 0 1 1 1\nedge 0 1 1 1\n"


def test_canonical_text_round_trip():
    assert serialize_instance(parse_instance(MINIMAL)) == MINIMAL

    text = "fgc 1\nn 3\np 2 q 3\nedge 0 1 1.5 U\nedge 1 2 6/4 s\nedge 0 2 7 S\n"
    inst = parse_instance(text)
    assert inst.graph.edges[0].cost == Fraction(3, 2)
    canonical = serialize_instance(inst)
    assert "edge 0 1 3/2 U" in canonical
    assert "edge 1 2 3/2 S" in canonical
    assert serialize_instance(parse_instance(canonical)) == canonical


def test_format_errors_name_the_line():
    with pytest.raises(InstanceFormatError, match="self-loop at line 4") as info:
        parse_instance("fgc 1\nn 2\np 1 q 1\nedge 0 0 1 S\n")
    assert info.value.line == 4

    cases = [
        ("fgc 2\nn 2\np 1 q 1\nedge 0 1 1 S\n", 1),
        ("fgc 1\nn 2\np 1 q 1\nedge 0 1 -1 S\n", 4),
        ("fgc 1\nn 2\np 1 q 1\nedge 0 1 1 X\n", 4),
        ("fgc 1\nn 2\np 1 q 1\nedge 0 5 1 S\n", 4),
        ("fgc 1\nn 2\nk 2\nedge 0 1 1 S\n", 3),
        ("graph 1\nn 2\np 1 q 1\n", 1),
    ]
    for text, line in cases:
        with pytest.raises(InstanceFormatError) as info:
            parse_instance(text)
        assert info.value.line == line

    with pytest.raises(InstanceFormatError, match="connected"):
        parse_instance("fgc 1\nn 3\np 1 q 1\nedge 0 1 1 S\n")


def test_solution_files():
    assert parse_solution("# chosen edges\n2\n0\n\n") == frozenset({0, 2})
    assert serialize_solution({2, 0}) == "0\n2\n"
    with pytest.raises(InstanceFormatError):
        parse_solution("0\n7\n", edge_count=3)
    with pytest.raises(InstanceFormatError):
        parse_solution("0 1\n")


def test_read_and_write_instance(tmp_path):
    path = tmp_path / "figure.txt"
    inst = gen_figure1(3)
    write_instance(path, inst)
    assert serialize_instance(read_instance(path)) == serialize_instance(inst)


def test_figure_one_generator():
    inst = gen_figure1(2)
    G = inst.graph
    assert G.vertex_count == 4
    assert len(G.unsafe_ids()) == 4
    assert [(G.edges[i].u, G.edges[i].v) for i in sorted(G.safe_ids())] == [(1, 3)]

    G = gen_figure1(3).graph
    assert G.vertex_count == 6
    assert len(G.unsafe_ids()) == 6
    assert len(G.safe_ids()) == 2

    with pytest.raises(ValueError):
        gen_figure1(1)


def test_random_generator_is_deterministic():
    first = gen_random(7, 12, seed=11, p=2, q=1)
    second = gen_random(7, 12, seed=11, p=2, q=1)
    assert serialize_instance(first) == serialize_instance(second)
    assert serialize_instance(first) != serialize_instance(gen_random(7, 12, seed=12, p=2, q=1))

    all_safe = gen_random(6, 9, safe_probability=1.0, seed=3, repair=False)
    assert all(e.is_safe for e in all_safe.graph.edges)


def test_repaired_random_instances_are_feasible():
    for seed in range(20):
        inst = gen_random(6, 10, seed=seed, p=1, q=1)
        assert check_pq(inst, inst.graph.edge_ids())
        assert inst.graph.m >= 10

    for seed in range(10):
        inst = gen_random(5, 6, cap_range=(0, 2), seed=seed, problem="capk", k=3)
        assert check_cap_kecss(inst, inst.graph.edge_ids())


def test_run_report_json():
    inst = parse_instance("fgc 1\nn 3\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 0 2 1 U\n")
    report = solve_1k(inst)

    run = RunReport.from_solve(inst, report)
    data = json.loads(run.to_json(include_timing=False))
    assert data["cost"] == "3"
    assert data["guarantee"] == "2"
    assert data["solution"] == [0, 1, 2]
    assert data["lower_bound_source"] == "certificate"
    assert "elapsed_ms" not in data
    assert data["instance_digest"] == instance_digest(inst)

    with_optimum = RunReport.from_solve(inst, report, optimum=Fraction(3))
    assert with_optimum.ratio == 1
    assert with_optimum.to_dict()["ratio_float"] == 1.0

    again = RunReport.from_solve(inst, solve_1k(inst))
    assert again.to_json(include_timing=False) == run.to_json(include_timing=False)


if __name__ == "__main__":
    test_parse_minimal_instance()
    test_parse_capacitated_instance()
    test_canonical_text_round_trip()
    test_format_errors_name_the_line()
    test_solution_files()
    test_figure_one_generator()
    test_random_generator_is_deterministic()
    test_repaired_random_instances_are_feasible()
    test_run_report_json()
    print("instance files: all checks passed")
