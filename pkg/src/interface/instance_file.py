# src/interface/instance_file.py

import logging
from fractions import Fraction
from pathlib import Path
from typing import FrozenSet, Iterable, List, Tuple, Union

from graphs.exceptions import DisconnectedGraphError
from graphs.multigraph import EdgeRecord, Label, MultiGraph

from optimization.data_interface import CapEcssInstance, FgcInstance

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
PROBLEM_TAGS = ("fgc", "capk")

Instance = Union[FgcInstance, CapEcssInstance]


class InstanceFormatError(ValueError):
    """Malformed instance or solution text; `line` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"{message} at line {line}" if line else message)


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split('#', 1)[0].strip()
        if body:
            lines.append((number, body.split()))
    return lines


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(f"{what} must be an integer, got {token!r}", line) from None


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"bad cost {token!r}", line) from None


def _expect(tokens: List[str], keyword: str, count: int, line: int):
    if tokens[0] != keyword or len(tokens) != count:
        raise InstanceFormatError(f"expected '{keyword}' line with {count - 1} value(s)", line)


def parse_instance(text: str) -> Instance:
    """
    Parse the line-based instance format.

        fgc 1                 capk 1
        n 4                   n 2
        p 1 q 1               k 2
        edge 0 1 3/2 S        edge 0 1 3 2

    Costs are exact (integers, decimals or a/b); '#' starts a comment.
    """
    lines = _content_lines(text)
    if len(lines) < 3:
        raise InstanceFormatError("instance needs a header, an 'n' line and a parameter line",
                                  lines[-1][0] if lines else 0)

    (line, header) = lines[0]
    if len(header) != 2 or header[0] not in PROBLEM_TAGS:
        raise InstanceFormatError(f"header must be '<fgc|capk> {FORMAT_VERSION}'", line)
    if _int(header[1], "format version", line) != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported format version {header[1]}", line)
    problem = header[0]

    line, tokens = lines[1]
    _expect(tokens, "n", 2, line)
    n = _int(tokens[1], "vertex count", line)
    if n < 1:
        raise InstanceFormatError("vertex count must be positive", line)

    line, tokens = lines[2]
    if problem == "fgc":
        if len(tokens) != 4 or tokens[0] != "p" or tokens[2] != "q":
            raise InstanceFormatError("expected 'p <int> q <int>'", line)
        p, q = _int(tokens[1], "p", line), _int(tokens[3], "q", line)
        if p < 1 or q < 0:
            raise InstanceFormatError("need p >= 1 and q >= 0", line)
    else:
        _expect(tokens, "k", 2, line)
        k = _int(tokens[1], "k", line)
        if k < 1:
            raise InstanceFormatError("need k >= 1", line)

    records = []
    for line, tokens in lines[3:]:
        _expect(tokens, "edge", 5, line)
        u = _int(tokens[1], "endpoint", line)
        v = _int(tokens[2], "endpoint", line)
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceFormatError(f"endpoint out of range 0..{n - 1}", line)
        if u == v:
            raise InstanceFormatError("self-loop", line)
        cost = _rational(tokens[3], line)
        if cost < 0:
            raise InstanceFormatError("negative cost", line)

        index = len(records)
        if problem == "fgc":
            try:
                label = Label.parse(tokens[4])
            except ValueError:
                raise InstanceFormatError(f"label must be S or U, got {tokens[4]!r}", line) from None
            records.append(EdgeRecord(index, u, v, cost, label, 1, index))
        else:
            capacity = _int(tokens[4], "capacity", line)
            if capacity < 0:
                raise InstanceFormatError("negative capacity", line)
            records.append(EdgeRecord(index, u, v, cost, Label.UNSAFE, capacity, index))

    graph = MultiGraph(n, tuple(records))
    if problem == "capk":
        return CapEcssInstance(graph, k)
    try:
        return FgcInstance(graph, p, q)
    except DisconnectedGraphError as exc:
        raise InstanceFormatError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    """Canonical text: no comments, costs in lowest terms, edges in id order."""
    G = inst.graph
    if isinstance(inst, CapEcssInstance):
        out = [f"capk {FORMAT_VERSION}", f"n {G.vertex_count}", f"k {inst.k}"]
        out += [f"edge {e.u} {e.v} {e.cost} {e.capacity}" for e in G.edges]
    else:
        out = [f"fgc {FORMAT_VERSION}", f"n {G.vertex_count}", f"p {inst.p} q {inst.q}"]
        out += [f"edge {e.u} {e.v} {e.cost} {e.label.value}" for e in G.edges]
    return "\n".join(out) + "\n"


def read_instance(path) -> Instance:
    inst = parse_instance(Path(path).read_text())
    logger.info("Loaded %s instance from %s: n = %d, m = %d", inst.problem, path, inst.graph.vertex_count, inst.graph.m)
    return inst


def write_instance(path, inst: Instance) -> None:
    Path(path).write_text(serialize_instance(inst))


def parse_solution(text: str, edge_count: int = None) -> FrozenSet[int]:
    """One edge id per line; '#' comments and blank lines are ignored."""
    ids = set()
    for line, tokens in _content_lines(text):
        if len(tokens) != 1:
            raise InstanceFormatError("expected one edge id per line", line)
        edge_id = _int(tokens[0], "edge id", line)
        if edge_id < 0 or (edge_count is not None and edge_id >= edge_count):
            raise InstanceFormatError(f"edge id {edge_id} not in the instance", line)
        ids.add(edge_id)
    return frozenset(ids)


def serialize_solution(edge_ids: Iterable[int]) -> str:
    return "".join(f"{i}\n" for i in sorted(edge_ids))


def read_solution(path, edge_count: int = None) -> FrozenSet[int]:
    return parse_solution(Path(path).read_text(), edge_count)


def write_solution(path, edge_ids: Iterable[int]) -> None:
    Path(path).write_text(serialize_solution(edge_ids))
