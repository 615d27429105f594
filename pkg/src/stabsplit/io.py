"""Text formats for stabilizer groups and graphs, and the JSON report schema.

Stabilizer file::

    # comment
    n 3
    +XXX
    ZZI
    -IZZ

Graph file::

    graph 3
    0 1
    1 2
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .pauli import PauliParseError, parse
from .stabilizer import GraphAdjacency, Partition, StabilizerError, StabilizerGroup


class InputError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_stabilizer_text(text: str, source: str = "<input>") -> StabilizerGroup:
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty stabilizer file", source=source)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise InputError(f"expected header 'n <count>', got {header!r}", lineno, source)
    n = int(parts[1])
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else lineno)
        raise InputError(f"expected {n} generator lines, found {len(body)}", where, source)
    gens = []
    for lineno, line in body:
        try:
            gens.append(parse(line, n))
        except PauliParseError as exc:
            raise InputError(str(exc), lineno, source) from None
    try:
        return StabilizerGroup.from_generators(gens)
    except StabilizerError as exc:
        raise InputError(f"invalid stabilizer group: {exc}", source=source) from None


def format_stabilizer(s: StabilizerGroup, comment: str | None = None) -> str:
    out = [f"# {comment}"] if comment else []
    out.append(f"n {s.n}")
    out += s.labels()
    return "\n".join(out) + "\n"


def parse_graph_text(text: str, source: str = "<input>") -> GraphAdjacency:
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty graph file", source=source)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "graph" or not parts[1].isdigit():
        raise InputError(f"expected header 'graph <n>', got {header!r}", lineno, source)
    n = int(parts[1])
    seen = set()
    edges = []
    for lineno, line in lines[1:]:
        toks = line.split()
        if len(toks) != 2 or not all(t.isdigit() for t in toks):
            raise InputError(f"expected an edge 'u v', got {line!r}", lineno, source)
        u, v = map(int, toks)
        if u >= n or v >= n:
            raise InputError(f"vertex out of range 0..{n - 1}: {line!r}", lineno, source)
        if u == v:
            raise InputError(f"self loop on vertex {u}", lineno, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge {u} {v}", lineno, source)
        seen.add(key)
        edges.append(key)
    return GraphAdjacency.from_edges(n, edges)


def format_graph(g: GraphAdjacency) -> str:
    return "\n".join([f"graph {g.n}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def read_stabilizer(path) -> StabilizerGroup:
    path = Path(path)
    return parse_stabilizer_text(path.read_text(), str(path))


def read_graph(path) -> GraphAdjacency:
    path = Path(path)
    return parse_graph_text(path.read_text(), str(path))


def parse_inline_generators(text: str) -> StabilizerGroup:
    labels = [t for t in text.replace(";", ",").split(",") if t.strip()]
    if not labels:
        raise InputError("no generators given", source="--gens")
    try:
        gens = [parse(t) for t in labels]
        return StabilizerGroup.from_generators(gens)
    except (PauliParseError, StabilizerError) as exc:
        raise InputError(str(exc), source="--gens") from None


@dataclass
class Report:
    """JSON output of one CLI run: ``{n, partition, mode, value, method, witnesses?, circuits?}``."""

    n: int
    partition: str | None
    mode: str
    value: int | None
    method: str | None
    witnesses: dict | None = None
    circuits: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("witnesses", "circuits"):
            if d[key] is None:
                del d[key]
        if not d["extra"]:
            del d["extra"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        known = {"n", "partition", "mode", "value", "method", "witnesses", "circuits", "extra"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown report fields {sorted(unknown)}")
        report = cls(**{k: d.get(k) for k in known if k in d})
        if report.partition is not None:
            Partition.parse(report.partition, report.n)
        return report

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))
