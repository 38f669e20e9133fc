"""Plain-text graph and certificate files.

Graph file::

    # comment
    n m
    u v        (m lines, 0 <= u < v < n)

Certificate file: one pair per line, ``u v`` for deletion and ``u v +`` /
``u v -`` for editing (the sign is optional on input).
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .graph import Graph, Mode, PairSet, as_mode, make_graph

PathLike = Union[str, Path]


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(fields, number, source, count):
    if len(fields) != count:
        raise GraphFormatError(f"expected {count} integers, got {len(fields)} fields", number, source)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError("non-integer field", number, source) from None


def parse_graph(text: str, source: str = "<input>") -> Graph:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise GraphFormatError("missing header line 'n m'", None, source) from None
    n, m = _ints(header.split(), number, source, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be non-negative", number, source)
    edges = []
    seen = set()
    last = number
    for number, line in lines:
        u, v = _ints(line.split(), number, source, 2)
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge {u} {v} violates 0 <= u < v < {n}", number, source)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", number, source)
        seen.add((u, v))
        edges.append((u, v))
        last = number
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}", last, source)
    return make_graph(n, edges)


def read_graph(path: PathLike) -> Graph:
    path = Path(path)
    return parse_graph(path.read_text(), str(path))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: PathLike) -> None:
    Path(path).write_text(format_graph(g))


def parse_certificate(text: str, g: Graph, mode, source: str = "<certificate>") -> PairSet:
    mode = as_mode(mode)
    pairs = set()
    for number, line in _content_lines(text):
        fields = line.split()
        sign = None
        if len(fields) == 3:
            sign = fields.pop().replace("−", "-")
            if sign not in "+-" or len(sign) != 1:
                raise GraphFormatError(f"bad sign {sign!r}", number, source)
            if mode is Mode.DELETION and sign == "+":
                raise GraphFormatError("deletion certificates cannot add pairs", number, source)
        u, v = sorted(_ints(fields, number, source, 2))
        if u == v or not 0 <= u < v < g.n:
            raise GraphFormatError(f"pair {u} {v} out of range", number, source)
        if sign is not None and (sign == "-") != g.has_edge(u, v):
            raise GraphFormatError(f"sign {sign} does not match pair {u} {v}", number, source)
        if (u, v) in pairs:
            raise GraphFormatError(f"duplicate pair {u} {v}", number, source)
        pairs.add((u, v))
    return frozenset(pairs)


def read_certificate(path: PathLike, g: Graph, mode) -> PairSet:
    path = Path(path)
    return parse_certificate(path.read_text(), g, mode, str(path))


def format_certificate(g: Graph, pairs: Iterable, mode) -> str:
    mode = as_mode(mode)
    out = []
    for u, v in sorted(pairs):
        if mode is Mode.EDITING:
            out.append(f"{u} {v} {'-' if g.has_edge(u, v) else '+'}")
        else:
            out.append(f"{u} {v}")
    return "".join(line + "\n" for line in out)
