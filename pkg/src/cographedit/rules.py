"""Detection of the branching rules B1-B5 around a fixed induced P4."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from . import kernels
from .catalog import BranchCatalog, fmin, whole_catalog
from .graph import (
    Graph,
    Mode,
    PairSet,
    as_mode,
    bits_of,
    canonical_code,
    complement,
    cycle_graph,
    induced_subgraph,
    iter_bits,
    make_graph,
    path_graph,
)
from .p4 import P4Context, choose_p4_max_p, iter_induced_p4s, p4_context

LABELS = "abcdpq"

# Figure-1 style obstructions to P4-sparseness, on vertices 0..4.
_PAN = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
_FORK = make_graph(5, [(0, 1), (1, 2), (2, 3), (1, 4)])
FORBIDDEN_P4_SPARSE: dict[str, Graph] = {
    "P5": path_graph(5),
    "pan": _PAN,
    "kite": complement(_FORK),
    "C5": cycle_graph(5),
    "co-P5": complement(path_graph(5)),
    "fork": _FORK,
    "co-pan": complement(_PAN),
}
_FORBIDDEN_CODES = {canonical_code(g): name for name, g in FORBIDDEN_P4_SPARSE.items()}


@dataclass(frozen=True)
class ExceptionCatalog:
    """Named 6-vertex graphs exempt from B2 / B4 in deletion mode."""

    b2_exceptions: tuple[tuple[str, Graph], ...]
    b4_exceptions: tuple[tuple[str, Graph], ...]
    waived_in_editing: bool = True

    @property
    def b2_codes(self) -> frozenset:
        return frozenset(canonical_code(g) for _, g in self.b2_exceptions)

    @property
    def b4_codes(self) -> frozenset:
        return frozenset(canonical_code(g) for _, g in self.b4_exceptions)


def parse_exceptions(text: str, source: str = "<exceptions>") -> ExceptionCatalog:
    b2, b4 = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, body = line.split(":", 1)
            rule, name = head.split()
        except ValueError:
            raise ValueError(f"{source}:{lineno}: expected '<rule> <name>: <edges>'") from None
        edges = []
        for token in body.split():
            if len(token) != 2 or any(ch not in LABELS for ch in token) or token[0] == token[1]:
                raise ValueError(f"{source}:{lineno}: bad edge {token!r}")
            edges.append((LABELS.index(token[0]), LABELS.index(token[1])))
        graph = make_graph(6, edges)
        if not all(graph.has_edge(u, v) for u, v in ((0, 1), (1, 2), (2, 3))):
            raise ValueError(f"{source}:{lineno}: a-b-c-d must be a path")
        if graph.has_edge(0, 2) or graph.has_edge(0, 3) or graph.has_edge(1, 3):
            raise ValueError(f"{source}:{lineno}: a-b-c-d must be an induced P4")
        rule = rule.lower()
        if rule == "b2":
            b2.append((name, graph))
        elif rule == "b4":
            b4.append((name, graph))
        else:
            raise ValueError(f"{source}:{lineno}: unknown rule {rule!r}")
    return ExceptionCatalog(tuple(b2), tuple(b4))


def load_exceptions(path: Optional[str | Path] = None) -> ExceptionCatalog:
    if path is None:
        text = resources.files("cographedit.data").joinpath("exceptions.txt").read_text()
        return parse_exceptions(text, "exceptions.txt")
    return parse_exceptions(Path(path).read_text(), str(path))


@lru_cache(maxsize=None)
def default_exceptions() -> ExceptionCatalog:
    return load_exceptions()


@dataclass(frozen=True)
class RuleMatch:
    rule: str
    X: tuple[int, ...]
    catalog: BranchCatalog

    def options(self) -> list[PairSet]:
        """Catalog options renamed to vertex ids of the searched graph."""
        return [frozenset(tuple(sorted((self.X[u], self.X[v]))) for u, v in f) for f in self.catalog.options]


@lru_cache(maxsize=None)
def config_graph(pattern_p: int, pattern_q: int, adjacent: bool) -> Graph:
    """A plus two vertices with the given 4-bit neighbourhood masks over a, b, c, d."""
    edges = [(0, 1), (1, 2), (2, 3)]
    for vertex, pattern in ((4, pattern_p), (5, pattern_q)):
        edges += [(t, vertex) for t in range(4) if pattern >> t & 1]
    if adjacent:
        edges.append((4, 5))
    return make_graph(6, edges)


@lru_cache(maxsize=None)
def _config_code(pattern_p: int, pattern_q: int, adjacent: bool):
    return canonical_code(config_graph(pattern_p, pattern_q, adjacent))


def _build(g: Graph, rule: str, X, mode: Mode, minimize: Optional[bool]) -> RuleMatch:
    if minimize is None:
        minimize = default_minimize(mode)
    xs = tuple(sorted(X))
    sub, _ = induced_subgraph(g, xs)
    return RuleMatch(rule, xs, fmin(sub, mode, minimize_subgraph=minimize))


def _is_exception(g, ctx, u, v, codes) -> bool:
    if not codes:
        return False
    code = _config_code(ctx.pattern(g, u), ctx.pattern(g, v), g.has_edge(u, v))
    return code in codes


def _exceptions_apply(mode: Mode, exceptions: ExceptionCatalog) -> bool:
    return mode is Mode.DELETION or not exceptions.waived_in_editing


def match_b2(g: Graph, ctx: P4Context, mode, exceptions: Optional[ExceptionCatalog] = None,
             minimize: Optional[bool] = None) -> Optional[RuleMatch]:
    mode = as_mode(mode)
    exceptions = exceptions or default_exceptions()
    codes = exceptions.b2_codes if _exceptions_apply(mode, exceptions) else frozenset()
    for p in iter_bits(ctx.Pother):
        for q in iter_bits(ctx.P & ~(1 << p)):
            if not _is_exception(g, ctx, p, q, codes):
                return _build(g, "B2", ctx.witness.vertices + (p, q), mode, minimize)
    return None


def match_b3(g: Graph, ctx: P4Context, mode, exceptions: Optional[ExceptionCatalog] = None,
             minimize: Optional[bool] = None) -> Optional[RuleMatch]:
    mode = as_mode(mode)
    for p in iter_bits(ctx.Pother):
        for t in iter_bits(ctx.T & ~g.adj[p]):
            return _build(g, "B3", ctx.witness.vertices + (p, t), mode, minimize)
    return None


def match_b4(g: Graph, ctx: P4Context, mode, exceptions: Optional[ExceptionCatalog] = None,
             minimize: Optional[bool] = None) -> Optional[RuleMatch]:
    mode = as_mode(mode)
    exceptions = exceptions or default_exceptions()
    codes = exceptions.b4_codes if _exceptions_apply(mode, exceptions) else frozenset()
    for p in iter_bits(ctx.Pother):
        for i in iter_bits(ctx.I & g.adj[p]):
            if not _is_exception(g, ctx, p, i, codes):
                return _build(g, "B4", ctx.witness.vertices + (p, i), mode, minimize)
    return None


@dataclass(frozen=True)
class B5Case:
    """One neighbourhood pattern of rule B5.

    ``variables`` lists (name, class) in scan order; classes are unions of
    I, T, P.  Pairs in neither ``edges`` nor ``non_edges`` are unconstrained.
    """

    number: int
    variables: tuple[tuple[str, str], ...]
    edges: tuple[str, ...]
    non_edges: tuple[str, ...]


def _case(number, variables, edges, free=()):
    names = [name for name, _ in variables]
    all_pairs = {a + b for i, a in enumerate(names) for b in names[i + 1:]}
    norm = lambda pair: "".join(sorted(pair, key=names.index))  # noqa: E731
    fixed = {norm(e) for e in edges} | {norm(f) for f in free}
    non_edges = tuple(sorted(all_pairs - fixed))
    return B5Case(number, tuple(variables), tuple(norm(e) for e in edges), non_edges)


B5_CASES: tuple[B5Case, ...] = (
    _case(1, (("u", "IP"), ("v", "IP"), ("x", "T")), ("uv", "ux")),
    _case(2, (("u", "TP"), ("v", "TP"), ("x", "I")), ("vx",)),
    _case(3, (("v", "IP"), ("x", "T"), ("y", "T")), ("vx",)),
    _case(4, (("v", "TP"), ("x", "I"), ("y", "I")), ("vy", "xy")),
    _case(5, (("v", "P"), ("x", "T"), ("y", "T")), (), free=("xy",)),
    _case(6, (("v", "P"), ("x", "I"), ("y", "I")), ("vx", "vy"), free=("xy",)),
    _case(7, (("u", "P"), ("v", "P"), ("x", "T")), (), free=("uv",)),
    _case(8, (("u", "P"), ("v", "P"), ("x", "I")), ("ux", "vx"), free=("uv",)),
    _case(9, (("v", "P"), ("x", "T"), ("y", "I")), ("xy",)),
    _case(10, (("v", "P"), ("x", "I"), ("y", "T")), ("vx", "vy")),
    _case(11, (("v", "P"), ("x", "T"), ("y", "I")), ("vy",)),
    _case(12, (("v", "P"), ("x", "I"), ("y", "T")), ("vx", "xy")),
    _case(13, (("v", "P"), ("x", "T"), ("y", "T"), ("z", "I")), ("vx", "xy", "yz")),
    _case(14, (("v", "P"), ("x", "I"), ("y", "I"), ("z", "T")), ("vy", "vz", "xz")),
)


def class_bits(ctx: P4Context, cls: str) -> int:
    out = 0
    for letter in cls:
        out |= {"I": ctx.I, "T": ctx.T, "P": ctx.P}[letter]
    return out


def find_b5_vertices(g: Graph, ctx: P4Context, case: B5Case) -> Optional[dict[str, int]]:
    """First assignment (ascending ids, variables in order) realising ``case``."""
    names = [name for name, _ in case.variables]
    domains = [class_bits(ctx, cls) for _, cls in case.variables]
    edges, non_edges = set(case.edges), set(case.non_edges)
    assignment: dict[str, int] = {}

    def extend(i: int, used: int) -> bool:
        if i == len(names):
            return True
        cand = domains[i] & ~used
        for prev in names[:i]:
            pair = prev + names[i]
            if pair in edges:
                cand &= g.adj[assignment[prev]]
            elif pair in non_edges:
                cand &= ~g.adj[assignment[prev]]
        for v in iter_bits(cand):
            assignment[names[i]] = v
            if extend(i + 1, used | (1 << v)):
                return True
        assignment.pop(names[i], None)
        return False

    return dict(assignment) if extend(0, 0) else None


def match_b5(g: Graph, ctx: P4Context, mode, exceptions: Optional[ExceptionCatalog] = None,
             minimize: Optional[bool] = None, cases=None) -> Optional[RuleMatch]:
    """First B5 case (in table order, optionally restricted to ``cases``) present around A."""
    mode = as_mode(mode)
    for case in B5_CASES:
        if cases is not None and case.number not in cases:
            continue
        found = find_b5_vertices(g, ctx, case)
        if found is not None:
            return _build(g, f"B5-case-{case.number}", ctx.witness.vertices + tuple(found.values()), mode, minimize)
    return None


def find_p4_sparse_violation(g: Graph) -> Optional[tuple[int, ...]]:
    """A 5-set inducing one of the seven P4-sparse obstructions, or None."""
    for w in iter_induced_p4s(g):
        for v in iter_bits(g.vertex_bits & ~w.bits):
            xs = tuple(sorted(w.vertices + (v,)))
            sub, _ = induced_subgraph(g, xs)
            if kernels.count_p4(5, sub.to_mask()) >= 2:
                return xs
    return None


def is_p4_sparse(g: Graph) -> bool:
    return find_p4_sparse_violation(g) is None


def obstruction_name(g: Graph) -> Optional[str]:
    return _FORBIDDEN_CODES.get(canonical_code(g)) if g.n == 5 else None


def match_b1(g: Graph, mode) -> Optional[RuleMatch]:
    """B1 branches on the full minimal family of a P4-sparse obstruction."""
    mode = as_mode(mode)
    xs = find_p4_sparse_violation(g)
    if xs is None:
        return None
    sub, _ = induced_subgraph(g, xs)
    return RuleMatch("B1", xs, whole_catalog(sub, mode))


CONTEXT_RULES = (("B2", match_b2), ("B3", match_b3), ("B4", match_b4), ("B5", match_b5))


def match_in_context(g: Graph, ctx: P4Context, mode, exceptions=None, minimize=None) -> Optional[RuleMatch]:
    for _, matcher in CONTEXT_RULES:
        found = matcher(g, ctx, mode, exceptions, minimize)
        if found is not None:
            return found
    return None


def find_rule_application(g: Graph, mode, exceptions: Optional[ExceptionCatalog] = None,
                          use_b1: bool = False, minimize: Optional[bool] = None) -> Optional[RuleMatch]:
    """First applicable rule for the max-|P(A)| P4, in priority order B2, B3, B4, B5.

    ``use_b1`` appends B1 as a last resort (deletion only).
    """
    mode = as_mode(mode)
    if minimize is None:
        minimize = default_minimize(mode)
    try:
        w = choose_p4_max_p(g)
    except ValueError:
        return None
    found = match_in_context(g, p4_context(g, w), mode, exceptions, minimize)
    if found is None and use_b1 and mode is Mode.DELETION:
        found = match_b1(g, mode)
    return found


def default_minimize(mode) -> bool:
    """Deletion branches on the best induced subgraph; editing on the whole host."""
    return as_mode(mode) is Mode.DELETION


def pattern_bits(g: Graph, v: int, a_vertices) -> int:
    return bits_of(t for t, x in enumerate(a_vertices) if g.has_edge(v, x))
