"""Exact solving of graphs on which no branching rule fires.

Such graphs are disconnected, co-disconnected, spiders, the bipartite
"case 4" shape (deletion only), or small enough to solve exhaustively.
Parts are handed to a ``solve_part`` callback so the search driver can
re-enter branching on them; the default recurses here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional

from . import kernels
from .graph import (
    Graph,
    Mode,
    PairSet,
    as_mode,
    co_component_bits,
    component_bits,
    induced_subgraph,
    iter_bits,
    make_graph,
)
from .kernels.tables import full_mask
from .p4 import is_cograph

TINY_LIMIT = {Mode.DELETION: 6, Mode.EDITING: 5}

SolvePart = Callable[[Graph], tuple[int, PairSet]]


class NotRuleFree(ValueError):
    """The graph matches none of the rule-free decomposition cases."""


@dataclass(frozen=True)
class SpiderPartition:
    S: tuple[int, ...]
    K: tuple[int, ...]
    R: tuple[int, ...]
    phi: tuple[tuple[int, int], ...]  # (s, phi(s)) sorted by s
    kind: str  # "thin" or "thick"

    @property
    def q(self) -> int:
        return len(self.S)


@dataclass(frozen=True)
class RuleFreeClass:
    tag: str
    payload: object = None


def is_spider_partition(g: Graph, part: SpiderPartition) -> bool:
    """Check a partition against the spider definition verbatim."""
    S, K, R = set(part.S), set(part.K), set(part.R)
    if len(S) != len(K) or len(S) < 2 or S & K or S & R or K & R or S | K | R != set(range(g.n)):
        return False
    if any(g.has_edge(u, v) for u in S for v in S if u < v):
        return False
    if any(not g.has_edge(u, v) for u in K for v in K if u < v):
        return False
    if any(not g.has_edge(r, k) for r in R for k in K) or any(g.has_edge(r, s) for r in R for s in S):
        return False
    phi = dict(part.phi)
    if set(phi) != S or set(phi.values()) != K:
        return False
    for s in S:
        legs = {k for k in K if g.has_edge(s, k)}
        expected = {phi[s]} if part.kind == "thin" else K - {phi[s]}
        if legs != expected:
            return False
    return part.kind in ("thin", "thick")


def _legs(g: Graph, s_bits: int, k_bits: int, kind: str) -> Optional[tuple[tuple[int, int], ...]]:
    phi = []
    for s in iter_bits(s_bits):
        own = g.adj[s] & k_bits if kind == "thin" else k_bits & ~g.adj[s]
        if own.bit_count() != 1:
            return None
        phi.append((s, own.bit_length() - 1))
    if len({k for _, k in phi}) != len(phi):
        return None
    return tuple(phi)


def recognize_spider(g: Graph) -> Optional[SpiderPartition]:
    """Spider partition of ``g`` if one exists.

    In any spider the clique K is exactly the set of maximum-degree vertices:
    a K vertex has degree q + |R| (thin) or 2q - 2 + |R| (thick), strictly
    above every S and R vertex.  The rest follows and is validated.
    """
    if g.n < 4:
        return None
    degrees = [g.degree(v) for v in range(g.n)]
    top = max(degrees)
    k_bits = sum(1 << v for v in range(g.n) if degrees[v] == top)
    r_bits = 0
    for v in range(g.n):
        if not k_bits >> v & 1 and g.adj[v] & k_bits == k_bits:
            r_bits |= 1 << v
    s_bits = g.vertex_bits & ~k_bits & ~r_bits
    for kind in ("thin", "thick"):
        phi = _legs(g, s_bits, k_bits, kind)
        if phi is None:
            continue
        part = SpiderPartition(tuple(iter_bits(s_bits)), tuple(iter_bits(k_bits)), tuple(iter_bits(r_bits)), phi, kind)
        if is_spider_partition(g, part):
            return part
    return None


def case4_structure(g: Graph) -> Optional[tuple[tuple[int, int], int]]:
    """``((x1, x2), y)`` if ``g`` is bipartite with |X| = 2, ``y`` adjacent to one
    vertex of X and every other vertex adjacent to both."""
    if g.n < 3:
        return None
    for x1 in range(g.n):
        for x2 in range(x1 + 1, g.n):
            if g.has_edge(x1, x2):
                continue
            xb = (1 << x1) | (1 << x2)
            ys = g.vertex_bits & ~xb
            if (g.adj[x1] | g.adj[x2]) & ys != ys or (g.adj[x1] | g.adj[x2]) & xb:
                continue
            if any(g.adj[y] & ys for y in iter_bits(ys)):
                continue
            half = [y for y in iter_bits(ys) if (g.adj[y] & xb).bit_count() == 1]
            if len(half) == 1:
                return (x1, x2), half[0]
    return None


def classify_rule_free(g: Graph, mode) -> RuleFreeClass:
    """Which decomposition case ``g`` falls in (structure only, rules are not checked)."""
    mode = as_mode(mode)
    comps = component_bits(g)
    if len(comps) > 1:
        return RuleFreeClass("disconnected", [list(iter_bits(c)) for c in comps])
    cocomps = co_component_bits(g)
    if len(cocomps) > 1:
        return RuleFreeClass("co-disconnected", [list(iter_bits(c)) for c in cocomps])
    if g.n <= TINY_LIMIT[mode]:
        return RuleFreeClass("tiny", g.n)
    spider = recognize_spider(g)
    if spider is not None:
        return RuleFreeClass("spider", spider)
    if mode is Mode.DELETION:
        shape = case4_structure(g)
        if shape is not None:
            return RuleFreeClass("case4-bipartite", shape)
    return RuleFreeClass("not-rule-free")


def _head_formula(q: int, kind: str, mode: Mode) -> int:
    if mode is Mode.DELETION and kind == "thick":
        return q * (q - 1) // 2
    return q - 1


@lru_cache(maxsize=None)
def head_cost_table() -> dict[tuple[Mode, str, int], int]:
    text = resources.files("cographedit.data").joinpath("spider_heads.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].split()
        if line:
            mode, kind, q, cost = line
            table[(Mode(mode), kind, int(q))] = int(cost)
    for (mode, kind, q), cost in table.items():
        if _head_formula(q, kind, mode) != cost:
            raise AssertionError(f"spider head table disagrees with closed form at {mode} {kind} q={q}")
    return table


def spider_head_cost(q: int, kind: str, mode) -> int:
    mode = as_mode(mode)
    if q < 2:
        raise ValueError("spider heads need q >= 2")
    if kind not in ("thin", "thick"):
        raise ValueError(f"unknown spider kind {kind!r}")
    return head_cost_table().get((mode, kind, q), _head_formula(q, kind, mode))


def spider_head_certificate(part: SpiderPartition, mode) -> PairSet:
    """An optimal head modification that stays valid with any R attached.

    Deletion, thin: remove every leg but the last.  Deletion, thick: remove
    s_i - phi(s_j) for j < i, leaving nested neighbourhoods.  Editing, thick:
    add the missing leg of every s but the last.
    """
    mode = as_mode(mode)
    phi = list(part.phi)
    if part.kind == "thin" or part.q == 2:
        return frozenset(tuple(sorted(pair)) for pair in phi[:-1])
    if mode is Mode.EDITING:
        return frozenset(tuple(sorted(pair)) for pair in phi[:-1])
    out = set()
    for i, (s, _) in enumerate(phi):
        for _, k in phi[:i]:
            out.add(tuple(sorted((s, k))))
    return frozenset(out)


def _exhaustive(g: Graph, mode: Mode) -> tuple[int, PairSet]:
    mask = g.to_mask()
    cands = [kernels.pair_index(u, v) for u, v in g.edges()] if mode is Mode.DELETION else range(kernels.num_pairs(g.n))
    f = kernels.min_set_combinations(g.n, mask, list(cands))
    if f is None:
        raise RuntimeError("no modification set found")
    return f.bit_count(), frozenset(kernels.mask_pairs(f))


def _lift(cert: PairSet, vertices) -> PairSet:
    return frozenset(tuple(sorted((vertices[u], vertices[v]))) for u, v in cert)


def solve_rule_free(g: Graph, mode, solve_part: Optional[SolvePart] = None) -> tuple[int, PairSet]:
    """Minimum modification cost and certificate of a rule-free graph."""
    mode = as_mode(mode)
    if solve_part is None:
        def solve_part(h):
            return solve_rule_free(h, mode)

    if is_cograph(g):
        return 0, frozenset()
    cls = classify_rule_free(g, mode)
    if cls.tag in ("disconnected", "co-disconnected"):
        total, cert = 0, set()
        for part in cls.payload:
            sub, _ = induced_subgraph(g, part)
            cost, sub_cert = solve_part(sub)
            total += cost
            cert |= _lift(sub_cert, part)
        return total, frozenset(cert)
    if cls.tag == "tiny":
        return _exhaustive(g, mode)
    if cls.tag == "spider":
        part = cls.payload
        head = spider_head_cost(part.q, part.kind, mode)
        cert = set(spider_head_certificate(part, mode))
        if len(part.R) >= 4:
            sub, _ = induced_subgraph(g, part.R)
            cost, sub_cert = solve_part(sub)
            head += cost
            cert |= _lift(sub_cert, part.R)
        return head, frozenset(cert)
    if cls.tag == "case4-bipartite":
        (x1, x2), y = cls.payload
        x = x1 if g.has_edge(y, x1) else x2
        return 1, frozenset({tuple(sorted((x, y)))})
    raise NotRuleFree("graph matches no rule-free decomposition case")


def alpha_rule_free(g: Graph, solve_part: Optional[SolvePart] = None) -> tuple[int, PairSet]:
    return solve_rule_free(g, Mode.DELETION, solve_part)


def editing_cost_rule_free(g: Graph, solve_part: Optional[SolvePart] = None) -> tuple[int, PairSet]:
    return solve_rule_free(g, Mode.EDITING, solve_part)


def spider_graph(q: int, kind: str, r_edges=(), r_count: int = 0) -> Graph:
    """Spider with S = 0..q-1, K = q..2q-1 (phi(i) = q + i) and R after that.

    ``r_edges`` are pairs of R-local indices.
    """
    edges = [(q + i, q + j) for i in range(q) for j in range(i + 1, q)]
    for i in range(q):
        for j in range(q):
            if (kind == "thin") == (i == j):
                edges.append((i, q + j))
    base = 2 * q
    edges += [(base + r, q + j) for r in range(r_count) for j in range(q)]
    edges += [(base + u, base + v) for u, v in r_edges]
    return make_graph(base + r_count, edges)


def calibrate_head_costs(max_q: int = 5) -> dict[tuple[Mode, str, int], int]:
    """Recompute the head table by exhaustive bounded search (q <= 5 fits the kernels)."""
    out = {}
    for mode in Mode:
        for kind in ("thin", "thick"):
            for q in range(2, max_q + 1):
                head = spider_graph(q, kind)
                mask = head.to_mask()
                allowed = mask if mode is Mode.DELETION else full_mask(head.n)
                f = kernels.min_set_branching(head.n, mask, allowed, kernels.num_pairs(head.n))
                out[(mode, kind, q)] = f.bit_count()
    return out
