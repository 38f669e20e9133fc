"""Immutable simple graphs with per-vertex neighbour bitsets."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import kernels
from .kernels.tables import MAX_CANON_N, MAX_SMALL_N, pair_index

Pair = tuple[int, int]
PairSet = frozenset  # of Pair, always normalised to u < v


class Mode(str, enum.Enum):
    DELETION = "deletion"
    EDITING = "editing"

    def __str__(self):
        return self.value


def as_mode(mode) -> Mode:
    return mode if isinstance(mode, Mode) else Mode(str(mode))


def norm_pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"self-loop pair ({u}, {v})")
    return (u, v) if u < v else (v, u)


def pairset(pairs: Iterable) -> PairSet:
    return frozenset(norm_pair(int(u), int(v)) for u, v in pairs)


def sorted_pairs(pairs: Iterable[Pair]) -> list[Pair]:
    return sorted(pairs)


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an int bitset of the neighbours of ``v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")

    @property
    def vertex_bits(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[Pair]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_set(self) -> PairSet:
        return frozenset(self.edges())

    def to_mask(self) -> int:
        """Pair-bitmask encoding used by the small-graph kernels."""
        if self.n > MAX_SMALL_N:
            raise ValueError(f"graph too large for mask encoding ({self.n} > {MAX_SMALL_N})")
        mask = 0
        for u, v in self.edges():
            mask |= 1 << pair_index(u, v)
        return mask

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        return make_graph(n, kernels.mask_pairs(mask))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def make_graph(n: int, edges: Iterable) -> Graph:
    """Build a graph; duplicate pairs are harmless, out-of-range endpoints are not."""
    if n < 0:
        raise ValueError("negative vertex count")
    adj = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = g.vertex_bits
    return Graph(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``G[X]`` relabelled to ``0..|X|-1`` in ascending order of the original ids."""
    xs = sorted(set(vertices))
    for v in xs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph with n={g.n}")
    relabel = {v: i for i, v in enumerate(xs)}
    adj = []
    for v in xs:
        a = 0
        for w in iter_bits(g.adj[v]):
            i = relabel.get(w)
            if i is not None:
                a |= 1 << i
        adj.append(a)
    return Graph(len(xs), tuple(adj)), relabel


def apply_modification(g: Graph, pairs: Iterable[Pair], mode) -> Graph:
    """``G - F`` (deletion) or ``G xor F`` (editing)."""
    mode = as_mode(mode)
    adj = list(g.adj)
    for u, v in pairs:
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
            raise ValueError(f"invalid pair ({u}, {v})")
        if mode is Mode.DELETION and not adj[u] >> v & 1:
            raise ValueError(f"deletion of non-edge ({u}, {v})")
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
    return Graph(g.n, tuple(adj))


def _components_within(adj: tuple[int, ...], within: int) -> list[int]:
    comps = []
    remaining = within
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= adj[v]
            frontier = reach & within & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[list[int]]:
    """Components ordered by smallest member, each sorted ascending."""
    return [list(iter_bits(c)) for c in _components_within(g.adj, g.vertex_bits)]


def component_bits(g: Graph) -> list[int]:
    return _components_within(g.adj, g.vertex_bits)


def co_component_bits(g: Graph) -> list[int]:
    return component_bits(complement(g))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_bits(g)) == 1


CanonicalCode = tuple  # (n, minimal pair mask)


@lru_cache(maxsize=1 << 16)
def canonical_mask_form(n: int, mask: int) -> tuple[int, tuple[int, ...]]:
    return kernels.canonical_form(n, mask)


def canonical_form(g: Graph) -> tuple[CanonicalCode, tuple[int, ...]]:
    """Canonical code plus ``perm`` with ``perm[v]`` = canonical position of ``v``."""
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical codes limited to {MAX_CANON_N} vertices, got {g.n}")
    code, perm = canonical_mask_form(g.n, g.to_mask())
    return (g.n, code), perm


def canonical_code(g: Graph) -> CanonicalCode:
    return canonical_form(g)[0]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_code(g) == canonical_code(h)


def all_pairs(n: int) -> list[Pair]:
    return list(combinations(range(n), 2))


# Named graphs used across the package and its tests.

def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return make_graph(n, all_pairs(n))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return make_graph(offset, edges)
