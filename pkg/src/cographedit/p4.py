"""Induced P4 detection and the vertex classification around a fixed P4."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import Graph, bits_of, iter_bits


@dataclass(frozen=True)
class P4Witness:
    a: int
    b: int
    c: int
    d: int

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def bits(self) -> int:
        return bits_of(self.vertices)

    def is_valid(self, g: Graph) -> bool:
        a, b, c, d = self.vertices
        if len(set(self.vertices)) != 4:
            return False
        return (
            g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d)
            and not g.has_edge(a, c) and not g.has_edge(a, d) and not g.has_edge(b, d)
        )


@dataclass(frozen=True)
class P4Context:
    """Partition of ``V(G) - A`` by adjacency to the P4 ``A`` (all fields are bitsets)."""

    witness: P4Witness
    I: int
    T: int
    Pmid: int
    Pother: int

    @property
    def A(self) -> int:
        return self.witness.bits

    @property
    def P(self) -> int:
        return self.Pmid | self.Pother

    def members(self, name: str) -> list[int]:
        return list(iter_bits(getattr(self, name)))

    def pattern(self, g: Graph, v: int) -> int:
        """4-bit mask of ``N(v)`` over the path order a, b, c, d."""
        return sum(1 << t for t, x in enumerate(self.witness.vertices) if g.has_edge(v, x))


def iter_induced_p4s(g: Graph, first_only: bool = False) -> Iterator[P4Witness]:
    """Every induced P4 once, oriented with ``a < d``, in lexicographic order."""
    adj = g.adj
    for a in range(g.n):
        above_a = ~((1 << (a + 1)) - 1)
        for b in iter_bits(adj[a]):
            cs = adj[b] & ~adj[a] & ~(1 << a)
            for c in iter_bits(cs):
                ds = adj[c] & ~adj[a] & ~adj[b] & ~(1 << a) & ~(1 << b) & above_a
                for d in iter_bits(ds):
                    yield P4Witness(a, b, c, d)
                    if first_only:
                        return


def find_induced_p4(g: Graph) -> Optional[P4Witness]:
    return next(iter_induced_p4s(g, first_only=True), None)


def is_cograph(g: Graph) -> bool:
    return find_induced_p4(g) is None


def count_induced_p4s(g: Graph) -> int:
    return sum(1 for _ in iter_induced_p4s(g))


def packing_lower_bound(g: Graph, editing: bool = False) -> int:
    """Size of a greedy packing of induced P4s with pairwise disjoint modifiable pairs.

    Each packed P4 needs a modification among its own pairs, so the packing
    size bounds the optimum from below. Deletion can only touch the three
    path edges; editing can touch all six pairs.
    """
    used: set = set()
    count = 0
    for w in iter_induced_p4s(g):
        a, b, c, d = w.a, w.b, w.c, w.d
        if editing:
            quad = sorted((a, b, c, d))
            pairs = [(quad[i], quad[j]) for i in range(4) for j in range(i + 1, 4)]
        else:
            pairs = [(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(c, d), max(c, d))]
        if used.isdisjoint(pairs):
            used.update(pairs)
            count += 1
    return count


def _p_bits(g: Graph, w: P4Witness) -> int:
    adj = g.adj
    touched = adj[w.a] | adj[w.b] | adj[w.c] | adj[w.d]
    full = adj[w.a] & adj[w.b] & adj[w.c] & adj[w.d]
    return touched & ~full & ~w.bits


def p4_context(g: Graph, w: P4Witness) -> P4Context:
    if not w.is_valid(g):
        raise ValueError(f"{w} is not an induced P4")
    adj = g.adj
    a_bits = w.bits
    touched = adj[w.a] | adj[w.b] | adj[w.c] | adj[w.d]
    t_bits = adj[w.a] & adj[w.b] & adj[w.c] & adj[w.d]
    i_bits = g.vertex_bits & ~touched & ~a_bits
    p_bits = touched & ~t_bits & ~a_bits
    mid = (1 << w.b) | (1 << w.c)
    pmid = 0
    for v in iter_bits(p_bits):
        if adj[v] & a_bits == mid:
            pmid |= 1 << v
    return P4Context(w, I=i_bits, T=t_bits, Pmid=pmid, Pother=p_bits & ~pmid)


def choose_p4_max_p(g: Graph) -> P4Witness:
    """The induced P4 maximising ``|P(A)|``; ties go to the lexicographically first."""
    best, best_size = None, -1
    for w in iter_induced_p4s(g):
        size = _p_bits(g, w).bit_count()
        if size > best_size:
            best, best_size = w, size
    if best is None:
        raise ValueError("graph is a cograph")
    return best
