"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's kernels: P4 detection is a
degree-sequence test on every 4-subset, and minimal families come from plain
subset enumeration.
"""

import random
from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from cographedit.graph import Graph, make_graph


def naive_is_cograph(n, edges):
    es = {tuple(sorted(e)) for e in edges}
    for quad in combinations(range(n), 4):
        inside = [(u, v) for u, v in combinations(quad, 2) if (u, v) in es]
        if len(inside) != 3:
            continue
        deg = sorted(sum(v in e for e in inside) for v in quad)
        if deg == [1, 1, 2, 2]:
            return False
    return True


def _all_pairs(n):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _valid_subset_table(n, edges, candidates):
    """Boolean array over all 2^len(candidates) subsets: modified graph is a cograph."""
    pairs = _all_pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    base = np.zeros(len(pairs), dtype=bool)
    for e in edges:
        base[index[tuple(sorted(e))]] = True
    size = len(candidates)
    subsets = np.arange(1 << size, dtype=np.int64)
    state = np.repeat(base[None, :], 1 << size, axis=0)
    for bit, pair in enumerate(candidates):
        flip = (subsets >> bit) & 1 == 1
        state[flip, index[pair]] ^= True
    ok = np.ones(1 << size, dtype=bool)
    for quad in combinations(range(n), 4):
        cols = [index[p] for p in combinations(quad, 2)]
        sub = state[:, cols]
        count = sub.sum(axis=1)
        degs = np.zeros((1 << size, 4), dtype=np.int64)
        for c, (u, v) in zip(range(6), combinations(range(4), 2)):
            degs[:, u] += sub[:, c]
            degs[:, v] += sub[:, c]
        degs.sort(axis=1)
        p4 = (count == 3) & (degs[:, 0] == 1) & (degs[:, 1] == 1) & (degs[:, 2] == 2) & (degs[:, 3] == 2)
        ok &= ~p4
    return subsets, ok


def _candidates(n, edges, mode):
    if mode == "deletion":
        return sorted(tuple(sorted(e)) for e in edges)
    return _all_pairs(n)


def oracle_min(n, edges, mode):
    """Smallest valid modification size, scanning subsets in order of size."""
    cands = _candidates(n, edges, mode)
    es = {tuple(sorted(e)) for e in edges}
    for size in range(len(cands) + 1):
        for f in combinations(cands, size):
            if naive_is_cograph(n, es.symmetric_difference(f)):
                return size
    raise AssertionError("unreachable")


def oracle_minimal_family(n, edges, mode):
    """Every inclusion-minimal valid modification set, as a set of frozensets."""
    cands = _candidates(n, edges, mode)
    subsets, ok = _valid_subset_table(n, edges, cands)
    valid = sorted(subsets[ok].tolist(), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in valid:
        if not any(f & s == f for f in minimal):
            minimal.append(s)
    return {frozenset(cands[i] for i in range(len(cands)) if f >> i & 1) for f in minimal}


def random_graph(rng, n, p):
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def atlas_graphs(max_n, connected=False):
    """One graph per isomorphism class (networkx atlas, n <= 7)."""
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or h.number_of_nodes() > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        out.append(make_graph(h.number_of_nodes(), list(h.edges())))
    return out


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


PAN = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])


@pytest.fixture
def rng():
    return random.Random(20240611)
