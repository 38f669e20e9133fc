"""Lookup tables shared by both kernel backends.

Small graphs (at most ``MAX_SMALL_N`` vertices) are encoded as one int64 whose
bit ``pair_index(i, j)`` is set iff ``{i, j}`` is an edge.  The index is colex,
so a graph on ``n`` vertices keeps the same bits when viewed on ``n + 1``.
"""

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

MAX_SMALL_N = 11  # C(11, 2) = 55 pair bits fit in an int64
MAX_CANON_N = 8

QUAD_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def pair_index(i, j):
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def num_pairs(n):
    return n * (n - 1) // 2


def _build_pair_table():
    table = np.full((MAX_SMALL_N, MAX_SMALL_N), -1, dtype=np.int64)
    for i in range(MAX_SMALL_N):
        for j in range(MAX_SMALL_N):
            if i != j:
                table[i, j] = pair_index(i, j)
    return table


def _build_pair_endpoints():
    ends = np.zeros((num_pairs(MAX_SMALL_N), 2), dtype=np.int64)
    for j in range(MAX_SMALL_N):
        for i in range(j):
            ends[pair_index(i, j)] = (i, j)
    return ends


def _build_p4_patterns():
    # 6-bit pattern over QUAD_PAIRS -> is the 4-vertex graph a P4?
    table = np.zeros(64, dtype=np.bool_)
    for order in permutations(range(4)):
        path = {frozenset(order[t:t + 2]) for t in range(3)}
        pattern = 0
        for t, pair in enumerate(QUAD_PAIRS):
            if frozenset(pair) in path:
                pattern |= 1 << t
        table[pattern] = True
    return table


PAIR_TABLE = _build_pair_table()
PAIR_ENDPOINTS = _build_pair_endpoints()
P4_PATTERNS = _build_p4_patterns()


@lru_cache(maxsize=None)
def quad_table(n):
    """Pair indices of the 6 pairs of every 4-subset of ``range(n)``, shape (C(n,4), 6)."""
    rows = [[pair_index(q[a], q[b]) for a, b in QUAD_PAIRS] for q in combinations(range(n), 4)]
    table = np.array(rows, dtype=np.int64).reshape(-1, 6)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def perm_table(n):
    """All permutations of ``range(n)`` in lexicographic order, shape (n!, n)."""
    if n > MAX_CANON_N:
        raise ValueError(f"canonical forms limited to {MAX_CANON_N} vertices, got {n}")
    if n == 0:
        table = np.zeros((1, 0), dtype=np.int64)
    else:
        table = np.array(list(permutations(range(n))), dtype=np.int64)
    table.flags.writeable = False
    return table


def full_mask(n):
    return (1 << num_pairs(n)) - 1
