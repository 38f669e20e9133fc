"""Vectorised numpy implementations of the small-graph kernels.

Same contracts as the numba versions; search kernels run level by level over
whole frontiers instead of depth-first.
"""

from itertools import combinations, islice

import numpy as np

_CHUNK = 4096


def _patterns(masks, quads):
    bits = (masks[:, None, None] >> quads[None, :, :]) & 1
    return (bits << np.arange(6, dtype=np.int64)).sum(axis=2)


def _p4_matrix(masks, quads, p4):
    return p4[_patterns(masks, quads)]


def cograph_flags(masks, quads, p4):
    masks = np.asarray(masks, dtype=np.int64)
    out = np.empty(masks.shape[0], dtype=np.bool_)
    if quads.shape[0] == 0:
        out[:] = True
        return out
    for lo in range(0, masks.shape[0], _CHUNK):
        out[lo:lo + _CHUNK] = ~_p4_matrix(masks[lo:lo + _CHUNK], quads, p4).any(axis=1)
    return out


def is_cograph(mask, quads, p4):
    return bool(cograph_flags(np.array([mask], dtype=np.int64), quads, p4)[0])


def count_p4(mask, quads, p4):
    if quads.shape[0] == 0:
        return 0
    return int(_p4_matrix(np.array([mask], dtype=np.int64), quads, p4).sum())


def canonical_form(n, mask, perms, pair_table):
    ends = [(i, j) for j in range(n) for i in range(j) if (mask >> int(pair_table[i, j])) & 1]
    if not ends:
        return 0, 0
    ei, ej = np.array(ends, dtype=np.int64).T
    idx = pair_table[perms[:, ei], perms[:, ej]]
    codes = np.bitwise_or.reduce(np.left_shift(np.int64(1), idx), axis=1)
    arg = int(np.argmin(codes))
    return int(codes[arg]), arg


def _quad_masks(quads):
    return np.bitwise_or.reduce(np.left_shift(np.int64(1), quads), axis=1)


def _popcount(a):
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def _expand(f, x, mask, allowed, quads, p4, qmasks):
    """One frontier step: returns (leaf flags, child f, child x) in lexicographic order."""
    isp4 = _p4_matrix(mask ^ f, quads, p4)
    leaf = ~isp4.any(axis=1)
    avail = qmasks[None, :] & np.int64(allowed) & ~(f | x)[:, None]
    count = np.where(isp4, _popcount(avail), 99)
    pick = np.argmin(count, axis=1)
    chosen = avail[np.arange(f.shape[0]), pick]
    chosen[leaf] = 0
    rows, cols = np.nonzero((chosen[:, None] >> np.arange(63, dtype=np.int64)[None, :]) & 1)
    bit = np.left_shift(np.int64(1), cols)
    below = chosen[rows] & (bit - 1)
    return leaf, f[rows] | bit, x[rows] | below


def _not_dominated(f, found):
    keep = np.ones(f.shape[0], dtype=np.bool_)
    if found.shape[0] == 0:
        return keep
    for lo in range(0, f.shape[0], _CHUNK):
        block = f[lo:lo + _CHUNK]
        hit = ((block[:, None] & found[None, :]) == found[None, :]).any(axis=1)
        keep[lo:lo + _CHUNK] = ~hit
    return keep


def minimal_sets(mask, allowed, quads, p4):
    qmasks = _quad_masks(quads)
    f = np.zeros(1, dtype=np.int64)
    x = np.zeros(1, dtype=np.int64)
    found = np.zeros(0, dtype=np.int64)
    while f.shape[0]:
        keep = _not_dominated(f, found)
        f, x = f[keep], x[keep]
        if not f.shape[0]:
            break
        leaf, nf, nx = _expand(f, x, mask, allowed, quads, p4, qmasks)
        found = np.concatenate([found, f[leaf]])
        f, x = nf, nx
    # leaves are editing sets; drop those containing another leaf
    keep = np.ones(found.shape[0], dtype=np.bool_)
    for lo in range(0, found.shape[0], _CHUNK):
        block = found[lo:lo + _CHUNK]
        sub = ((block[:, None] & found[None, :]) == found[None, :]) & (block[:, None] != found[None, :])
        keep[lo:lo + _CHUNK] = ~sub.any(axis=1)
    return found[keep]


def min_set_branching(mask, allowed, quads, p4, max_size):
    qmasks = _quad_masks(quads)
    f = np.zeros(1, dtype=np.int64)
    x = np.zeros(1, dtype=np.int64)
    for _depth in range(max_size + 1):
        if not f.shape[0]:
            return -1
        leaf, nf, nx = _expand(f, x, mask, allowed, quads, p4, qmasks)
        if leaf.any():
            return int(f[np.argmax(leaf)])
        f, x = nf, nx
    return -1


def min_set_combinations(mask, candidates, quads, p4, max_size, work_limit):
    candidates = np.asarray(candidates, dtype=np.int64)
    bits = np.left_shift(np.int64(1), candidates)
    work = 0
    for s in range(min(max_size, candidates.shape[0]) + 1):
        combos = combinations(range(candidates.shape[0]), s)
        while True:
            chunk = list(islice(combos, 1 << 16))
            if not chunk:
                break
            idx = np.array(chunk, dtype=np.int64).reshape(len(chunk), s)
            f = np.bitwise_or.reduce(bits[idx], axis=1) if s else np.zeros(len(chunk), dtype=np.int64)
            ok = cograph_flags(mask ^ f, quads, p4)
            if ok.any():
                first = int(np.argmax(ok))
                if work + first + 1 > work_limit + 1:
                    return -2
                return int(f[first])
            work += len(chunk)
            if work > work_limit:
                return -2
    return -1
