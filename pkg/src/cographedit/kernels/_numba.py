"""numba implementations of the small-graph kernels."""

import numpy as np
from numba import njit


@njit(cache=True)
def _quad_pattern(g, quads, r):
    pattern = 0
    for t in range(6):
        pattern |= ((g >> quads[r, t]) & 1) << t
    return pattern


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def is_cograph(mask, quads, p4):
    for r in range(quads.shape[0]):
        if p4[_quad_pattern(mask, quads, r)]:
            return False
    return True


@njit(cache=True)
def cograph_flags(masks, quads, p4):
    out = np.empty(masks.shape[0], dtype=np.bool_)
    for b in range(masks.shape[0]):
        out[b] = is_cograph(masks[b], quads, p4)
    return out


@njit(cache=True)
def count_p4(mask, quads, p4):
    c = 0
    for r in range(quads.shape[0]):
        if p4[_quad_pattern(mask, quads, r)]:
            c += 1
    return c


@njit(cache=True)
def canonical_form(n, mask, perms, pair_table):
    ei = np.empty(n * n, dtype=np.int64)
    ej = np.empty(n * n, dtype=np.int64)
    m = 0
    for j in range(n):
        for i in range(j):
            if (mask >> pair_table[i, j]) & 1:
                ei[m] = i
                ej[m] = j
                m += 1
    best = -1
    arg = 0
    for r in range(perms.shape[0]):
        code = 0
        for e in range(m):
            code |= 1 << pair_table[perms[r, ei[e]], perms[r, ej[e]]]
        if best < 0 or code < best:
            best = code
            arg = r
    return best, arg


@njit(cache=True)
def _branch_pairs(g, blocked, allowed, quads, p4):
    """Branch set of the first induced P4 with fewest free pairs.

    Returns -1 when ``g`` is a cograph and 0 when some P4 has no free pair.
    """
    best = -1
    best_count = 99
    for r in range(quads.shape[0]):
        pattern = _quad_pattern(g, quads, r)
        if not p4[pattern]:
            continue
        avail = 0
        for t in range(6):
            bit = np.int64(1) << quads[r, t]
            if (allowed & bit) and not (blocked & bit):
                avail |= bit
        c = _popcount(avail)
        if c < best_count:
            best_count = c
            best = avail
            if c == 0:
                break
    return best


@njit(cache=True)
def _grow(a, size):
    out = np.zeros(max(2 * a.shape[0], size), dtype=np.int64)
    out[:a.shape[0]] = a
    return out


@njit(cache=True)
def _dominated(f, found, nf):
    for i in range(nf):
        if found[i] & f == found[i]:
            return True
    return False


@njit(cache=True)
def minimal_sets(mask, allowed, quads, p4):
    """All inclusion-minimal F within ``allowed`` such that mask ^ F is a cograph.

    Level-by-level over |F|: a node is dropped once it contains a set found on
    an earlier level, so only minimal sets survive to become leaves.
    """
    cur_f = np.zeros(1, dtype=np.int64)
    cur_x = np.zeros(1, dtype=np.int64)
    ncur = 1
    found = np.zeros(256, dtype=np.int64)
    nf = 0
    while ncur > 0:
        nf_level = nf
        nxt_f = np.zeros(max(16, 4 * ncur), dtype=np.int64)
        nxt_x = np.zeros(max(16, 4 * ncur), dtype=np.int64)
        nn = 0
        for r in range(ncur):
            f = cur_f[r]
            x = cur_x[r]
            if _dominated(f, found, nf_level):
                continue
            avail = _branch_pairs(mask ^ f, f | x, allowed, quads, p4)
            if avail == -1:
                if nf == found.shape[0]:
                    found = _grow(found, nf + 1)
                found[nf] = f
                nf += 1
                continue
            if nn + 64 >= nxt_f.shape[0]:
                nxt_f = _grow(nxt_f, nn + 65)
                nxt_x = _grow(nxt_x, nn + 65)
            excl = x
            while avail:
                low = avail & -avail
                nxt_f[nn] = f | low
                nxt_x[nn] = excl
                nn += 1
                excl |= low
                avail ^= low
        cur_f = nxt_f
        cur_x = nxt_x
        ncur = nn
    # leaves of one level never contain each other; earlier levels were pruned
    return found[:nf].copy()


@njit(cache=True)
def _bounded_dfs(mask, allowed, quads, p4, depth):
    stack_f = np.zeros(1024, dtype=np.int64)
    stack_x = np.zeros(1024, dtype=np.int64)
    stack_d = np.zeros(1024, dtype=np.int64)
    sp = 1
    bits = np.zeros(64, dtype=np.int64)
    while sp > 0:
        sp -= 1
        f = stack_f[sp]
        x = stack_x[sp]
        d = stack_d[sp]
        avail = _branch_pairs(mask ^ f, f | x, allowed, quads, p4)
        if avail == -1:
            if d == depth:
                return f
            continue
        if d == depth or avail == 0:
            continue
        nb = 0
        while avail:
            low = avail & -avail
            bits[nb] = low
            nb += 1
            avail ^= low
        if sp + nb >= stack_f.shape[0]:
            stack_f = _grow(stack_f, sp + nb + 1)
            stack_x = _grow(stack_x, sp + nb + 1)
            stack_d = _grow(stack_d, sp + nb + 1)
        excl = x
        for i in range(nb):
            stack_f[sp + nb - 1 - i] = f | bits[i]
            stack_x[sp + nb - 1 - i] = excl
            stack_d[sp + nb - 1 - i] = d + 1
            excl |= bits[i]
        sp += nb
    return -1


@njit(cache=True)
def min_set_branching(mask, allowed, quads, p4, max_size):
    """Smallest F within ``allowed`` making mask ^ F a cograph, by iterative deepening."""
    for depth in range(max_size + 1):
        f = _bounded_dfs(mask, allowed, quads, p4, depth)
        if f >= 0:
            return f
    return -1


@njit(cache=True)
def min_set_combinations(mask, candidates, quads, p4, max_size, work_limit):
    """Size-ordered scan of candidate subsets; -1 if none up to max_size, -2 over budget."""
    m = candidates.shape[0]
    idx = np.zeros(m + 1, dtype=np.int64)
    work = 0
    for s in range(min(max_size, m) + 1):
        for t in range(s):
            idx[t] = t
        while True:
            f = 0
            for t in range(s):
                f |= np.int64(1) << candidates[idx[t]]
            if is_cograph(mask ^ f, quads, p4):
                return f
            work += 1
            if work > work_limit:
                return -2
            # next combination in lexicographic order
            t = s - 1
            while t >= 0 and idx[t] == m - s + t:
                t -= 1
            if t < 0:
                break
            idx[t] += 1
            for u in range(t + 1, s):
                idx[u] = idx[u - 1] + 1
    return -1
