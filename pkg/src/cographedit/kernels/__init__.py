"""Hot small-graph kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import (see :mod:`cographedit._backend`).  Every
function here takes and returns plain ints / numpy arrays in the pair-bitmask
encoding described in :mod:`cographedit.kernels.tables`.
"""

import numpy as np

from .._backend import selected_backend
from . import _numpy
from .tables import (
    MAX_CANON_N,
    MAX_SMALL_N,
    P4_PATTERNS,
    PAIR_ENDPOINTS,
    PAIR_TABLE,
    full_mask,
    num_pairs,
    pair_index,
    perm_table,
    quad_table,
)

BACKEND = selected_backend()

if BACKEND == "numba":
    from . import _numba as _impl
else:
    _impl = _numpy

DEFAULT_WORK_LIMIT = 50_000_000

__all__ = [
    "BACKEND",
    "MAX_CANON_N",
    "MAX_SMALL_N",
    "BudgetExceeded",
    "canonical_form",
    "cograph_flags",
    "count_p4",
    "full_mask",
    "implementation",
    "is_cograph_mask",
    "mask_pairs",
    "min_set_branching",
    "min_set_combinations",
    "minimal_sets",
    "num_pairs",
    "pair_index",
]


class BudgetExceeded(RuntimeError):
    pass


def implementation(name=None):
    """The kernel module for ``name`` ('numba' or 'numpy'); default is the active one."""
    if name is None:
        return _impl
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(name)


def _check_n(n, limit=MAX_SMALL_N):
    if n > limit:
        raise ValueError(f"small-graph kernels support at most {limit} vertices, got {n}")


def mask_pairs(mask):
    """Decode a pair bitmask into sorted ``(u, v)`` tuples."""
    out = []
    while mask:
        low = mask & -mask
        out.append(tuple(int(v) for v in PAIR_ENDPOINTS[low.bit_length() - 1]))
        mask ^= low
    out.sort()
    return out


def is_cograph_mask(n, mask, impl=None):
    _check_n(n)
    impl = impl or _impl
    return bool(impl.is_cograph(np.int64(mask), quad_table(n), P4_PATTERNS))


def cograph_flags(n, masks, impl=None):
    _check_n(n)
    impl = impl or _impl
    return impl.cograph_flags(np.asarray(masks, dtype=np.int64), quad_table(n), P4_PATTERNS)


def count_p4(n, mask, impl=None):
    _check_n(n)
    impl = impl or _impl
    return int(impl.count_p4(np.int64(mask), quad_table(n), P4_PATTERNS))


def canonical_form(n, mask, impl=None):
    """``(code, perm)``: the minimum relabelled mask and the permutation attaining it.

    ``perm[v]`` is the canonical position of vertex ``v``.
    """
    _check_n(n, MAX_CANON_N)
    impl = impl or _impl
    perms = perm_table(n)
    if n == 0:
        return 0, ()
    code, row = impl.canonical_form(n, np.int64(mask), perms, PAIR_TABLE)
    return int(code), tuple(int(v) for v in perms[row])


def minimal_sets(n, mask, allowed, impl=None):
    """Every inclusion-minimal F within ``allowed`` with ``mask ^ F`` a cograph, sorted."""
    _check_n(n)
    impl = impl or _impl
    out = impl.minimal_sets(np.int64(mask), np.int64(allowed), quad_table(n), P4_PATTERNS)
    return sorted((int(f) for f in out), key=lambda f: (f.bit_count(), f))


def min_set_branching(n, mask, allowed, max_size, impl=None):
    """Smallest modification within ``allowed`` (None if larger than ``max_size``)."""
    _check_n(n)
    impl = impl or _impl
    f = int(impl.min_set_branching(np.int64(mask), np.int64(allowed), quad_table(n), P4_PATTERNS, max_size))
    return None if f < 0 else f


def min_set_combinations(n, mask, candidates, max_size=None, work_limit=DEFAULT_WORK_LIMIT, impl=None):
    """Size-ordered exhaustive scan over subsets of ``candidates`` (pair indices)."""
    _check_n(n)
    impl = impl or _impl
    candidates = np.asarray(sorted(candidates), dtype=np.int64)
    if max_size is None:
        max_size = candidates.shape[0]
    f = int(impl.min_set_combinations(np.int64(mask), candidates, quad_table(n), P4_PATTERNS, max_size, work_limit))
    if f == -2:
        raise BudgetExceeded(f"more than {work_limit} subsets examined")
    return None if f < 0 else f
