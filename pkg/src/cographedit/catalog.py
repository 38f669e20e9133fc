"""Minimal modification families of small graphs and branching numbers.

Families are computed once per isomorphism class (keyed by canonical code and
mode) and relabelled onto each host.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from scipy.optimize import brentq

from . import kernels
from .graph import Graph, Mode, PairSet, as_mode, canonical_form, canonical_mask_form
from .kernels.tables import MAX_CANON_N, full_mask, pair_index

TIE_TOL = 1e-9

_cache_lock = threading.Lock()
_cache_enabled = True
_family_memo: dict = {}
_fmin_memo: dict = {}


def set_cache_enabled(enabled: bool) -> None:
    global _cache_enabled
    _cache_enabled = bool(enabled)


def clear_caches() -> None:
    with _cache_lock:
        _family_memo.clear()
        _fmin_memo.clear()


@contextmanager
def cache_disabled():
    previous = _cache_enabled
    set_cache_enabled(False)
    try:
        yield
    finally:
        set_cache_enabled(previous)


def _memo_get(memo, key, compute):
    if not _cache_enabled:
        return compute()
    value = memo.get(key)
    if value is None:
        value = memo.setdefault(key, compute())
    return value


@lru_cache(maxsize=4096)
def branching_number(vector: Sequence[int]) -> float:
    """Unique root ``t >= 1`` of ``sum(t ** -b) = 1``."""
    vector = tuple(vector)
    if not vector:
        raise ValueError("empty branching vector")
    if any(b <= 0 for b in vector):
        raise ValueError(f"branching vector entries must be positive: {vector}")
    if len(vector) == 1:
        return 1.0
    if all(b == vector[0] for b in vector):
        return len(vector) ** (1.0 / vector[0])
    # f decreases from len-1 > 0 at t=1 to <= 0 at t=len(vector)
    return brentq(lambda t: math.fsum(t ** -b for b in vector) - 1.0, 1.0, float(len(vector)), xtol=1e-13)


def _check_host(h: Graph) -> None:
    if h.n > MAX_CANON_N:
        raise ValueError(f"catalog hosts are limited to {MAX_CANON_N} vertices, got {h.n}")


def _allowed(n: int, mask: int, mode: Mode) -> int:
    return mask if mode is Mode.DELETION else full_mask(n)


def _canonical_family(n: int, code: int, mode: Mode) -> tuple[int, ...]:
    def compute():
        return tuple(kernels.minimal_sets(n, code, _allowed(n, code, mode)))

    return _memo_get(_family_memo, (n, code, mode), compute)


def _relabel_mask(mask: int, mapping: Sequence[int]) -> int:
    out = 0
    for u, v in kernels.mask_pairs(mask):
        out |= 1 << pair_index(mapping[u], mapping[v])
    return out


def _mask_to_pairset(mask: int, mapping: Sequence[int]) -> PairSet:
    return frozenset(tuple(sorted((mapping[u], mapping[v]))) for u, v in kernels.mask_pairs(mask))


def _option_key(option: PairSet):
    return (len(option), sorted(option))


def minimal_sets(h: Graph, mode) -> list[PairSet]:
    """Every inclusion-minimal deletion/editing set of ``h`` (host vertex ids)."""
    mode = as_mode(mode)
    _check_host(h)
    (n, code), perm = canonical_form(h)
    inverse = [0] * n
    for v, p in enumerate(perm):
        inverse[p] = v
    family = [_mask_to_pairset(f, inverse) for f in _canonical_family(n, code, mode)]
    return sorted(family, key=_option_key)


def minimal_deletion_sets(h: Graph) -> list[PairSet]:
    return minimal_sets(h, Mode.DELETION)


def minimal_editing_sets(h: Graph) -> list[PairSet]:
    return minimal_sets(h, Mode.EDITING)


@dataclass(frozen=True)
class BranchCatalog:
    host: Graph
    mode: Mode
    chosen: tuple[int, ...]
    options: tuple[PairSet, ...]
    vector: tuple[int, ...]
    number: float

    @property
    def size(self) -> int:
        return len(self.chosen)


def _submask(mask: int, verts: Sequence[int]) -> int:
    out = 0
    for j in range(len(verts)):
        for i in range(j):
            if mask >> pair_index(verts[i], verts[j]) & 1:
                out |= 1 << pair_index(i, j)
    return out


def _scan_subgraphs(n: int, mask: int, mode: Mode, minimize: bool):
    """Best-number induced subgraphs of a canonical host.

    Returns ``(number, vector, ties)`` with ``ties`` a list of
    ``(vertex tuple, option masks in host labels)``.
    """
    sizes = range(n, 3, -1) if minimize else (n,)
    best_number, best_vector, ties = math.inf, None, []
    for r in sizes:
        for verts in combinations(range(n), r):
            sub = _submask(mask, verts)
            if kernels.is_cograph_mask(r, sub):
                continue
            scode, sperm = canonical_mask_form(r, sub)
            family = _canonical_family(r, scode, mode)
            vector = tuple(sorted(f.bit_count() for f in family))
            number = branching_number(vector)
            if number < best_number - TIE_TOL:
                best_number, best_vector, ties = number, vector, []
            if abs(number - best_number) <= TIE_TOL:
                # canonical position -> host vertex
                back = [0] * r
                for local, pos in enumerate(sperm):
                    back[pos] = verts[local]
                ties.append((verts, tuple(_relabel_mask(f, back) for f in family)))
    return best_number, best_vector, ties


def _pick_tie(ties, inverse):
    """Largest subgraph first, then lexicographically smallest host vertex set."""
    def key(entry):
        verts = tuple(sorted(inverse[v] for v in entry[0]))
        return (-len(verts), verts)

    return min(ties, key=key)


def _catalog(h: Graph, mode: Mode, minimize: bool) -> BranchCatalog:
    _check_host(h)
    (n, code), perm = canonical_form(h)
    if kernels.is_cograph_mask(n, code):
        raise ValueError("host graph is a cograph; no branching")

    def compute():
        return _scan_subgraphs(n, code, mode, minimize)

    number, vector, ties = _memo_get(_fmin_memo, (n, code, mode, minimize), compute)
    inverse = [0] * n
    for v, p in enumerate(perm):
        inverse[p] = v
    verts, masks = _pick_tie(ties, inverse)
    options = sorted((_mask_to_pairset(f, inverse) for f in masks), key=_option_key)
    return BranchCatalog(
        host=h,
        mode=mode,
        chosen=tuple(sorted(inverse[v] for v in verts)),
        options=tuple(options),
        vector=vector,
        number=number,
    )


def fmin(h: Graph, mode, minimize_subgraph: bool = True) -> BranchCatalog:
    """Branch catalog of the P4-containing induced subgraph with the smallest branching number.

    With ``minimize_subgraph=False`` the whole host is used (the plain minimal family).
    """
    return _catalog(h, as_mode(mode), minimize_subgraph)


def whole_catalog(h: Graph, mode) -> BranchCatalog:
    return _catalog(h, as_mode(mode), False)


def lift_options(catalog: BranchCatalog, vertex_ids: Sequence[int]) -> list[PairSet]:
    """Options renamed through ``vertex_ids`` (host id -> id in a larger graph)."""
    return [frozenset(tuple(sorted((vertex_ids[u], vertex_ids[v]))) for u, v in f) for f in catalog.options]

