"""Bounded search trees for Cograph Deletion / Cograph Editing."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import kernels
from .decomposition import NotRuleFree, solve_rule_free
from .graph import (
    Graph,
    Mode,
    PairSet,
    apply_modification,
    as_mode,
    component_bits,
    induced_subgraph,
    iter_bits,
)
from .p4 import is_cograph, iter_induced_p4s, p4_context, packing_lower_bound
from .rules import ExceptionCatalog, default_exceptions, default_minimize, find_rule_application, match_in_context


@dataclass
class SearchStats:
    nodes: int = 0
    rule_fires: Counter = field(default_factory=Counter)
    max_depth: int = 0
    base_cases: Counter = field(default_factory=Counter)

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.rule_fires.update(other.rule_fires)
        self.base_cases.update(other.base_cases)
        self.max_depth = max(self.max_depth, other.max_depth)

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "max_depth": self.max_depth,
            "rule_fires": dict(sorted(self.rule_fires.items())),
            "base_cases": dict(sorted(self.base_cases.items())),
        }


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    mode: Mode
    k_used: Optional[int]
    certificate: Optional[PairSet]
    stats: SearchStats

    def sorted_certificate(self) -> list[tuple[int, int]]:
        return sorted(self.certificate or ())


def _lift(cert: PairSet, vertices) -> set:
    return {tuple(sorted((vertices[u], vertices[v]))) for u, v in cert}


class _Search:
    def __init__(self, mode: Mode, exceptions: ExceptionCatalog, use_b1: bool, minimize: bool,
                 prune: bool = True):
        self.mode = mode
        self.prune = prune
        self.exceptions = exceptions
        self.use_b1 = use_b1
        self.minimize = minimize
        self.stats = SearchStats()

    def fork(self) -> "_Search":
        return _Search(self.mode, self.exceptions, self.use_b1, self.minimize, self.prune)

    def minimum(self, g: Graph, budget: int, depth: int = 0) -> Optional[PairSet]:
        """A minimum-size certificate if the optimum is at most ``budget``."""
        for k in range(budget + 1):
            found = self.within(g, k, depth)
            if found is not None:
                return found
        return None

    def _parts(self, g: Graph, parts: list[list[int]], budget: int, depth: int) -> Optional[PairSet]:
        cert: set = set()
        for part in parts:
            sub, _ = induced_subgraph(g, part)
            found = self.minimum(sub, budget, depth)
            if found is None:
                return None
            cert |= _lift(found, part)
            budget -= len(found)
        return frozenset(cert)

    def within(self, g: Graph, k: int, depth: int = 0) -> Optional[PairSet]:
        """Some certificate of size at most ``k``, or None."""
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if k < 0:
            return None
        if is_cograph(g):
            return frozenset()
        if k == 0:
            return None
        if self.prune and packing_lower_bound(g, self.mode is Mode.EDITING) > k:
            self.stats.base_cases["lower-bound"] += 1
            return None
        comps = component_bits(g)
        if len(comps) > 1:
            self.stats.base_cases["components"] += 1
            parts = [list(iter_bits(c)) for c in comps if c.bit_count() >= 4]
            return self._parts(g, parts, k, depth)
        match = find_rule_application(g, self.mode, self.exceptions, self.use_b1, self.minimize)
        if match is None:
            return self._rule_free(g, k, depth)
        return self._branch(g, match, k, depth)

    def _branch(self, g: Graph, match, k: int, depth: int) -> Optional[PairSet]:
        self.stats.rule_fires[match.rule] += 1
        for option in match.options():
            if len(option) > k:
                break
            rest = self.within(apply_modification(g, option, self.mode), k - len(option), depth + 1)
            if rest is not None:
                return frozenset(option ^ rest)
        return None

    def _rule_free(self, g: Graph, k: int, depth: int) -> Optional[PairSet]:
        budget = [k]

        def solve_part(sub: Graph):
            found = self.minimum(sub, budget[0], depth + 1)
            if found is None:
                raise _OverBudget
            budget[0] -= len(found)
            return len(found), found

        try:
            cost, cert = solve_rule_free_once(g, self.mode, solve_part, self.stats)
        except _OverBudget:
            return None
        except NotRuleFree:
            match = self._any_p4_match(g)
            if match is None:
                raise
            self.stats.base_cases["fallback-p4"] += 1
            return self._branch(g, match, k, depth)
        return cert if cost <= k else None

    def _any_p4_match(self, g: Graph):
        """Rules around every induced P4, for graphs the chosen P4 leaves undecided."""
        for w in iter_induced_p4s(g):
            found = match_in_context(g, p4_context(g, w), self.mode, self.exceptions, self.minimize)
            if found is not None:
                return found
        return None


class _OverBudget(Exception):
    pass


def solve_rule_free_once(g: Graph, mode: Mode, solve_part, stats: SearchStats):
    """One level of the rule-free decomposition; parts go back through ``solve_part``."""
    from .decomposition import classify_rule_free

    tag = classify_rule_free(g, mode).tag
    stats.base_cases[tag] += 1
    return solve_rule_free(g, mode, solve_part)


def _options(mode, exceptions, use_b1, minimize):
    mode = as_mode(mode)
    if minimize is None:
        minimize = default_minimize(mode)
    return mode, exceptions or default_exceptions(), use_b1, minimize


def _top_level(search: _Search, g: Graph, k: int, threads: int) -> Optional[PairSet]:
    comps = [list(iter_bits(c)) for c in component_bits(g) if c.bit_count() >= 4]
    if threads <= 1 or len(comps) < 2:
        return search.within(g, k)
    # components are solved independently with the full budget, so the
    # outcome does not depend on scheduling
    search.stats.nodes += 1
    search.stats.base_cases["components"] += 1
    subs = [induced_subgraph(g, part)[0] for part in comps]
    forks = [search.fork() for _ in comps]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda args: args[0].minimum(args[1], k, 1), zip(forks, subs)))
    for fork in forks:
        search.stats.merge(fork.stats)
    if any(r is None for r in results):
        return None
    cert: set = set()
    for part, found in zip(comps, results):
        cert |= _lift(found, part)
    return frozenset(cert) if len(cert) <= k else None


def _finish(g: Graph, mode: Mode, cert: Optional[PairSet], stats: SearchStats) -> SolveResult:
    if cert is None:
        return SolveResult(False, mode, None, None, stats)
    if not verify_certificate(g, cert, mode):
        raise RuntimeError("search produced an invalid certificate")
    return SolveResult(True, mode, len(cert), frozenset(cert), stats)


def solve(g: Graph, k: int, mode, exceptions: Optional[ExceptionCatalog] = None, use_b1: bool = False,
          minimize: Optional[bool] = None, threads: int = 1, prune: bool = True) -> SolveResult:
    """Decide whether at most ``k`` deletions/edits turn ``g`` into a cograph.

    ``threads`` = 0 picks the CPU count; ``prune`` enables the P4-packing
    lower bound (it never changes the answer, only the tree size).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if threads == 0:
        threads = os.cpu_count() or 1
    search = _Search(*_options(mode, exceptions, use_b1, minimize), prune=prune)
    if threads > 1:
        cert = _top_level(search, g, k, threads)
    else:
        cert = search.within(g, k)
    return _finish(g, search.mode, cert, search.stats)


def solve_min(g: Graph, mode, exceptions: Optional[ExceptionCatalog] = None, use_b1: bool = False,
              minimize: Optional[bool] = None, threads: int = 1, k_max: Optional[int] = None,
              prune: bool = True) -> SolveResult:
    """Optimum found by trying k = 0, 1, 2, ... in turn."""
    mode, exceptions, use_b1, minimize = _options(mode, exceptions, use_b1, minimize)
    stats = SearchStats()
    limit = k_max if k_max is not None else (g.m if mode is Mode.DELETION else g.n * (g.n - 1) // 2)
    for k in range(limit + 1):
        result = solve(g, k, mode, exceptions, use_b1, minimize, threads, prune)
        stats.merge(result.stats)
        if result.decision:
            return SolveResult(True, mode, result.k_used, result.certificate, stats)
    return SolveResult(False, mode, None, None, stats)


def brute_force_min(g: Graph, mode, work_limit: int = kernels.DEFAULT_WORK_LIMIT) -> tuple[int, PairSet]:
    """Exact optimum by scanning subsets in order of size (independent oracle)."""
    mode = as_mode(mode)
    if g.n > kernels.MAX_SMALL_N:
        raise ValueError(f"brute force limited to {kernels.MAX_SMALL_N} vertices")
    if mode is Mode.DELETION:
        cands = [kernels.pair_index(u, v) for u, v in g.edges()]
    else:
        cands = list(range(kernels.num_pairs(g.n)))
    f = kernels.min_set_combinations(g.n, g.to_mask(), cands, work_limit=work_limit)
    if f is None:
        raise RuntimeError("no modification set exists")  # unreachable: deleting all edges works
    return f.bit_count(), frozenset(kernels.mask_pairs(f))


def verify_certificate(g: Graph, pairs, mode) -> bool:
    return is_cograph(apply_modification(g, pairs, mode))


def reduce_until_rule_free(g: Graph, mode, exceptions: Optional[ExceptionCatalog] = None,
                           minimize: Optional[bool] = None, choose=None) -> tuple[Graph, list]:
    """Follow one branch per rule application until no rule fires.

    ``choose(options)`` picks the branch; the default takes the first option.
    Returns the final graph and the sequence of (rule, option) steps.
    Deletion always terminates; an editing walk can return to a graph it
    already visited, which raises ``RuntimeError``.
    """
    mode, exceptions, _, minimize = _options(mode, exceptions, False, minimize)
    steps = []
    seen = {g.adj}
    while True:
        match = find_rule_application(g, mode, exceptions, False, minimize)
        if match is None:
            return g, steps
        options = match.options()
        option = options[0] if choose is None else choose(options)
        steps.append((match.rule, option))
        g = apply_modification(g, option, mode)
        if g.adj in seen:
            raise RuntimeError(f"editing reduction cycles after {len(steps)} steps")
        seen.add(g.adj)
