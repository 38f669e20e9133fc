"""Automated worst-case analysis of the branching rules.

Every local configuration a rule can fire on is built as a small graph over
the P4 ``a-b-c-d`` (vertices 0..3) plus the rule's extra vertices, and its
branch catalog is computed.  The worst branching number per rule is the bound
the search tree inherits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .catalog import BranchCatalog, branching_number, fmin, whole_catalog
from .graph import Graph, Mode, apply_modification, as_mode, make_graph
from .p4 import P4Witness, is_cograph, p4_context
from .rules import (
    B5_CASES,
    FORBIDDEN_P4_SPARSE,
    ExceptionCatalog,
    _config_code,
    config_graph,
    default_exceptions,
    default_minimize,
    match_b2,
    match_b3,
    match_b4,
)

LETTERS = "abcd"
REVERSAL = (3, 2, 1, 0)

# Representatives of N(p) & A for p in P_other(A), up to reversing the path.
P_OTHER_CLASSES = ("a", "b", "ab", "ac", "ad", "abc", "acd")

BOUNDS = {
    Mode.DELETION: {"B2": 2.303, "B3": 2.27, "B4": 2.303, "B5": 2.21},
    Mode.EDITING: {"B2": 4.313, "B3": 4.313, "B4": 4.313, "B5": 4.329},
}
GATE_TOL = 1e-3
DIGITS = 5  # shared by the text and JSON renderings

_CLASS_PATTERNS = {
    "I": (0,),
    "T": (15,),
    "P": tuple(range(1, 15)),
    "IP": tuple(range(0, 15)),
    "TP": tuple(range(1, 16)),
}


def letters_to_pattern(letters: str) -> int:
    return sum(1 << LETTERS.index(ch) for ch in letters)


def pattern_to_letters(pattern: int) -> str:
    return "".join(ch for t, ch in enumerate(LETTERS) if pattern >> t & 1) or "-"


def reverse_pattern(pattern: int) -> int:
    return sum(1 << REVERSAL[t] for t in range(4) if pattern >> t & 1)


def reduced_p_other_classes() -> list[int]:
    """Orbit representatives of possible ``N(p) & A`` for ``p`` in P_other(A)."""
    seen, reps = set(), []
    for pattern in range(1, 15):
        if pattern == letters_to_pattern("bc") or pattern in seen:
            continue
        seen.update({pattern, reverse_pattern(pattern)})
        reps.append(pattern)
    return reps


@dataclass(frozen=True)
class Configuration:
    rule: str
    description: str
    graph: Graph
    chosen_size: int
    vector: tuple[int, ...]
    number: float
    pruned: bool = False  # a higher-priority rule also fires on this configuration

    def vector_summary(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.vector:
            out[b] = out.get(b, 0) + 1
        return out


@dataclass
class RuleAnalysisReport:
    rule: str
    mode: Mode
    minimize: bool
    configurations: list[Configuration] = field(default_factory=list)
    skipped: dict[str, int] = field(default_factory=dict)

    def _worst(self, rows) -> Optional[Configuration]:
        return max(rows, key=lambda c: (c.number, c.description), default=None)

    @property
    def worst_raw(self) -> Optional[Configuration]:
        return self._worst(self.configurations)

    @property
    def worst(self) -> Optional[Configuration]:
        return self._worst([c for c in self.configurations if not c.pruned])

    @property
    def worst_number(self) -> float:
        w = self.worst
        return w.number if w else 1.0

    @property
    def bound(self) -> Optional[float]:
        return BOUNDS[self.mode].get(self.rule)

    def offending(self) -> list[Configuration]:
        if self.bound is None:
            return []
        return [c for c in self.configurations if not c.pruned and c.number > self.bound + GATE_TOL]

    @property
    def passed(self) -> bool:
        return not self.offending()


def _catalog(graph: Graph, mode: Mode, minimize) -> BranchCatalog:
    if minimize is None:
        minimize = default_minimize(mode)
    return fmin(graph, mode) if minimize else whole_catalog(graph, mode)


def _config(rule, description, graph, mode, minimize, pruned=False) -> Configuration:
    cat = _catalog(graph, mode, minimize)
    return Configuration(rule, description, graph, cat.size, cat.vector, cat.number, pruned)


def _skip(report: RuleAnalysisReport, reason: str) -> None:
    report.skipped[reason] = report.skipped.get(reason, 0) + 1


def analyze_b2(mode, exceptions: Optional[ExceptionCatalog] = None, minimize: Optional[bool] = None) -> RuleAnalysisReport:
    mode = as_mode(mode)
    minimize = default_minimize(mode) if minimize is None else minimize
    exceptions = exceptions or default_exceptions()
    report = RuleAnalysisReport("B2", mode, minimize)
    codes = exceptions.b2_codes if mode is Mode.DELETION or not exceptions.waived_in_editing else frozenset()
    for p_letters in P_OTHER_CLASSES:
        pp = letters_to_pattern(p_letters)
        for pq in range(16):
            for adjacent in (False, True):
                if pq in (0, 15):
                    _skip(report, "p' not in P(A)")
                    continue
                if _config_code(pp, pq, adjacent) in codes:
                    _skip(report, "exception graph")
                    continue
                desc = f"N(p)={p_letters} N(p')={pattern_to_letters(pq)} pp'={'edge' if adjacent else 'none'}"
                report.configurations.append(_config("B2", desc, config_graph(pp, pq, adjacent), mode, minimize))
    return report


def analyze_b3(mode, exceptions: Optional[ExceptionCatalog] = None, minimize: Optional[bool] = None) -> RuleAnalysisReport:
    mode = as_mode(mode)
    minimize = default_minimize(mode) if minimize is None else minimize
    report = RuleAnalysisReport("B3", mode, minimize)
    for p_letters in P_OTHER_CLASSES:
        graph = config_graph(letters_to_pattern(p_letters), 15, False)
        report.configurations.append(_config("B3", f"N(p)={p_letters} t complete to A, pt none", graph, mode, minimize))
    return report


def analyze_b4(mode, exceptions: Optional[ExceptionCatalog] = None, minimize: Optional[bool] = None) -> RuleAnalysisReport:
    mode = as_mode(mode)
    minimize = default_minimize(mode) if minimize is None else minimize
    exceptions = exceptions or default_exceptions()
    report = RuleAnalysisReport("B4", mode, minimize)
    codes = exceptions.b4_codes if mode is Mode.DELETION or not exceptions.waived_in_editing else frozenset()
    for p_letters in P_OTHER_CLASSES:
        pp = letters_to_pattern(p_letters)
        if _config_code(pp, 0, True) in codes:
            _skip(report, "exception graph")
            continue
        graph = config_graph(pp, 0, True)
        report.configurations.append(_config("B4", f"N(p)={p_letters} i isolated from A, pi edge", graph, mode, minimize))
    return report


def analyze_b3_b4(mode, exceptions=None, minimize=None) -> tuple[RuleAnalysisReport, RuleAnalysisReport]:
    return analyze_b3(mode, exceptions, minimize), analyze_b4(mode, exceptions, minimize)


def b5_configurations(case):
    """Yield ``(description, graph)`` for every completion of a B5 case."""
    names = [name for name, _ in case.variables]
    pair_list = [names[i] + names[j] for i in range(len(names)) for j in range(i + 1, len(names))]
    free = [pair for pair in pair_list if pair not in case.edges and pair not in case.non_edges]
    pattern_choices = [_CLASS_PATTERNS[cls] for _, cls in case.variables]
    for patterns in product(*pattern_choices):
        for free_bits in product((False, True), repeat=len(free)):
            edges = [(0, 1), (1, 2), (2, 3)]
            for k, pattern in enumerate(patterns):
                edges += [(t, 4 + k) for t in range(4) if pattern >> t & 1]
            present = set(case.edges) | {pair for pair, on in zip(free, free_bits) if on}
            for pair in present:
                edges.append((4 + names.index(pair[0]), 4 + names.index(pair[1])))
            desc = " ".join(f"N({name})={pattern_to_letters(pat)}" for name, pat in zip(names, patterns))
            if free:
                desc += " " + " ".join(f"{pair}={'edge' if on else 'none'}" for pair, on in zip(free, free_bits))
            yield desc, make_graph(4 + len(names), edges)


def _higher_priority_fires(graph: Graph, mode: Mode, exceptions: ExceptionCatalog) -> bool:
    ctx = p4_context(graph, P4Witness(0, 1, 2, 3))
    for matcher in (match_b2, match_b3, match_b4):
        if matcher(graph, ctx, mode, exceptions) is not None:
            return True
    return False


def analyze_b5(mode, exceptions: Optional[ExceptionCatalog] = None, minimize: Optional[bool] = None,
               cases=None) -> RuleAnalysisReport:
    mode = as_mode(mode)
    minimize = default_minimize(mode) if minimize is None else minimize
    exceptions = exceptions or default_exceptions()
    report = RuleAnalysisReport("B5", mode, minimize)
    for case in B5_CASES:
        if cases is not None and case.number not in cases:
            continue
        for desc, graph in b5_configurations(case):
            pruned = _higher_priority_fires(graph, mode, exceptions)
            report.configurations.append(_config("B5", f"case {case.number}: {desc}", graph, mode, minimize, pruned))
    return report


ANALYZERS = {"B2": analyze_b2, "B3": analyze_b3, "B4": analyze_b4, "B5": analyze_b5}


def baseline_pan() -> Configuration:
    """The plain B1 branching on a pan, the worst case of the older algorithm."""
    pan = FORBIDDEN_P4_SPARSE["pan"]
    cat = whole_catalog(pan, Mode.DELETION)
    return Configuration("B1", "pan, all minimal deletion sets", pan, cat.size, cat.vector, cat.number)


@dataclass
class FullReport:
    mode: Mode
    minimize: bool
    rules: dict[str, RuleAnalysisReport]
    baseline: Optional[Configuration] = None

    @property
    def worst_number(self) -> float:
        return max(r.worst_number for r in self.rules.values())

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rules.values())

    def to_dict(self) -> dict:
        def conf(c: Optional[Configuration]):
            if c is None:
                return None
            return {
                "description": c.description,
                "chosen_size": c.chosen_size,
                "vector": {str(k): v for k, v in sorted(c.vector_summary().items())},
                "number": round(c.number, DIGITS),
            }

        rules = {}
        for name, r in self.rules.items():
            rules[name] = {
                "bound": r.bound,
                "worst_number": round(r.worst_number, DIGITS),
                "worst_raw_number": round(r.worst_raw.number if r.worst_raw else 1.0, DIGITS),
                "configurations": len(r.configurations),
                "pruned": sum(c.pruned for c in r.configurations),
                "skipped": dict(sorted(r.skipped.items())),
                "worst": conf(r.worst),
                "worst_raw": conf(r.worst_raw),
                "passed": r.passed,
                "offending": [conf(c) for c in r.offending()],
            }
        return {
            "mode": self.mode.value,
            "subgraph_minimization": self.minimize,
            "rules": rules,
            "worst_number": round(self.worst_number, DIGITS),
            "passed": self.passed,
            "baseline": conf(self.baseline),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"mode: {self.mode.value}   subgraph minimization: {'on' if self.minimize else 'off'}"]
        lines.append(f"{'rule':<5} {'configs':>7} {'pruned':>6} {'worst':>9} {'raw':>9} {'bound':>7}  status  worst configuration")
        for name, r in self.rules.items():
            worst, raw = r.worst, r.worst_raw
            lines.append(
                f"{name:<5} {len(r.configurations):>7} {sum(c.pruned for c in r.configurations):>6} "
                f"{r.worst_number:>9.{DIGITS}f} {(raw.number if raw else 1.0):>9.{DIGITS}f} {r.bound if r.bound else float('nan'):>7.3f}  "
                f"{'ok' if r.passed else 'FAIL':<6}  {worst.description if worst else '-'}"
            )
            for c in r.offending():
                lines.append(f"      exceeds bound: {c.number:.{DIGITS}f} {c.description}")
        if self.baseline is not None:
            b = self.baseline
            lines.append(f"baseline {b.rule}: {b.description}, vector {b.vector}, number {b.number:.{DIGITS}f}")
        lines.append(f"worst overall: {self.worst_number:.{DIGITS}f}  -> {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def full_report(mode, rules=("B2", "B3", "B4", "B5"), exceptions=None, minimize: Optional[bool] = None) -> FullReport:
    mode = as_mode(mode)
    minimize = default_minimize(mode) if minimize is None else minimize
    out = {name: ANALYZERS[name](mode, exceptions, minimize) for name in rules}
    baseline = baseline_pan() if mode is Mode.DELETION else None
    return FullReport(mode, minimize, out, baseline)


def replay_ok(config: Configuration, mode, minimize: Optional[bool] = None) -> bool:
    """Every option of the configuration's catalog turns its chosen subgraph into a cograph."""
    from .graph import induced_subgraph

    cat = _catalog(config.graph, as_mode(mode), minimize)
    sub, relabel = induced_subgraph(config.graph, cat.chosen)
    for option in cat.options:
        local = [(relabel[u], relabel[v]) for u, v in option]
        if not is_cograph(apply_modification(sub, local, mode)):
            return False
    return True


__all__ = [
    "BOUNDS",
    "Configuration",
    "FullReport",
    "P_OTHER_CLASSES",
    "RuleAnalysisReport",
    "analyze_b2",
    "analyze_b3",
    "analyze_b3_b4",
    "analyze_b4",
    "analyze_b5",
    "baseline_pan",
    "branching_number",
    "full_report",
    "reduced_p_other_classes",
    "replay_ok",
]
