import random

import pytest

from cographedit import kernels
from cographedit.decomposition import classify_rule_free
from cographedit.graph import all_pairs, complete_graph, cycle_graph, make_graph, path_graph
from cographedit.p4 import is_cograph
from cographedit.search import (
    brute_force_min,
    reduce_until_rule_free,
    solve,
    solve_min,
    verify_certificate,
)

from conftest import PAN, naive_is_cograph, oracle_min, random_graph


def test_solve_examples():
    yes = solve(path_graph(4), 1, "deletion")
    assert yes.decision and yes.k_used == 1 and len(yes.certificate) == 1
    assert not solve(path_graph(4), 0, "deletion").decision
    c5 = solve_min(cycle_graph(5), "deletion")
    assert c5.k_used == oracle_min(5, cycle_graph(5).edges(), "deletion")


def test_solve_rejects_negative_k():
    with pytest.raises(ValueError):
        solve(path_graph(4), -1, "deletion")


def test_solve_min_examples():
    r = solve_min(complete_graph(5), "deletion")
    assert r.k_used == 0 and r.certificate == frozenset()
    assert solve_min(PAN, "deletion").k_used == 1
    p7 = path_graph(7)
    assert solve_min(p7, "deletion").k_used == oracle_min(7, p7.edges(), "deletion")


def test_brute_force_examples():
    assert brute_force_min(path_graph(4), "deletion")[0] == 1
    assert brute_force_min(path_graph(4), "editing")[0] == 1
    assert brute_force_min(PAN, "deletion") == (1, frozenset({(0, 4)}))


def test_brute_force_limits():
    with pytest.raises(kernels.BudgetExceeded):
        brute_force_min(random_graph(random.Random(1), 11, 0.5), "editing", work_limit=100)
    with pytest.raises(ValueError):
        brute_force_min(path_graph(12), "deletion")


def test_verify_certificate_examples():
    p4 = path_graph(4)
    assert verify_certificate(p4, {(1, 2)}, "deletion")
    assert not verify_certificate(p4, set(), "deletion")
    c5 = cycle_graph(5)
    assert not any(verify_certificate(c5, {pair}, "editing") for pair in all_pairs(5))
    with pytest.raises(ValueError):
        verify_certificate(p4, {(0, 2)}, "deletion")


@pytest.mark.parametrize("mode,sizes", [("deletion", (5, 6, 7, 8)), ("editing", (5, 6))])
def test_solve_min_matches_oracle(mode, sizes):
    rng = random.Random(201)
    for _ in range(60):
        g = random_graph(rng, rng.choice(sizes), rng.choice((0.2, 0.5, 0.8)))
        r = solve_min(g, mode)
        assert r.k_used == oracle_min(g.n, g.edges(), mode)
        assert naive_is_cograph(g.n, {tuple(sorted(e)) for e in g.edges()} ^ set(r.certificate))


@pytest.mark.parametrize("mode", ["deletion", "editing"])
def test_monotone_and_depth_bounded(mode):
    rng = random.Random(211)
    for _ in range(25):
        g = random_graph(rng, rng.randint(5, 9), 0.5)
        opt = solve_min(g, mode).k_used
        for k in range(0, opt + 3):
            r = solve(g, k, mode)
            assert r.decision == (k >= opt)
            assert r.stats.max_depth <= k
            if r.decision:
                assert len(r.certificate) == r.k_used <= k


@pytest.mark.parametrize("mode", ["deletion", "editing"])
def test_deterministic_across_runs_and_threads(mode):
    rng = random.Random(221)
    for _ in range(10):
        parts = [random_graph(rng, 5, 0.5) for _ in range(3)]
        edges = [(u + 5 * i, v + 5 * i) for i, p in enumerate(parts) for u, v in p.edges()]
        g = make_graph(15, edges)
        k = solve_min(g, mode).k_used
        runs = [solve(g, k, mode, threads=t) for t in (1, 1, 2, 0)]
        assert runs[0] == runs[1]
        assert {(r.decision, r.certificate) for r in runs} == {(runs[0].decision, runs[0].certificate)}
        if k:
            assert {solve(g, k - 1, mode, threads=t).decision for t in (1, 3)} == {False}


@pytest.mark.parametrize("mode", ["deletion", "editing"])
def test_pruning_changes_only_tree_size(mode):
    rng = random.Random(231)
    for _ in range(20):
        g = random_graph(rng, rng.randint(6, 10), 0.4)
        opt = solve_min(g, mode).k_used
        for k in (opt - 1, opt):
            if k < 0:
                continue
            a, b = solve(g, k, mode), solve(g, k, mode, prune=False)
            assert a.decision == b.decision
            assert a.stats.nodes <= b.stats.nodes


def test_b1_option_stays_exact():
    rng = random.Random(241)
    for _ in range(30):
        g = random_graph(rng, rng.randint(5, 8), 0.5)
        assert solve_min(g, "deletion", use_b1=True).k_used == solve_min(g, "deletion").k_used


def test_larger_than_kernel_limit():
    g = random_graph(random.Random(251), 14, 0.25)
    r = solve_min(g, "deletion")
    assert r.decision and verify_certificate(g, r.certificate, "deletion")


def test_reduce_until_rule_free_deletion():
    rng = random.Random(261)
    for _ in range(50):
        g = random_graph(rng, rng.randint(4, 12), rng.choice((0.2, 0.5, 0.8)))
        h, steps = reduce_until_rule_free(g, "deletion")
        assert h.m == g.m - sum(len(f) for _, f in steps)
        assert is_cograph(h) or classify_rule_free(h, "deletion").tag != "not-rule-free"


def test_reduce_until_rule_free_editing_detects_cycles():
    g = make_graph(12, [
        (0, 2), (0, 5), (0, 6), (0, 9), (1, 2), (1, 3), (1, 4), (1, 8), (1, 10), (1, 11), (2, 3), (2, 5), (2, 9),
        (3, 5), (3, 9), (3, 11), (4, 5), (4, 7), (4, 8), (4, 9), (5, 7), (6, 10), (6, 11), (7, 9), (8, 9), (8, 11),
        (9, 10), (9, 11), (10, 11),
    ])
    with pytest.raises(RuntimeError, match="cycles"):
        reduce_until_rule_free(g, "editing")
