import random

import pytest

from cographedit.analyzer import BOUNDS, GATE_TOL
from cographedit.graph import (
    apply_modification,
    as_mode,
    canonical_code,
    complete_graph,
    induced_subgraph,
    make_graph,
    path_graph,
)
from cographedit.p4 import P4Witness, count_induced_p4s, is_cograph, p4_context
from cographedit.rules import (
    B5_CASES,
    FORBIDDEN_P4_SPARSE,
    config_graph,
    default_exceptions,
    find_b5_vertices,
    find_rule_application,
    is_p4_sparse,
    load_exceptions,
    match_b1,
    match_b2,
    match_b3,
    match_b4,
    match_b5,
    obstruction_name,
    parse_exceptions,
)

from conftest import PAN, atlas_graphs, oracle_min, random_graph

A = P4Witness(0, 1, 2, 3)


def _ctx(g):
    return p4_context(g, A)


def test_forbidden_catalog_is_every_five_vertex_class_with_two_p4s():
    expected = {canonical_code(g) for g in atlas_graphs(5) if g.n == 5 and count_induced_p4s(g) >= 2}
    ours = {canonical_code(g) for g in FORBIDDEN_P4_SPARSE.values()}
    assert len(FORBIDDEN_P4_SPARSE) == 7 and ours == expected
    for name, g in FORBIDDEN_P4_SPARSE.items():
        assert obstruction_name(g) == name and not is_p4_sparse(g)


def test_match_b1_examples():
    p5 = path_graph(5)
    m = match_b1(p5, "deletion")
    assert m.rule == "B1" and m.X == (0, 1, 2, 3, 4)
    assert match_b1(complete_graph(5), "deletion") is None
    pan = match_b1(PAN, "deletion")
    assert sorted(pan.catalog.vector) == [1, 2, 2, 2, 2]


def test_match_b2_p6():
    g = path_graph(6)
    m = match_b2(g, p4_context(g, P4Witness(1, 2, 3, 4)), "deletion")
    assert m.rule == "B2" and m.X == (0, 1, 2, 3, 4, 5)


def test_match_b2_needs_p():
    assert match_b2(path_graph(4), _ctx(path_graph(4)), "deletion") is None


@pytest.mark.parametrize("name", ["fig2a", "fig2b"])
def test_match_b2_exception_graphs(name):
    graph = dict(default_exceptions().b2_exceptions)[name]
    assert match_b2(graph, _ctx(graph), "deletion") is None
    assert match_b2(graph, _ctx(graph), "editing") is not None


def test_match_b3_examples():
    assert match_b3(path_graph(5), _ctx(path_graph(5)), "deletion") is None
    # t = 4 complete to A, p = 5 with N(p) & A = {a}
    g = make_graph(6, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4), (0, 5)])
    m = match_b3(g, _ctx(g), "deletion")
    assert m.rule == "B3" and m.X == (0, 1, 2, 3, 4, 5)
    g_adj = make_graph(6, g.edges() + [(4, 5)])
    assert match_b3(g_adj, _ctx(g_adj), "deletion") is None


def test_match_b4_examples():
    assert match_b4(path_graph(5), _ctx(path_graph(5)), "deletion") is None
    fig3 = config_graph(0b0010, 0, True)
    assert match_b4(fig3, _ctx(fig3), "deletion") is None
    assert match_b4(fig3, _ctx(fig3), "editing") is not None
    g = config_graph(0b0001, 0, True)
    assert match_b4(g, _ctx(g), "deletion").X == (0, 1, 2, 3, 4, 5)


def test_match_b5_case5():
    # v = 4 in P_mid, x = 5 and y = 6 complete to A, v adjacent to neither
    full = [(t, x) for x in (5, 6) for t in range(4)]
    g = make_graph(7, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)] + full)
    m = match_b5(g, _ctx(g), "deletion")
    assert m.rule == "B5-case-5" and len(m.X) == 7
    # the full scan prefers a P4 with a larger P(A), where B2 already fires
    assert find_rule_application(g, "deletion") is not None


def test_match_b5_case13():
    full = [(t, x) for x in (5, 6) for t in range(4)]
    g = make_graph(8, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4), (4, 5), (5, 6), (6, 7)] + full)
    found = find_b5_vertices(g, _ctx(g), B5_CASES[12])
    assert found == {"v": 4, "x": 5, "y": 6, "z": 7}
    m = match_b5(g, _ctx(g), "deletion", cases=(13,))
    assert m.rule == "B5-case-13" and len(m.X) == 8
    # case 2 is listed earlier and is realised by the same vertices
    assert match_b5(g, _ctx(g), "deletion").rule == "B5-case-2"


def test_match_b5_without_t_or_i():
    g = path_graph(6)
    ctx = p4_context(g, P4Witness(1, 2, 3, 4))
    assert ctx.T == ctx.I == 0
    assert match_b5(g, ctx, "deletion") is None


def test_find_rule_application_examples():
    assert find_rule_application(complete_graph(4), "deletion") is None
    assert find_rule_application(path_graph(6), "deletion").rule == "B2"
    # B1 is opt-in; with it, P5 falls through to B1
    assert find_rule_application(path_graph(5), "deletion") is None
    assert find_rule_application(path_graph(5), "deletion", use_b1=True).rule == "B1"
    assert find_rule_application(path_graph(5), "editing", use_b1=True) is None


def test_exception_catalog_shape():
    cat = default_exceptions()
    assert [n for n, _ in cat.b2_exceptions] == ["fig2a", "fig2b"]
    assert [n for n, _ in cat.b4_exceptions] == ["fig3"]
    for _, g in cat.b2_exceptions + cat.b4_exceptions:
        assert g.n == 6 and A.is_valid(g)


@pytest.mark.parametrize(
    "text,line",
    [
        ("b2 x: ab bc cd pa\nb9 y: ab bc cd", 2),
        ("# c\nb2 x ab bc cd", 2),
        ("b2 x: ab bc cd pz", 1),
        ("b2 x: ab cd", 1),
        ("\nb4 x: ab bc cd ac", 2),
    ],
)
def test_parse_exceptions_errors(text, line):
    with pytest.raises(ValueError, match=f":{line}:"):
        parse_exceptions(text)


def test_load_exceptions_from_path(tmp_path):
    path = tmp_path / "ex.txt"
    path.write_text("b4 only: ab bc cd pb pq\n")
    cat = load_exceptions(path)
    assert cat.b2_exceptions == () and len(cat.b4_exceptions) == 1


def _rule_cases(rng, count, max_n):
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(5, max_n), rng.choice((0.3, 0.5, 0.7)))
        if not is_cograph(g):
            out.append(g)
    return out


@pytest.mark.parametrize("mode", ["deletion", "editing"])
def test_options_destroy_every_p4_in_x(mode):
    for g in _rule_cases(random.Random(61), 80, 10):
        m = find_rule_application(g, mode)
        if m is None:
            continue
        assert count_induced_p4s(induced_subgraph(g, m.X)[0]) > 0
        for f in m.options():
            assert f
            sub, _ = induced_subgraph(apply_modification(g, f, mode), m.X)
            assert count_induced_p4s(sub) == 0


@pytest.mark.parametrize("mode,max_n,count", [("deletion", 7, 80), ("editing", 6, 60)])
def test_branching_is_safe(mode, max_n, count):
    fired = 0
    for g in _rule_cases(random.Random(71), count, max_n):
        m = find_rule_application(g, mode)
        if m is None:
            continue
        fired += 1
        best = oracle_min(g.n, g.edges(), mode)
        via = min(len(f) + oracle_min(g.n, apply_modification(g, f, mode).edges(), mode) for f in m.options())
        assert via == best
    assert fired > count // 4


@pytest.mark.parametrize("mode", ["deletion", "editing"])
def test_matches_respect_rule_bounds(mode):
    bounds = BOUNDS[as_mode(mode)]
    for g in _rule_cases(random.Random(81), 150, 11):
        m = find_rule_application(g, mode)
        if m is None:
            continue
        rule = "B5" if m.rule.startswith("B5") else m.rule
        assert m.catalog.number <= bounds[rule] + GATE_TOL, (m.rule, g)
