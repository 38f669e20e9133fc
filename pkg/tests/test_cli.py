import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cographedit.cli import main
from cographedit.decomposition import spider_graph
from cographedit.graph import complete_graph, cycle_graph, make_graph, path_graph
from cographedit.graphio import (
    GraphFormatError,
    format_certificate,
    format_graph,
    parse_certificate,
    parse_graph,
)

from conftest import PAN, oracle_min

DOCS = Path(__file__).parents[1] / "docs"


def schema(name):
    return json.loads((DOCS / f"{name}.schema.json").read_text())


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else format_graph(content))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_solve_p4(capsys, write):
    p4 = write("p4.txt", path_graph(4))
    code, out = run(capsys, "solve", p4, "--k", 1)
    assert code == 0
    lines = out.out.splitlines()
    cert = lines[lines.index("certificate:") + 1]
    assert len(cert.split()) == 2
    code, _ = run(capsys, "solve", p4, "--k", 0)
    assert code == 1


def test_solve_c5_minimum_editing(capsys, write):
    c5 = write("c5.txt", cycle_graph(5))
    code, out = run(capsys, "solve", c5, "--mode", "editing", "--json")
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema("solve"))
    assert code == 0 and doc["k_used"] == oracle_min(5, cycle_graph(5).edges(), "editing")
    code, text = run(capsys, "solve", c5, "--mode", "editing", "--threads", 0)
    assert f"k_used: {doc['k_used']}" in text.out
    for item in doc["certificate"]:
        assert f"{item['u']} {item['v']} {item['op']}" in text.out


def test_verify_examples(capsys, write):
    p4 = write("p4.txt", path_graph(4))
    assert run(capsys, "verify", p4, write("bc.txt", "1 2\n"))[0] == 0
    assert run(capsys, "verify", p4, write("none.txt", "# empty\n"))[0] == 1
    pan = write("pan.txt", PAN)
    assert run(capsys, "verify", pan, write("e1.txt", "0 4\n"))[0] == 0
    assert run(capsys, "verify", p4, write("bad.txt", "0 2\n"))[0] == 2


def test_analyze_deletion_all_rules(capsys):
    code, out = run(capsys, "analyze", "--json")
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema("analyze"))
    assert code == 0 and max(r["worst_number"] for r in doc["rules"].values()) <= 2.303 + 1e-3


def test_analyze_editing_b5(capsys):
    code, out = run(capsys, "analyze", "--mode", "editing", "--rule", "B5")
    assert code == 0
    row = next(line for line in out.out.splitlines() if line.startswith("B5 "))
    assert float(row.split()[3]) <= 4.329 + 1e-3


def test_analyze_gate_failure_exits_nonzero(capsys, write):
    empty = write("none.txt", "# no exceptions\n")
    code, out = run(capsys, "analyze", "--rule", "B4", "--exceptions", empty)
    assert code == 1 and "exceeds bound" in out.out


def test_analyze_unknown_rule(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--rule", "B9"])
    assert exc.value.code == 2


def test_recognize_examples(capsys, write):
    _, out = run(capsys, "recognize", write("k5.txt", complete_graph(5)))
    assert "cograph: yes" in out.out
    _, out = run(capsys, "recognize", write("p5.txt", path_graph(5)))
    assert "cograph: no" in out.out and "P4-sparse: no" in out.out
    _, out = run(capsys, "recognize", write("sp.txt", spider_graph(3, "thin")))
    assert "kind=thin" in out.out
    code, out = run(capsys, "recognize", write("sp2.txt", spider_graph(3, "thick", r_count=1)), "--json")
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema("recognize"))
    assert doc["spider"]["kind"] == "thick" and doc["spider"]["R"] == [6]


@pytest.mark.parametrize(
    "content,line",
    [
        ("", None),
        ("# only a comment\n", None),
        ("4 3\n0 1\n1 2\n", 3),
        ("4 2\n0 1\n0 1\n", 3),
        ("4 1\n# c\n2 1\n", 3),
        ("4 1\n0 4\n", 2),
        ("4 1\n0 x\n", 2),
        ("4\n", 1),
        ("4 1\n0 1 2\n", 2),
    ],
)
def test_malformed_graph_files(capsys, write, content, line):
    path = write("bad.txt", content)
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(content, path)
    assert exc.value.line == line
    code, out = run(capsys, "solve", path)
    assert code == 2 and "error:" in out.err
    if line is not None:
        assert f":{line}:" in out.err


def test_missing_file(capsys):
    assert run(capsys, "recognize", "/nonexistent/graph.txt")[0] == 2


@st.composite
def graph_texts(draw):
    n = draw(st.integers(0, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    shuffled = draw(st.permutations(edges))
    lines = [f"# generated\n{n} {len(edges)}"] + [f"{u} {v}   # e" for u, v in shuffled]
    return "\n".join(lines) + "\n", make_graph(n, edges)


@given(graph_texts())
@settings(max_examples=80)
def test_round_trip(sample):
    text, g = sample
    parsed = parse_graph(text)
    assert parsed == g
    normal = format_graph(parsed)
    assert format_graph(parse_graph(normal)) == normal
    assert normal.splitlines()[1:] == [f"{u} {v}" for u, v in sorted(g.edges())]


def test_certificate_formats():
    p4 = path_graph(4)
    assert format_certificate(p4, {(1, 2)}, "deletion") == "1 2\n"
    assert format_certificate(p4, {(0, 2), (1, 2)}, "editing") == "0 2 +\n1 2 -\n"
    assert parse_certificate("0 2 +\n1 2 −\n", p4, "editing") == {(0, 2), (1, 2)}
    with pytest.raises(GraphFormatError, match=":1:"):
        parse_certificate("0 2 -\n", p4, "editing")
    with pytest.raises(GraphFormatError):
        parse_certificate("0 2 +\n", p4, "deletion")


def test_generate_is_seeded(capsys):
    _, a = run(capsys, "generate", 8, 0.5, "--seed", 3)
    _, b = run(capsys, "generate", 8, 0.5, "--seed", 3)
    assert a.out == b.out and parse_graph(a.out).n == 8


def test_console_entry_point(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text(format_graph(path_graph(4)))
    out = subprocess.run([sys.executable, "-m", "cographedit.cli", "solve", str(path), "--k", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "result: yes" in out.stdout
