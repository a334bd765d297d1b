import csv
import io
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from nilsoliton import catalog
from nilsoliton.cli import main
from nilsoliton.io import (ParseError, algebra_file_of, decode_matrix, decode_scalar, encode_matrix,
                           encode_scalar, load_algebra, loads_algebra)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def h3_doc(**overrides):
    doc = {"name": "h3", "dim": 3, "basis": ["z", "x", "y"],
           "brackets": [{"i": 2, "j": 3, "k": 1, "coeff": "1"}],
           "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
    doc.update(overrides)
    return doc


def write(tmp_path, doc, name="alg.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return str(path)


def diagnostics(doc):
    with pytest.raises(ParseError) as info:
        loads_algebra(json.dumps(doc))
    return dict(info.value.diagnostics)


# --- parsing ---------------------------------------------------------------

def test_parse_basic_file():
    af = loads_algebra(json.dumps(h3_doc()))
    alg, g = af.build()
    assert alg.brackets == ((1, 2, 0, 1),)
    assert g.matrix == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert af.basis_names == ("z", "x", "y")


def test_upper_triangle_metric_is_symmetrized():
    af = loads_algebra(json.dumps(h3_doc(metric=[["1", "1/2", "0"], ["-1", "0"], ["2"]])))
    assert af.metric[1][0] == F(1, 2) and af.metric[1][1] == -1


def test_lower_entries_may_be_null_but_must_agree():
    ok = h3_doc(metric=[["1", "1/2", "0"], [None, "-1", "0"], [None, None, "2"]])
    assert loads_algebra(json.dumps(ok)).metric[1][0] == F(1, 2)
    bad = h3_doc(metric=[["1", "1/2", "0"], ["1/3", "-1", "0"], ["0", "0", "2"]])
    assert "metric[1][0]" in diagnostics(bad)


@pytest.mark.parametrize("entry,loc", [
    ({"i": 0, "j": 3, "k": 1, "coeff": "1"}, "brackets[0].i"),
    ({"i": 2, "j": 4, "k": 1, "coeff": "1"}, "brackets[0].j"),
    ({"i": 2, "j": 3, "k": 1, "coeff": "one"}, "brackets[0].coeff"),
    ({"i": 2, "j": 3, "k": 1, "coeff": "1/0"}, "brackets[0].coeff"),
    ({"i": 3, "j": 2, "k": 1, "coeff": "1"}, "brackets[0]"),
    ({"i": 2, "j": 2, "k": 1, "coeff": "1"}, "brackets[0]"),
    ({"i": 2, "j": 3, "k": 1}, "brackets[0].coeff"),
    ({"i": 2, "j": 3, "k": 1, "coeff": "1", "w": 0}, "brackets[0].w"),
])
def test_bracket_diagnostics(entry, loc):
    assert loc in diagnostics(h3_doc(brackets=[entry]))


def test_all_diagnostics_are_collected():
    doc = h3_doc(brackets=[{"i": 9, "j": 3, "k": 1, "coeff": "x"}], metric=[["1"]], colour="red")
    assert {"brackets[0].i", "brackets[0].coeff", "metric", "colour"} <= set(diagnostics(doc))


@pytest.mark.parametrize("dim", [0, -1, "3", True, None])
def test_bad_dimension(dim):
    assert "dim" in diagnostics(h3_doc(dim=dim))


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        loads_algebra('{"dim": 3,\n  "brackets": [}')
    loc, _ = info.value.diagnostics[0]
    assert loc.startswith("line 2 column")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_algebra(tmp_path / "absent.json")


# --- serialization ---------------------------------------------------------

@pytest.mark.parametrize("name", catalog.names())
def test_emit_parse_emit_fixed_point(name):
    e = catalog.get(name)
    text = algebra_file_of(e.alg, e.metric, e.basis_names, e.name).dumps()
    again = loads_algebra(text)
    assert again.dumps() == text
    alg, g = again.build()
    assert alg.brackets == e.alg.brackets and g.matrix == e.metric.matrix


@settings(max_examples=50, deadline=None)
@given(st.fractions(max_denominator=10 ** 6))
def test_scalar_round_trip(x):
    assert decode_scalar(encode_scalar(x)) == x


def test_float_encoding():
    assert encode_scalar(-0.0) == {"decimal": "0"}
    assert decode_scalar(encode_scalar(0.25)) == 0.25
    m = [[F(1, 3), F(-2)], [0, F(7, 5)]]
    assert decode_matrix(encode_matrix(m)) == m


# --- command line ----------------------------------------------------------

def test_soliton_h11():
    code, out, _ = run("--json", "soliton", "H(1,1)")
    rep = json.loads(out)
    assert code == 0 and rep["feasible"] and rep["class"] == "shrinking"
    assert rep["c"]["exact"] == "3/2"


def test_human_soliton_output():
    code, out, _ = run("soliton", "H(1,1)")
    assert code == 0 and "3/2" in out and "shrinking" in out


def test_ricci_both_quaternionic():
    code, out, _ = run("ricci", "--method", "both", "quatH7(+,+,+)", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["agree"]
    diag = [rep["ric_op"][i][i]["exact"] for i in range(7)]
    assert diag == ["0", "0", "1/2", "0", "0", "-1/2", "-1/2"]


def test_malformed_json_exits_2_without_output(tmp_path):
    code, out, err = run("classify", write(tmp_path, "{bad"))
    assert code == 2 and out == "" and err.startswith("error:")


def test_unknown_source_exits_2():
    assert run("classify", "no-such-thing")[0] == 2


def test_not_two_step_exits_3(tmp_path):
    fil = catalog.filiform4()
    path = write(tmp_path, algebra_file_of(fil.alg, fil.metric).dumps())
    code, out, err = run("classify", path)
    assert code == 3 and out == "" and "2-step" in err


def test_degenerate_metric_exits_3(tmp_path):
    path = write(tmp_path, h3_doc(metric=[["1", "1", "0"], ["1", "0"], ["1"]]))
    assert run("soliton", path)[0] == 3


def test_file_input(tmp_path):
    code, out, _ = run("--json", "classify", write(tmp_path, h3_doc()))
    rep = json.loads(out)
    assert code == 0 and rep["flags"]["H"] and rep["basis"] == ["z", "x", "y"]


def test_flow_degeneration_exits_3():
    code, _, err = run("flow", "H3-", "--t-end", "1", "--steps", "1000")
    assert code == 3 and "degenerates" in err


def test_flow_csv(tmp_path):
    path = tmp_path / "traj.csv"
    code, out, _ = run("flow", "H3+", "--t-end", "0.1", "--steps", "100", "--sample-every", "10",
                       "--csv", str(path))
    assert code == 0 and out
    rows = list(csv.reader(path.open()))
    assert rows[0][0] == "t" and len(rows) == 12
    code, out, _ = run("flow", "H3+", "--t-end", "0.1", "--steps", "100", "--sample-every", "10",
                       "--csv", "-")
    assert out == path.read_text()


def test_flow_bad_steps():
    assert run("flow", "H3+", "--steps", "0")[0] == 3


def test_catalog_list_and_emit():
    code, out, _ = run("catalog", "list")
    assert code == 0 and len(out.splitlines()) == len(catalog.names())
    code, out, _ = run("--json", "catalog", "list")
    assert [e["name"] for e in json.loads(out)["entries"]] == catalog.names()
    code, out, _ = run("catalog", "emit", "H3-")
    assert code == 0 and loads_algebra(out).metric[0][0] == -1
    assert run("catalog", "emit", "nope")[0] == 2


def test_reproduction_table_reports_mismatches():
    code, out, _ = run("--json", "paper-suite")
    rows = json.loads(out)["rows"]
    assert code == 4
    assert any(not r["ok"] for r in rows) and sum(r["ok"] for r in rows) >= 40


@pytest.mark.parametrize("argv", [("--json", "classify", "quatH7(-,+,-)"),
                                  ("ricci", "--method", "oracle", "pHL(2,4)"),
                                  ("--json", "soliton", "pHdeg(2,1)"),
                                  ("--json", "flow", "H3+", "--t-end", "0.05", "--steps", "50")])
def test_output_is_deterministic(argv):
    first, second = run(*argv), run(*argv)
    assert first == second and first[0] == 0


def test_float_backend(monkeypatch):
    monkeypatch.setenv("NILSOLITON_BACKEND", "float")
    code, out, _ = run("--json", "soliton", "H(2,1)")
    rep = json.loads(out)
    assert code == 0 and rep["backend"] == "float"
    assert float(rep["c"]["decimal"]) == pytest.approx(2.0)
    assert "exact" not in rep["c"]


def test_bad_backend(monkeypatch):
    monkeypatch.setenv("NILSOLITON_BACKEND", "quad")
    assert run("classify", "H3+")[0] == 3


def test_usage_error_exits_2():
    assert run("ricci", "--method", "magic", "H3+")[0] == 2
