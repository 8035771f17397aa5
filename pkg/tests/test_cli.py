import json

import pytest

from qmono.cli import main, scaled_markov_solutions
from qmono.fixtures import load_fixture
from qmono.monodromy import MonodromyData, validate
from qmono.projective import chamber0_data


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out.out)


def test_stokes_p5_first_tabulated_matrix(capsys):
    code, doc = run_json(capsys, "stokes", "--space", "P", "--k", "5", "--chamber", "0")
    assert code == 0
    row = next(r for r in load_fixture("stokes_tables.json")["chambers"] if (r["r"], r["k"], r["chamber"]) == (1, 5, 0))
    from qmono.core_algebra import sign_equivalence

    assert sign_equivalence(doc["S"], row["S"]) is not None


def test_stokes_g23(capsys):
    code, doc = run_json(capsys, "stokes", "--space", "G", "--k", "3", "--r", "2", "--chamber", "0")
    assert code == 0
    assert doc["S"] == [[1, 3, -3], [0, 1, -3], [0, 0, 1]]


def test_stokes_from_point_and_slope(capsys):
    code, doc = run_json(capsys, "stokes", "--k", "3", "--t", "0+4i", "--phi", "0.1")
    assert code == 0 and doc["chamber"] == 1


@pytest.mark.parametrize("argv", [
    ("stokes", "--space", "G", "--k", "4", "--r", "4"),
    ("stokes", "--space", "G", "--k", "4"),
    ("connection", "--k", "2", "--precision", "63"),
    ("connection", "--k", "2", "--t", "banana"),
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2


def test_connection_g24_symbolic_matches_columns(capsys):
    code, doc = run_json(capsys, "connection", "--space", "G", "--k", "4", "--r", "2", "--backend", "symbolic")
    assert code == 0
    from qmono.core_algebra import SymScalar
    from qmono.fixtures import connection_columns

    cols = connection_columns("G24_chamber0")
    for j, col in enumerate(cols):
        assert [SymScalar.from_json(doc["C"][i][j]) for i in range(6)] == col


def test_connection_p1_roundtrip(capsys):
    code, doc = run_json(capsys, "connection", "--k", "2", "--backend", "numeric", "--precision", "128")
    assert code == 0 and doc["backend"] == "numeric" and doc["precision"] == 128
    assert len(doc["C"]) == 2 and all(isinstance(x, dict) for row in doc["C"] for x in row)


def test_precision_env_default(capsys, monkeypatch):
    monkeypatch.setenv("QMONO_PRECISION", "96")
    _, doc = run_json(capsys, "connection", "--k", "2", "--backend", "numeric")
    assert doc["precision"] == 96
    monkeypatch.setenv("QMONO_PRECISION", "12")
    with pytest.raises(SystemExit):
        main(["connection", "--k", "2"])


def test_output_is_deterministic(capsys):
    argv = ("connection", "--space", "G", "--k", "4", "--r", "2")
    first = run(capsys, *argv)[1].out
    second = run(capsys, *argv)[1].out
    assert first == second


@pytest.mark.parametrize("fmt, marker", [("text", "S ="), ("latex", "\\begin{pmatrix}")])
def test_other_formats(capsys, fmt, marker):
    code, out = run(capsys, "stokes", "--k", "3", "--format", fmt)
    assert code == 0 and marker in out.out


def _write_p2_chamber0(tmp_path):
    data, _ = chamber0_data(3)
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(data.to_json()))
    return path


def test_braid_command_p2_walk_second_row(capsys, tmp_path):
    path = _write_p2_chamber0(tmp_path)
    code, doc = run_json(capsys, "braid", str(path), "b2")
    assert code == 0
    assert doc["S"] == load_fixture("stokes_tables.json")["p2_walk"][1]["S"]
    out = MonodromyData.from_json(doc)
    assert all(row["pass"] for row in validate(out))


def test_braid_empty_word_echoes_input(capsys, tmp_path):
    path = _write_p2_chamber0(tmp_path)
    code, doc = run_json(capsys, "braid", str(path))
    assert code == 0
    doc.pop("word")
    assert doc == json.loads(path.read_text())


def test_braid_bad_word_and_missing_file(capsys, tmp_path):
    path = _write_p2_chamber0(tmp_path)
    assert run(capsys, "braid", str(path), "b7")[0] == 2
    assert run(capsys, "braid", str(tmp_path / "missing.json"), "b1")[0] == 2


def test_verify_tables(capsys):
    code, doc = run_json(capsys, "verify", "--suite", "tables", "--kmax", "5")
    assert code == 0 and doc["pass"]
    assert any(c["name"].startswith("connection columns G24") for c in doc["checks"])


@pytest.mark.parametrize("suite", ["constraints", "quasi", "markov"])
def test_verify_small_suites(capsys, suite):
    code, doc = run_json(capsys, "verify", "--suite", suite, "--kmax", "3")
    assert code == 0 and doc["pass"] and doc["checks"]


def test_scaled_markov_solutions():
    sols = scaled_markov_solutions(30)
    assert (3, 3, 3) in sols and (3, 3, 6) in sols and (6, 15, 3) in sols
    assert all(a * a + b * b + c * c == a * b * c for a, b, c in sols)
