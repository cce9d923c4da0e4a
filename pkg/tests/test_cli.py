"""CLI: dispatch, exit codes, deterministic JSON, tables."""

import json

import pytest

from germlab.cli import main, classify_any, UnrecognizedError
from germlab.germparse import parse_map


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---- classify ----------------------------------------------------------

def test_classify_cusp(capsys):
    code, out, _ = run(capsys, "classify", "x1^3 + x1*x2 ; x2")
    assert code == 0
    assert "cusp eps1=+1 eps2=+1" in out


def test_classify_regular(capsys):
    code, out, _ = run(capsys, "classify", "x1 ; x2")
    assert code == 0
    assert "regular" in out


def test_classify_sigma20(capsys):
    text = "vars: x1,x2,x3,x4 | x1^2 + x2*x3 ; x2^2 + x1*x4 ; x3 ; x4"
    code, out, _ = run(capsys, "classify", text)
    assert code == 0
    assert "sigma20-hyp eps1=+1" in out


def test_classify_surface(capsys):
    code, out, _ = run(capsys, "classify", "x1^2 ; x1*x2 ; x2")
    assert code == 0
    assert "whitney-umbrella" in out


def test_classify_plane_lips(capsys):
    code, out, _ = run(capsys, "classify", "x1^3 + x1*x2^2 ; x2")
    assert code == 0
    assert "lips eps1=+1" in out


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "classify", "x1^2 + 1 ; x2")
    assert code == 2
    assert "parse error" in err


def test_unrecognized_exit_3(capsys):
    # corank 2 equidimensional in R^2: no classifier route
    code, _, _ = run(capsys, "classify", "x1^2 ; x2^2")
    assert code == 3


def test_degenerate_plane_exit_3(capsys):
    code, out, _ = run(capsys, "classify", "x1*x2^2 ; x2")
    assert code == 3


# ---- verify ------------------------------------------------------------

def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "fold", "x1^2 ; x2")
    assert code == 0
    assert "match: yes" in out


def test_verify_signed_pass(capsys):
    text = "x1*x2 - x1^2*x3 - x1^3*x4 - x1^5 ; -x2 ; x3 ; x4"
    code, out, _ = run(capsys, "verify", "--claim",
                       "butterfly eps1=-1 eps2=-1", text)
    assert code == 0, out


def test_verify_mismatch_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "fold",
                       "x1^3 + x1*x2 ; x2")
    assert code == 1
    assert "match: no" in out
    assert "invariant diff" in out


# ---- json determinism --------------------------------------------------

def test_json_byte_identical(capsys):
    _, a, _ = run(capsys, "classify", "--json", "x1^3 + x1*x2 ; x2")
    _, b, _ = run(capsys, "classify", "--json", "x1^3 + x1*x2 ; x2")
    assert a == b
    payload = json.loads(a)
    assert payload["label"]["family"] == "cusp"
    assert payload["route"] == "morin"


def test_perturb_json_deterministic(capsys):
    args = ("perturb", "--family", "C", "--n", "2",
            "--params", "1/4,2", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    payload = json.loads(a)
    assert payload["count"] == 4


# ---- perturb / tables --------------------------------------------------

def test_perturb_single(capsys):
    code, out, _ = run(capsys, "perturb", "--family", "B", "--n", "3",
                       "--params", "-10")
    assert code == 0
    assert "2 Morin point(s)" in out


def test_perturb_sweep(capsys):
    code, out, _ = run(capsys, "perturb", "--family", "A", "--n", "2",
                       "--l", "2", "--grid=-2:2:1")
    assert code == 0
    assert "attained" in out


def test_perturb_family_a_needs_l(capsys):
    code, _, err = run(capsys, "perturb", "--family", "A", "--n", "2",
                       "--params", "-1")
    assert code == 3


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--json")
    assert code == 0
    payload = json.loads(out)
    counts = {(r["k"], r["n"]): r["count"]
              for r in payload["class_counts_k_eq_n"]}
    assert counts == {(1, 1): 2, (2, 2): 2, (3, 3): 2, (4, 4): 4,
                      (5, 5): 2, (6, 6): 2}
    for r in payload["class_counts_k_lt_n"]:
        assert r["count"] == (2 if r["k"] % 2 == 0 else 1)
    rows = {(r["family"], r["n"]): r for r in payload["families"]}
    assert rows[("C", 5)]["inv_formula"] == "t*(-42*t^2 + 5*t + u1)"
    assert all(r["all_verified"] for r in payload["families"])
    assert rows[("B", 4)]["count"] == 2
    assert rows[("A", 3)]["count"] == 3


def test_precision_flag_validation(capsys):
    with pytest.raises(SystemExit):
        main(["classify", "--precision", "5", "x1^2 ; x2"])


def test_stdin_input(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("x1^2 ; x2"))
    code, out, _ = run(capsys, "classify", "--input", "-")
    assert code == 0
    assert "fold" in out


def test_file_input(capsys, tmp_path):
    p = tmp_path / "germ.germ"
    p.write_text("vars: x1,x2 | x1^3 - x1*x2 ; x2")
    code, out, _ = run(capsys, "classify", "-i", str(p))
    assert code == 0
    assert "cusp" in out


def test_classify_any_dispatch_errors():
    # (R^3, 0) -> (R^2, 0): no classifier route
    with pytest.raises(UnrecognizedError):
        classify_any(parse_map("x1 ; x2*x3"))
