import json

import pytest

from askzeta.cli import UsageError, emit_rep, main, parse_rep
from askzeta.catalog import make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_rep_roundtrip():
    rep = make("band", r=2)
    again = parse_rep(json.dumps(emit_rep(rep)))
    assert again == rep


def test_parse_rep_big_integers_and_strings():
    huge = 2**60 + 7
    payload = {"shape": {"l": 1, "d": 1, "e": 1}, "coeffs": [[[str(huge)]]]}
    rep = parse_rep(json.dumps(payload))
    assert rep.coeffs[0][0][0] == huge
    assert emit_rep(rep)["coeffs"][0][0][0] == str(huge)


def test_parse_rep_diagnostics():
    with pytest.raises(UsageError, match="shape.l"):
        parse_rep({"shape": {"d": 1, "e": 1}, "coeffs": []})
    with pytest.raises(UsageError, match=r"coeffs\[0\]\[1\]"):
        parse_rep({"shape": {"l": 1, "d": 2, "e": 1}, "coeffs": [[[1], [1, 2]]]})
    with pytest.raises(UsageError, match="decimal integer"):
        parse_rep({"shape": {"l": 1, "d": 1, "e": 1}, "coeffs": [[["x"]]]})


def test_cmd_ask(capsys):
    code, out, _ = run(capsys, "ask", "--catalog", "matdxe", "--d", "1", "--e", "1",
                       "--p", "2", "--n", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "3/2"


def test_cmd_zeta_compare(capsys):
    code, out, _ = run(capsys, "zeta", "--catalog", "matdxe", "--d", "2", "--e", "2",
                       "--p", "2", "--levels", "2", "--compare")
    assert code == 0
    assert "match" in out and "MISMATCH" not in out


def test_cmd_zeta_budget_exit(capsys):
    code, out, _ = run(capsys, "zeta", "--catalog", "matdxe", "--d", "2", "--e", "2",
                       "--p", "3", "--levels", "2", "--strategy", "direct", "--budget", "100")
    assert code == 3
    assert "budget" in out


def test_cmd_dual_and_hull(capsys):
    code, out, _ = run(capsys, "dual", "--catalog", "band", "--r", "2", "--op", "bullet")
    assert code == 0
    assert json.loads(out)["shape"] == {"l": 2, "d": 3, "e": 2}
    code, out, _ = run(capsys, "hull", "--catalog", "matdxe", "--d", "1", "--e", "1")
    assert code == 0
    assert json.loads(out)["shape"] == {"l": 2, "d": 2, "e": 1}


def test_cmd_check_duality(capsys):
    code, out, _ = run(capsys, "check", "duality", "--catalog", "band", "--r", "2",
                       "--p", "3", "--n", "2")
    assert code == 0
    assert "FAIL" not in out


def test_cmd_check_constant_rank(capsys):
    code, out, _ = run(capsys, "check", "constant-rank", "--catalog", "gamma", "--d", "2",
                       "--p", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"constant": False, "rank": 2}


def test_cmd_check_kminimal(capsys):
    code, out, _ = run(capsys, "check", "kminimal", "--catalog", "band", "--r", "2",
                       "--p", "2", "--levels", "2")
    assert code == 0
    assert out.count("True") == 2


def test_cmd_check_homotopy(tmp_path, capsys):
    band = make("band", r=2)
    payload = {
        "source": emit_rep(make("hankel", r=2)),
        "target": emit_rep(band.dual("circ")),
        "nu": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "phi": [[1, 0], [0, 1]],
        "psi": [[1, 0], [0, 1]],
    }
    path = tmp_path / "triple.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "check", "homotopy", "--p", "3", "--n", "2",
                       "--triple", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out) == {"homotopy": True}


def test_cmd_group(capsys):
    code, out, _ = run(capsys, "group", "--kind", "galpha", "--catalog", "type_F",
                       "--d", "2", "--p", "3", "--n", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["class_number"] == 11
    assert all(row["match"] is not False for row in payload["identities"])


def test_cmd_group_lazard(capsys):
    code, out, _ = run(capsys, "group", "--kind", "lazard", "--catalog", "lie_heisenberg",
                       "--p", "5", "--n", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["class_number"] == 29


def test_cmd_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "band" in out
    code, out, _ = run(capsys, "catalog", "emit", "--name", "so", "--d", "2")
    assert code == 0
    assert json.loads(out)["shape"] == {"l": 1, "d": 2, "e": 2}


def test_cmd_det_example(capsys):
    code, out, _ = run(capsys, "det-example", "--catalog", "matdxe", "--d", "1", "--e", "1",
                       "--p", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["smooth"] is True and payload["projective_points"] == 0
    assert all(row["match"] for row in payload["levels"])


def test_cmd_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--criteria", "2,4")
    assert code == 0
    assert "criterion  2 PASS" in out and "criterion  4 PASS" in out


def test_verify_report_is_deterministic():
    from askzeta.verify import run_criterion

    first = run_criterion(2)
    second = run_criterion(2)
    a, b = first.to_dict(), second.to_dict()
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_usage_errors(capsys):
    code, _, err = run(capsys, "ask", "--p", "2")
    assert code == 2 and "no tensor" in err
    code, _, err = run(capsys, "zeta", "--catalog", "so", "--d", "3", "--p", "2", "--compare")
    assert code == 2 and "closed form" in err
    code, _, err = run(capsys, "catalog", "emit")
    assert code == 2
