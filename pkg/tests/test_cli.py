import json

import pytest

from liftforge.bank import cdf75_matrix, daub44_matrix
from liftforge.cca import run_schema
from liftforge.cli import main
from liftforge.eea import eea_factor
from liftforge.pmat import cascade_from_json, cascade_to_json, expand


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor_schema_text(capsys):
    code, out, _ = run(capsys, "factor", "--bank", "cdf75", "--schema",
                       "(L,0,0,0; L,0,1,0; L,0,0,0)")
    assert code == 0
    assert "diag(-50, -1/50)" in out
    assert "725 + 125*z^-1" in out
    assert "conditioning product" in out


def test_factor_schema_json_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "factor", "--bank", "cdf75", "--format", "json",
                       "--schema", "(L,0,0,0; L,0,1,0; L,0,0,0)")
    assert code == 0
    data = json.loads(out)
    cascade = cascade_from_json(data["cascade"])
    assert cascade == run_schema(cdf75_matrix(), "(L,0,0,0; L,0,1,0; L,0,0,0)")
    assert data["op_counts"] == {"pp_add": 2, "sp_mult": 6, "pp_mult": 2,
                                 "p_div": 2}


def test_factor_eea(capsys):
    code, out, _ = run(capsys, "factor", "--bank", "cdf75", "--eea", "col",
                       "0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["op_counts"] == {"pp_add": 3, "sp_mult": 8, "pp_mult": 3,
                                 "p_div": 3}
    assert cascade_from_json(data["cascade"]) == eea_factor(
        cdf75_matrix(), "col", 0)[0]


def test_factor_daub44_table_row(capsys):
    code, out, _ = run(capsys, "factor", "--bank", "daub44", "--format",
                       "json", "--schema", "(L,0,0,0; L,0,1,0)")
    assert code == 0
    data = json.loads(out)
    assert data["signature"] == "[{0,1}; 1,0; 1 : 0]"
    assert expand(cascade_from_json(data["cascade"])) == daub44_matrix()


def test_enumerate_daub44(capsys):
    code, out, _ = run(capsys, "enumerate", "--bank", "daub44", "--format",
                       "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 8
    assert data["signatures_distinct"] is True


def test_verify_ok_and_perturbed(capsys, tmp_path):
    cascade = run_schema(cdf75_matrix(), "(L,0,0,0; L,0,1,0; L,0,0,0)")
    path = tmp_path / "cascade.json"
    path.write_text(json.dumps(cascade_to_json(cascade)))
    code, out, _ = run(capsys, "verify", "--bank", "cdf75", str(path))
    assert code == 0 and "ok" in out

    data = cascade_to_json(cascade)
    data["steps"][0]["filter"][0] = "-3999/1000"  # perturb one coefficient
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--bank", "cdf75", str(bad))
    assert code == 1
    assert "mismatch at entry" in out


def test_condition_subcommand(capsys, tmp_path):
    cascade, _ = eea_factor(cdf75_matrix(), "col", 0)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cascade_to_json(cascade)))
    code, out, _ = run(capsys, "condition", str(path), "--format", "json")
    assert code == 0
    assert abs(json.loads(out)["product"] - 1.1e12) / 1.1e12 < 0.01


def test_count_all_grid(capsys):
    code, out, _ = run(capsys, "count", "--bank", "cdf75", "--all",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "factorization,pp_adds,sp_mults,pp_mults,p_divs"
    grid = {l.split(",")[0]: tuple(int(x) for x in l.split(",")[1:])
            for l in lines[1:]}
    assert grid["col 0 EEA"] == (3, 8, 3, 3)
    assert grid["col 0 CCA"] == (2, 6, 2, 2)
    assert grid["col 1 EEA"] == (1, 6, 1, 2)
    assert grid["col 1 CCA"] == (2, 4, 2, 1)
    assert grid["row 0 EEA"] == (2, 6, 3, 3)
    assert grid["row 0 CCA"] == (2, 3, 2, 2)
    assert grid["row 1 EEA"] == (1, 5, 1, 2)
    assert grid["row 1 CCA"] == (2, 2, 2, 1)


def test_schema_error_exit_code(capsys):
    code, _, err = run(capsys, "factor", "--bank", "cdf75", "--schema",
                       "(L,0,0,0; L,9,1,0)")
    assert code == 2
    assert "step 1" in err


def test_input_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "factor", "--bank", "nosuchbank", "--schema",
                       "(L,0,0,0)")
    assert code == 3
    code, _, err = run(capsys, "condition", str(tmp_path / "missing.json"))
    assert code == 3


def test_json_error_format(capsys):
    code, _, err = run(capsys, "factor", "--bank", "cdf75", "--format",
                       "json", "--schema", "(L,9,0,0)")
    assert code == 2
    body = json.loads(err)
    assert body["step_index"] == 0


def test_text_print_consistent_with_json_round_trip(capsys):
    # the text rendering is a pure projection of the lossless JSON form
    from liftforge.pmat import cascade_to_text

    cascade = run_schema(cdf75_matrix(), "(L,1,0,{0,1}; L,0,1,0; L,{0,1},0,0)")
    back = cascade_from_json(cascade_to_json(cascade))
    assert cascade_to_text(back) == cascade_to_text(cascade)
    assert back == cascade


def test_bank_json_source(capsys, tmp_path):
    from liftforge.bank import bank_to_json, builtin

    path = tmp_path / "bank.json"
    path.write_text(json.dumps(bank_to_json(builtin("lgt53"))))
    code, out, _ = run(capsys, "factor", "--bank-json", str(path),
                       "--schema", "(L,0,0,0; L,{0,1},1,0)")
    assert code == 0


def test_matrix_json_source(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(
        {"matrix": cdf75_matrix().to_strings(), "field": "rational"}))
    code, out, _ = run(capsys, "count", "--matrix-json", str(path),
                       "--eea", "row", "1", "--format", "csv")
    assert code == 0
    assert "row 1 EEA,1,5,1,2" in out
