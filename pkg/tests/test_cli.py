import csv
import io
import json

import pytest

from kloosterman.cli import RunConfig, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_roots_g2(capsys):
    code, doc = run_json(capsys, "roots", "--type", "G2")
    assert code == 0
    assert doc["h"] == 6 and doc["r_s"] == 1


def test_census_e8(capsys):
    code, doc = run_json(capsys, "census", "--type", "E8", "--rep", "qm")
    assert code == 0
    assert doc["predicted_minus_chi"] == 8
    assert doc["swan_prediction_dual"] == 8


def test_census_f4_adjoint(capsys):
    code, doc = run_json(capsys, "census", "--type", "F4", "--rep", "adjoint")
    assert code == 0 and doc["predicted_minus_chi"] == 4


def test_sum_q3(capsys):
    code, doc = run_json(capsys, "sum", "--p", "3", "--k", "1", "--n", "2", "--a", "1")
    assert code == 0
    assert doc["value"] == "1.0+0.0i"


def test_sum_with_coeffs_and_chi(capsys):
    code, doc = run_json(capsys, "sum", "--p", "7", "--n", "2", "--a", "3", "--coeffs", "1,2", "--chi", "0,3")
    assert code == 0
    assert doc["coeffs"] == [1, 2] and doc["chi"] == [0, 3]


def test_field(capsys):
    code, doc = run_json(capsys, "--no-cache", "field", "--p", "2", "--k", "2")
    assert code == 0
    assert doc["modulus"] == [1, 1, 1] and doc["q"] == 4


def test_table_json_and_csv(capsys, tmp_path):
    code, doc = run_json(capsys, "table", "--p", "5", "--n", "2", "--method", "naive", "--normalized")
    assert code == 0
    assert doc["normalized"] is True and len(doc["values"]) == 4
    out = tmp_path / "t.csv"
    code, stdout, _ = run(capsys, "table", "--p", "5", "--n", "2", "--format", "csv", "--out", str(out))
    assert code == 0 and stdout == ""
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ["a", "re", "im"] and len(rows) == 5


def test_weil(capsys):
    code, doc = run_json(capsys, "weil", "--p", "101", "--n", "2")
    assert code == 0 and doc["pass"] is True and doc["max_ratio"] <= 2


def test_angles(capsys):
    code, doc = run_json(capsys, "angles", "--p", "1009", "--ks")
    assert code == 0
    assert len(doc["histogram"]) == 40 and "ks_statistic" in doc
    code, doc = run_json(capsys, "angles", "--p", "101", "--bins", "10", "--angles")
    assert "ks_statistic" not in doc and len(doc["angles"]) == 100


def test_moments_g2(capsys):
    code, doc = run_json(capsys, "moments", "--p", "2", "--k", "10", "--n", "7", "--kmax", "3")
    assert doc["metadata"]["target"]["label"] == "G2"
    assert [r["theoretical"] for r in doc["reports"]] == [1, 0, 1, 1]
    assert code == (0 if doc["all_pass"] else 1)


def test_moments_csv_mixed(capsys):
    code, out, _ = run(capsys, "moments", "--p", "5", "--k", "4", "--n", "3", "--kmax", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {(r["a"], r["b"]) for r in rows} >= {("1", "1"), ("2", "0"), ("0", "2")}
    assert code == 0


def test_moments_user_target_fails(capsys):
    # the SO7 hypothesis on G2 data is wrong at m4
    code, doc = run_json(capsys, "moments", "--p", "2", "--k", "13", "--n", "7", "--kmax", "4", "--target", "B3")
    assert code == 1
    assert doc["reports"][4]["theoretical"] == 3 and not doc["reports"][4]["pass"]


def test_moments_theory(capsys):
    code, doc = run_json(capsys, "moments-theory", "--type", "G2", "--rep", "qm", "--kmax", "8")
    assert code == 0 and doc[:5] == [1, 0, 1, 1, 4]
    code, doc = run_json(capsys, "moments-theory", "--type", "A2", "--mixed", "3,0")
    assert doc == 1


def test_wild(capsys):
    code, doc = run_json(capsys, "wild", "--type", "E8", "--p", "7")
    assert code == 0
    assert doc["swan"] == 8 and doc["p_divides_W"] is True
    assert all(doc["verdicts"].values())
    code, _, err = run(capsys, "wild", "--type", "E8", "--p", "7", "--strict")
    assert code == 2 and json.loads(err)["error"] == "BadPrime"


@pytest.mark.parametrize("argv", [
    ["roots", "--type", "E9"],
    ["field", "--p", "4"],
    ["sum", "--p", "5", "--n", "2", "--a", "0"],
    ["sum", "--p", "5", "--n", "2", "--a", "1", "--coeffs", "1"],
    ["sum", "--p", "5", "--n", "2", "--a", "1", "--coeffs", "1,0"],
    ["moments", "--p", "2", "--k", "4", "--n", "3"],
    ["--budget", "1000", "table", "--p", "101", "--n", "4", "--method", "naive"],
    ["wild", "--type", "A2", "--p", "3"],
    ["census", "--type", "A2", "--rep", "spin"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "error" in json.loads(err)


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["sum", "--p", "5"])
    assert exc.value.code == 2


def test_verify_all_subset(capsys):
    code, out, err = run(capsys, "verify-all", "--only", "6,7,9")
    assert code == 0
    doc = json.loads(out)
    assert [c["id"] for c in doc["checks"]] == [6, 7, 9]
    assert all(c["pass"] for c in doc["checks"])
    assert "[PASS]" in err


def test_identical_invocations_are_byte_identical(capsys):
    argv = ["table", "--p", "7", "--k", "2", "--n", "3", "--method", "naive"]
    _, first, _ = run(capsys, "--threads", "3", *argv)
    _, again, _ = run(capsys, *argv)
    assert first == again


def test_run_config_defaults(monkeypatch):
    monkeypatch.setenv("KL_THREADS", "2")
    cfg = RunConfig.from_args(build_parser().parse_args(["roots", "--type", "A1"]))
    assert cfg.threads == 2 and cfg.seed == 0 and cfg.tolerance_A == 10.0 and cfg.tolerance_B == 3.0
