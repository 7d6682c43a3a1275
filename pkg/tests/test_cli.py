import json

import numpy as np
import pytest

from isotuple import matrix_core as mc
from isotuple.cli import main
from isotuple.tuples import OperatorTuple


@pytest.fixture
def jordan_files(tmp_path):
    T = np.array([[1, 1], [0, 1]], dtype=complex)
    A0 = np.diag([0.0, 1.0]).astype(complex)
    paths = {}
    for name, payload in (
        ("tuple_a", OperatorTuple.of(mc.adjoint(T)).to_json()),
        ("tuple_b", OperatorTuple.of(T).to_json()),
        ("x", mc.matrix_to_json(A0)),
        ("eye", mc.matrix_to_json(np.eye(2))),
        ("eye3", mc.matrix_to_json(np.eye(3))),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(payload))
        paths[name] = str(p)
    return paths


def test_repro_paper_passes(capsys):
    assert main(["repro-paper"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
    assert "convention-dependent" in out  # the documented discrepancy note


def test_repro_paper_json(capsys):
    assert main(["repro-paper", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["all_passed"] is True
    assert len(payload["checks"]) == 9


def test_repro_paper_corrupted_golden_fails(tmp_path, capsys):
    bad = tmp_path / "golden.json"
    bad.write_text(json.dumps({"S_A0_S": [[[9, 0], [1, 0]], [[1, 0], [1, 0]]]}))
    assert main(["repro-paper", "--golden", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "mismatch in mixing/S_A0_S" in out


def test_check_jordan_example(jordan_files, capsys):
    code = main(
        [
            "check",
            "--tuple-a",
            jordan_files["tuple_a"],
            "--tuple-b",
            jordan_files["tuple_b"],
            "--x",
            jordan_files["x"],
            "--m",
            "2",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "isometric at m=2: true" in out


def test_check_json_output_and_k_max(jordan_files, capsys):
    code = main(
        [
            "check",
            "--tuple-a",
            jordan_files["tuple_a"],
            "--tuple-b",
            jordan_files["tuple_b"],
            "--x",
            jordan_files["eye"],
            "--n",
            "3",
            "--k-max",
            "5",
            "--json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["profile"]["k_max"] == 5
    assert payload["verdicts"]["symmetric at n=3"] is True


def test_check_dimension_mismatch_exits_2(jordan_files, capsys):
    code = main(
        [
            "check",
            "--tuple-a",
            jordan_files["tuple_a"],
            "--tuple-b",
            jordan_files["tuple_b"],
            "--x",
            jordan_files["eye3"],
        ]
    )
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_check_unparseable_file_exits_2(tmp_path, jordan_files, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(
        [
            "check",
            "--tuple-a",
            str(bad),
            "--tuple-b",
            jordan_files["tuple_b"],
            "--x",
            jordan_files["x"],
        ]
    )
    assert code == 2


def test_min_degree_jordan(jordan_files, capsys):
    code = main(
        [
            "min-degree",
            "--tuple-a",
            jordan_files["tuple_a"],
            "--tuple-b",
            jordan_files["tuple_b"],
            "--x",
            jordan_files["eye"],
        ]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "symmetry: 3, isometry: 3"


def test_min_degree_none_for_growing_defect(tmp_path, capsys):
    inv = OperatorTuple.of(np.sqrt(2) * np.eye(2), np.sqrt(2) * np.eye(2))
    t_path = tmp_path / "inv.json"
    t_path.write_text(json.dumps(inv.to_json()))
    x_path = tmp_path / "x.json"
    x_path.write_text(json.dumps(mc.matrix_to_json(np.eye(2))))
    code = main(
        ["min-degree", "--tuple-a", str(t_path), "--tuple-b", str(t_path), "--x", str(x_path)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "isometry: none <= 12" in out


def test_campaign_writes_report_and_exits_0(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    csv_file = tmp_path / "report.csv"
    code = main(
        [
            "campaign",
            "--theorem",
            "thm05",
            "--trials",
            "5",
            "--seed",
            "42",
            "--out",
            str(out_file),
            "--csv",
            str(csv_file),
        ]
    )
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["theorem_id"] == "thm05"
    assert report["passes"] == 5
    assert csv_file.read_text().splitlines()[0] == "theorem_id,trials,passes,anomalies,max_defect"


def test_campaign_unknown_theorem_exits_2(capsys):
    assert main(["campaign", "--theorem", "bogus", "--trials", "2"]) == 2


def test_campaign_byte_identical_modulo_timestamp(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = main(
            ["campaign", "--theorem", "cor06", "--trials", "4", "--seed", "42", "--out", str(p), "--quiet"]
        )
        assert code == 0

    def stripped(p):
        data = json.loads(p.read_text())
        data.pop("timestamp")
        return json.dumps(data, sort_keys=True).encode()

    assert stripped(paths[0]) == stripped(paths[1])


def test_campaign_budget_partial_exits_3(tmp_path):
    out_file = tmp_path / "partial.json"
    code = main(
        [
            "campaign",
            "--theorem",
            "pro01",
            "--trials",
            "100000",
            "--seed",
            "0",
            "--budget",
            "0.2",
            "--out",
            str(out_file),
            "--quiet",
        ]
    )
    assert code == 3
    report = json.loads(out_file.read_text())
    assert report["budget_exceeded"] is True


def test_campaign_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"theorem": "cor062", "trials": 3, "seed": 7}))
    out_file = tmp_path / "rep.json"
    code = main(["campaign", "--config", str(cfg), "--trials", "2", "--out", str(out_file), "--quiet"])
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["theorem_id"] == "cor062"
    assert report["trials"] == 2  # flag overrides the config file


def test_campaign_requires_theorem(capsys):
    assert main(["campaign", "--trials", "2"]) == 2


def test_usage_error_exits_2():
    assert main(["check"]) == 2  # missing required flags
    assert main(["no-such-command"]) == 2


def test_campaign_tol_flag(tmp_path):
    out_file = tmp_path / "rep.json"
    code = main(
        [
            "campaign",
            "--theorem",
            "pro04",
            "--trials",
            "4",
            "--seed",
            "3",
            "--tol",
            "1e-6",
            "--out",
            str(out_file),
            "--quiet",
        ]
    )
    assert code == 0
    assert json.loads(out_file.read_text())["passes"] == 4


def test_check_warns_on_noncommuting_tuple(tmp_path, jordan_files, capsys):
    up = np.array([[0, 1], [0, 0]], dtype=complex)
    noncomm = OperatorTuple.of(up, up.T.copy())
    t_path = tmp_path / "noncomm.json"
    t_path.write_text(json.dumps(noncomm.to_json()))
    code = main(
        ["check", "--tuple-a", str(t_path), "--tuple-b", str(t_path), "--x", jordan_files["eye"]]
    )
    assert code == 0  # lax mode: classified anyway
    err = capsys.readouterr().err
    assert "does not commute" in err
