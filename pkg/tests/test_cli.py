import csv
import io
import json

import numpy as np
import pytest

from opmonotone.cli import RunConfig, UsageError, main, read_input, replay, run
from opmonotone.errors import ReportSchemaError
from opmonotone.hermitian import save_matrices
from opmonotone.suites import SUITE_NAMES, SUITES, run_suite, trial_seed


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    save_matrices(path, {"A": np.array([[1.0, 0.0], [0.0, 0.0]]), "B": np.array([[1.0, 1.0], [1.0, 1.0]])})
    return path


def test_trial_seed_is_stable():
    assert trial_seed(42, 0) == trial_seed(42, 0)
    assert trial_seed(42, 0) != trial_seed(42, 1) != trial_seed(43, 1)


@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_runs_clean(name):
    r = run_suite(name, 3, 4, 1, 1e-8)
    assert r.in_hypothesis_failures == []
    assert r.trials == 4


def test_explore_suite_is_labeled():
    r = run_suite("hansen-explore", 2, 5, 0, 1e-8)
    assert r.out_of_hypothesis and r.in_hypothesis_failures == []
    assert any("out of hypothesis" in n for n in r.notes)


def test_composition_dichotomy():
    r = run_suite("composition", 4, 50, 3, 1e-8)
    assert r.extras["agreement"] == "6/6"
    flags = {row["g"]: row["first_quadrant"] for row in r.extras["dichotomy"]}
    assert flags["power:p=0.5"] and not flags["power:p=0.6"]


def test_unknown_suite():
    with pytest.raises(KeyError, match="valid suites"):
        run_suite("nope", 2, 1, 0, 1e-8)


def test_main_forward_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["--suite", "thm-subadd-fwd", "--dim", "4", "--trials", "50", "--seed", "42", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema_version"] == 1
    assert doc["config"]["suite"] == "thm-subadd-fwd" and doc["config"]["seed"] == 42
    assert doc["body"]["trials"] == 50 and doc["meta"]["wall_time"] > 0


def test_main_converse_with_input(pair_file, tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "thm-subadd-conv", "--input", str(pair_file), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["body"]["verdict"] == "violation_found"
    assert doc["body"]["extras"]["found_lam"] in [2.0**k for k in range(-5, 26)]
    assert set(doc["config"]["input"]["matrices"]) == {"A", "B"}


def test_main_usage_errors(capsys):
    assert main(["--suite", "unknown"]) == 2
    assert "thm-subadd-fwd" in capsys.readouterr().err
    assert main([]) == 2
    assert main(["--suite", "gustafson", "--dim", "0"]) == 2
    assert main(["--suite", "gustafson", "--function", "nope"]) == 2
    assert main(["--suite", "gustafson", "--seed", "-1"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["--suite", "gustafson", "--format", "xml"])
    assert info.value.code == 2


def test_out_of_hypothesis_input_is_usage_error(pair_file, capsys):
    assert main(["--suite", "thm-subadd-fwd", "--input", str(pair_file)]) == 2
    assert "not PSD" in capsys.readouterr().err


def test_failing_suite_exit_one_and_replay(tmp_path):
    # a tolerance far below rounding level turns noise into recorded failures
    out = tmp_path / "fail.json"
    assert main(["--suite", "thm-subadd-fwd", "--dim", "4", "--trials", "10", "--tol", "1e-300", "--out", str(out)]) == 1
    doc = json.loads(out.read_text())
    failures = doc["body"]["failures"]
    assert failures and "matrices" in failures[0] and "shrunk" in failures[0]
    report, same = replay(out)
    assert same and len(report.failures) == len(failures)
    assert main(["--replay", str(out)]) == 1


def test_formats(capsys):
    assert main(["--suite", "gustafson", "--trials", "3", "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["suite", "trial", "function", "min_eigenvalue", "passed"] and len(rows) == 4
    assert main(["--suite", "gustafson", "--trials", "3", "--format", "text"]) == 0
    assert "suite gustafson" in capsys.readouterr().out


def test_replay_identical_and_edited(tmp_path):
    out = tmp_path / "r.json"
    run(RunConfig("power-split", dim=3, trials=5, seed=7, out=str(out)))
    report, same = replay(out)
    assert same
    doc = json.loads(out.read_text())
    doc["config"]["seed"] = 8
    edited = tmp_path / "edited.json"
    edited.write_text(json.dumps(doc))
    _, same = replay(edited)
    assert not same
    assert main(["--replay", str(edited)]) == 1


def test_replay_schema_mismatch(tmp_path):
    out = tmp_path / "r.json"
    run(RunConfig("gustafson", trials=2, out=str(out)))
    doc = json.loads(out.read_text())
    doc["schema_version"] = 99
    out.write_text(json.dumps(doc))
    with pytest.raises(ReportSchemaError):
        replay(out)
    assert main(["--replay", str(out)]) == 2


def test_replay_all_battery(tmp_path):
    out = tmp_path / "all.json"
    report, _ = run(RunConfig("all", dim=3, trials=3, seed=5, out=str(out)))
    assert set(report.extras["suites"]) == set(SUITES)
    assert {r["suite"] for r in report.records} >= {"gustafson", "hansen"}
    _, same = replay(out)
    assert same


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("gustafson", tol=0.0).validate()
    with pytest.raises(UsageError):
        RunConfig("gustafson", format="xml").validate()
    assert RunConfig("all").validate().suite in SUITE_NAMES


def test_read_input_list_file(tmp_path):
    path = tmp_path / "list.json"
    save_matrices(path, [np.eye(2), 2 * np.eye(2)])
    d = read_input(path)
    assert list(d["matrices"]) == ["M0", "M1"]
