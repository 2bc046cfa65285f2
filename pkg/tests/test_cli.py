from __future__ import annotations

import json

import pytest

from bianchi_periods.cli import main
from bianchi_periods.quadfield import get_field
from bianchi_periods.verify import CheckResult, kappa_grid, random_words, run_verify, worker_count


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_cf_command(capsys):
    status, out, _ = run(capsys, "cf", "--d", "1", "--kappa", "1/2+1/2*w")
    data = json.loads(out)
    assert status == 0
    assert data["betas"] == ["0", "1-1*w"]
    assert data["convergents"][-1] == ["1", "1-1*w"]
    assert data["matrices"][1] == [["0", "1"], ["-1", "1-1*w"]]


def test_cf_accepts_quotient(capsys):
    _, out, _ = run(capsys, "cf", "--d", "1", "--kappa", "(1+w)/(2)")
    assert json.loads(out)["kappa"] == "1/2+1/2*w"


def test_hecke_command(capsys):
    status, out, _ = run(capsys, "hecke", "--d", "2", "--k", "0", "--n", "1")
    data = json.loads(out)
    assert status == 0 and data["matrix"] == [["1"]]
    assert data["representative_log"]["divisors"][0]["residues"] == ["0"]


def test_wkk_command(capsys):
    _, out, _ = run(capsys, "wkk", "--d", "11", "--k", "2")
    data = json.loads(out)
    assert data["coboundary_in_w"] is True
    assert data["dim_w_tilde"] == data["dim_w"] - 1 == len(data["quotient_basis"])
    assert all(len(v) == 9 for v in data["basis"])


def test_transport_and_eigen_commands(capsys):
    _, out, _ = run(capsys, "transport", "--d", "1", "--k", "1", "--kappa", "1/2+1/2*w")
    assert json.loads(out)["matrix"][0] == ["3", "1-1*w", "1+1*w", "1"]
    _, out, _ = run(capsys, "eigen", "--d", "3", "--k", "2", "--pairs", "1:1")
    data = json.loads(out)
    assert data["dim"] == len(data["basis"]) == len(data["w_tilde_coordinates"])
    _, out, _ = run(capsys, "eigen", "--d", "3", "--k", "2", "--pairs", "1:1,1:0")
    assert json.loads(out)["dim"] == 0


def test_output_is_deterministic(capsys, tmp_path):
    _, first, _ = run(capsys, "hecke", "--d", "1", "--k", "2", "--n", "1+2*w")
    _, second, _ = run(capsys, "hecke", "--d", "1", "--k", "2", "--n", "1+2*w")
    assert first == second
    target = tmp_path / "a.json"
    status, out, _ = run(capsys, "hecke", "--d", "1", "--k", "2", "--n", "1+2*w", "--output", str(target))
    assert status == 0 and out == "" and target.read_text() == first
    assert "." not in "".join(json.loads(first)["matrix"][0])  # no floats anywhere


@pytest.mark.parametrize(
    "argv,kind",
    [
        (["cf", "--d", "5", "--kappa", "1"], "unsupported_field"),
        (["hecke", "--d", "1", "--k", "1", "--n", "1+x"], "malformed_element"),
        (["hecke", "--d", "1", "--k", "1", "--n", "1/2"], "malformed_element"),
        (["hecke", "--d", "1", "--k", "1", "--n", "0"], "domain"),
        (["wkk", "--d", "1", "--k", "17"], "k_out_of_range"),
        (["wkk", "--d", "1", "--k", "-1"], "k_out_of_range"),
        (["eigen", "--d", "1", "--k", "1", "--pairs", "1"], "malformed_pairs"),
        (["cf", "--d", "1", "--kappa", "(1)/(0)"], "malformed_element"),
        (["frobnicate"], "usage"),
    ],
)
def test_errors_are_structured(capsys, argv, kind):
    status, out, err = run(capsys, *argv)
    assert status != 0 and out == ""
    assert json.loads(err)["error"] == kind


def test_verify_command(capsys):
    status, out, _ = run(capsys, "verify", "--d", "3", "--k", "2", "--norm-bound", "20")
    data = json.loads(out)
    assert status == 0 and data["ok"]
    names = [c["name"] for c in data["checks"]]
    assert names == [
        "hecke_first_row_identity",
        "hecke_integrality",
        "totient_identity",
        "cf_roundtrip",
        "slash_laws",
        "rc_inversion",
    ]
    assert all(c["cases_passed"] == c["cases_run"] > 0 for c in data["checks"])


def test_verify_exit_status_reflects_failures(monkeypatch, capsys):
    import bianchi_periods.cli as cli
    from bianchi_periods.verify import VerifyReport

    def failing(field, k, bound, diagnostics=False):
        rep = VerifyReport(field, k, bound)
        check = CheckResult("x")
        check.record(False, "witness")
        rep.checks.append(check)
        return rep

    monkeypatch.setattr(cli, "run_verify", failing)
    status, out, _ = run(capsys, "verify", "--d", "1", "--k", "1", "--norm-bound", "5")
    assert status == 1 and json.loads(out)["checks"][0]["first_failure"] == "witness"


def test_verify_parallel_matches_serial():
    f = get_field(7)
    serial = run_verify(f, 2, 12, workers=1).to_json()
    parallel = run_verify(f, 2, 12, workers=2).to_json()
    assert serial == parallel


def test_verify_diagnostics_are_reported_not_checked():
    rep = run_verify(get_field(1), 2, 5, workers=1, diagnostics=True)
    assert rep.ok
    rows = rep.to_json()["diagnostics"]["w_stability"]
    assert {r["k"] for r in rows} == {1, 2}


def test_worker_env(monkeypatch):
    monkeypatch.setenv("BIANCHI_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("BIANCHI_WORKERS", "junk")
    assert worker_count() == 1


def test_sampling_helpers_are_deterministic():
    f = get_field(11)
    assert random_words(f, 5, 4) == random_words(f, 5, 4)
    grid = kappa_grid(f, 50)
    assert len(set(grid)) == 50 and grid[0] == f(-2, -2)


def test_check_result_keeps_first_failure():
    c = CheckResult("c")
    c.record(True, "a")
    c.record(False, "b")
    c.record(False, "c")
    assert (c.cases_run, c.cases_passed, c.first_failure) == (3, 1, "b")
