"""CLI surface: subcommands, JSON reports, exit codes, determinism."""

import json

import pytest

from schubres.cli import run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestBuilding:
    def test_sigma_example(self, capsys):
        code, rep = run_json(capsys, ["building", "--perm", "4,8,6,2,7,3,1,5"])
        assert code == 0
        assert rep["counts"]["per_level"] == [3, 5, 4, 4, 4, 3, 2]
        assert rep["counts"]["total"] == 25
        assert rep["counts"]["raw_per_level"] == [18, 10, 8, 6, 4, 3, 2]
        assert rep["passed"] is True

    def test_bubblesort(self, capsys):
        code, rep = run_json(capsys, ["bubblesort", "--perm", "2,3,1"])
        assert code == 0
        assert rep["counts"]["word"] == [1, 2]
        assert rep["counts"]["length"] == 2

    def test_rankmatrix_identity(self, capsys):
        code, rep = run_json(capsys, ["rankmatrix", "--perm", "1,2,3"])
        assert code == 0
        assert rep["counts"]["matrix"] == [[1, 1, 1], [1, 2, 2], [1, 2, 3]]


class TestExitCodes:
    def test_invalid_perm_is_2(self, capsys):
        assert run(["building", "--perm", "1,1,2"]) == 2

    def test_invalid_beta_is_2(self, capsys):
        assert run(["grass", "verify-phi", "--n", "4", "--beta", "4,2"]) == 2

    def test_k_beta_mismatch_is_2(self, capsys):
        assert run(["grass", "verify-phi", "--n", "4", "--k", "3", "--beta", "2,4"]) == 2

    def test_budget_exceeded_is_2(self, capsys):
        assert run(["biflag", "enumerate", "--perm", "4,3,2,1", "--budget", "2"]) == 2

    def test_non_prime_field_is_2(self, capsys):
        assert run(["biflag", "verify", "--perm", "2,1", "--field", "4"]) == 2
        assert run(["grass", "verify-phi", "--n", "4", "--beta", "2,4", "--field", "6"]) == 2

    def test_unknown_subcommand_is_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["frobnicate"])
        assert exc.value.code == 2


class TestEnumerationCommands:
    def test_biflag_enumerate(self, capsys):
        code, rep = run_json(
            capsys, ["biflag", "enumerate", "--perm", "2,3,1", "--field", "2"]
        )
        assert code == 0
        assert rep["counts"]["points"] == 9

    def test_biflag_full_grid(self, capsys):
        code, rep = run_json(
            capsys,
            ["biflag", "enumerate", "--perm", "1,2,3", "--variety", "flw", "--field", "2"],
        )
        assert code == 0
        assert rep["counts"]["points"] == 21

    def test_bs_enumerate(self, capsys):
        code, rep = run_json(capsys, ["bs", "enumerate", "--perm", "2,1", "--field", "3"])
        assert code == 0
        assert rep["counts"]["points"] == 4

    def test_wflag_lift(self, capsys):
        code, rep = run_json(
            capsys, ["wflag", "lift", "--n", "4", "--beta", "1,3", "--field", "2"]
        )
        assert code == 0
        names = {c["name"] for c in rep["checks"]}
        assert "lift_is_a_section" in names


class TestVerifyCommands:
    def test_grass_transversal(self, capsys):
        code, rep = run_json(
            capsys, ["grass", "verify-transversal", "--n", "4", "--beta", "2,4"]
        )
        assert code == 0 and rep["passed"]

    def test_wflag_verify(self, capsys):
        code, rep = run_json(capsys, ["wflag", "verify", "--n", "4", "--beta", "2,4"])
        assert code == 0 and rep["passed"]

    def test_embres_verify_merges_reports(self, capsys):
        code, rep = run_json(
            capsys, ["embres", "verify", "--n", "4", "--beta", "2,4", "--field", "2"]
        )
        assert code == 0
        names = {c["name"] for c in rep["checks"]}
        assert any(n.startswith("chart.") for n in names)
        assert any(n.startswith("resolution.") for n in names)


class TestSuite:
    def test_suite_runs_all_criteria(self, capsys):
        code = run(["suite"])
        captured = capsys.readouterr()
        rep = json.loads(captured.out)
        assert code == 0
        names = [c["name"] for c in rep["checks"]]
        assert sum(1 for n in names if not n.endswith("-within-time")) == 10
        assert rep["passed"] is True
        assert captured.err.count("PASS") == 10


class TestReportHygiene:
    def test_determinism_modulo_wall_time(self, capsys):
        _, rep1 = run_json(capsys, ["biflag", "verify", "--perm", "2,3,1"])
        _, rep2 = run_json(capsys, ["biflag", "verify", "--perm", "2,3,1"])
        rep1.pop("wall_time_s")
        rep2.pop("wall_time_s")
        assert json.dumps(rep1) == json.dumps(rep2)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code = run(["building", "--perm", "2,1", "--out", str(target)])
        assert code == 0
        on_disk = json.loads(target.read_text())
        assert on_disk["counts"]["per_level"] == [2]

    def test_schema_fields(self, capsys):
        _, rep = run_json(capsys, ["building", "--perm", "2,1,3"])
        assert set(rep) == {"command", "config", "counts", "checks", "passed", "wall_time_s"}
        for check in rep["checks"]:
            assert set(check) == {"name", "passed", "detail", "witnesses", "informational"}
