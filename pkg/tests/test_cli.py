"""Command-line interface: envelopes, exit codes, determinism."""

import json
import os
import shutil
import subprocess

import pytest

from reartool.cli import main


@pytest.fixture(autouse=True)
def _clean_grid_env():
    yield
    os.environ.pop("REARTOOL_GRID", None)


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


STGG_FIXTURE = ("criterion", "--kind", "stgg", "--p", "1.0",
                "--phi", "pow:0.75", "--psi", "pow:0.25",
                "--w1", "pow:-0.5", "--w2", "pow:-0.5")


class TestCriterion:
    def test_stgg_fixture_envelope(self, capsys):
        rc, out, _ = run_cli(capsys, *STGG_FIXTURE)
        assert rc == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["config"]["kind"] == "stgg"
        assert doc["report"]["finite"] is True
        assert doc["report"]["sup_value"] == pytest.approx(2.0, rel=1e-9)
        assert doc["report"]["checks"]["sgg_sup"] == pytest.approx(1.5, rel=1e-9)

    def test_require_finite_gates_the_exit_code(self, capsys):
        divergent = ("criterion", "--kind", "sgg", "--p", "1.0",
                     "--phi", "pow:0.5", "--w1", "pow:-0.5", "--w2", "pow:-0.5")
        rc, out, _ = run_cli(capsys, *divergent)
        assert rc == 0
        assert json.loads(out)["report"]["finite"] is False
        rc, out, _ = run_cli(capsys, *divergent, "--require-finite")
        assert rc == 2
        assert json.loads(out)["report"]["sup_value"] == "inf"

    def test_missing_companion_descriptor(self, capsys):
        rc, _, err = run_cli(capsys, "criterion", "--kind", "sgg", "--p", "1.0",
                             "--phi", "pow:0.5", "--w1", "pow:-0.5")
        assert rc == 1
        assert "needs --phi and --w2" in err

    def test_trivial_space_exit(self, capsys):
        rc, _, err = run_cli(capsys, "criterion", "--kind", "ghs", "--p", "1.0",
                             "--w1", "pow:0.0", "--w2", "pow:-0.5")
        assert rc == 3
        assert "zero" in err

    def test_precondition_exit(self, capsys):
        rc, _, err = run_cli(capsys, "criterion", "--kind", "sgg", "--p", "1.0",
                             "--phi", "jump:1+pow:0.75",
                             "--w1", "pow:-0.5", "--w2", "pow:-0.5")
        assert rc == 3
        assert "jumps at 0" in err

    def test_math_failure_exit(self, capsys):
        # the derived weight does not exist for phi = sqrt(t) against w2
        rc, _, err = run_cli(capsys, "criterion", "--kind", "neugebauer",
                             "--p", "1.0", "--phi", "pow:0.5",
                             "--w1", "pow:-0.5", "--w2", "pow:-0.5")
        assert rc == 2
        assert "diverges" in err

    def test_unknown_kind_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["criterion", "--kind", "bogus", "--p", "1.0",
                  "--w1", "pow:-0.5"])
        assert exc.value.code == 1


class TestCheckB:
    def test_linear_profile_fails_cleanly(self, capsys):
        rc, out, _ = run_cli(capsys, "check-b", "--phi", "pow:1.0")
        assert rc == 0
        doc = json.loads(out)
        assert doc["report"]["holds"] is False
        assert doc["config"]["method"] == "consensus"

    def test_single_method(self, capsys):
        rc, out, _ = run_cli(capsys, "check-b", "--phi", "pow:0.5",
                             "--method", "integral")
        assert rc == 0
        rep = json.loads(out)["report"]
        assert rep["holds"] is True
        assert rep["constant"] == pytest.approx(2.0, rel=1e-9)

    def test_no_csv_form(self, capsys):
        rc, _, err = run_cli(capsys, "check-b", "--phi", "pow:0.5",
                             "--format", "csv")
        assert rc == 1
        assert "no CSV representation" in err


class TestApply:
    def test_csv_values_round_trip(self, capsys):
        rc, out, _ = run_cli(capsys, "apply", "--op", "S", "--phi", "pow:0.5",
                             "--f", "chi:1.0", "--points", "0.25,4.0")
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,value"
        rows = [line.split(",") for line in lines[1:]]
        assert float(rows[0][1]) == 1.0
        assert float(rows[1][1]) == 0.5

    def test_json_payload(self, capsys):
        rc, out, _ = run_cli(capsys, "apply", "--op", "T", "--phi", "pow:0.5",
                             "--f", "chi:1.0", "--points", "0.25",
                             "--format", "json")
        assert rc == 0
        rep = json.loads(out)["report"]
        assert rep["exact"] is True
        assert rep["values"][0] == pytest.approx(2.0, rel=1e-12)

    def test_point_validation(self, capsys):
        rc, _, err = run_cli(capsys, "apply", "--op", "S", "--phi", "pow:0.5",
                             "--f", "chi:1.0", "--points", "1,abc")
        assert rc == 1 and "bad --points" in err
        rc, _, err = run_cli(capsys, "apply", "--op", "S", "--phi", "pow:0.5",
                             "--f", "chi:1.0", "--points", "-2.0")
        assert rc == 1 and "strictly inside" in err


class TestNorm:
    def test_marcinkiewicz_indicator(self, capsys):
        rc, out, _ = run_cli(capsys, "norm", "--space", "marcinkiewicz",
                             "--cfg", "pow:0.5", "--f", "chi:4.0",
                             "--format", "json")
        assert rc == 0
        rep = json.loads(out)["report"]
        assert rep["value"] == pytest.approx(2.0, rel=1e-12)
        assert rep["method"] == "exact"

    def test_gamma_from_weight_shorthand(self, capsys):
        rc, out, _ = run_cli(capsys, "norm", "--space", "gamma",
                             "--cfg", "pow:-0.5", "--p", "1.0",
                             "--f", "chi:1.0", "--format", "json")
        assert rc == 0
        assert json.loads(out)["report"]["value"] == pytest.approx(4.0, rel=1e-12)

    def test_gamma_from_space_descriptor(self, capsys):
        cfg = json.dumps({"kind": "gamma-space", "p": 1.0,
                          "weight": {"kind": "powlog", "c": 1.0,
                                     "gamma": -0.5, "beta": 0.0,
                                     "domain": {"R": "inf"}}})
        rc, out, _ = run_cli(capsys, "norm", "--space", "gamma", "--cfg", cfg,
                             "--f", "chi:1.0", "--format", "json")
        assert rc == 0
        assert json.loads(out)["report"]["value"] == pytest.approx(4.0, rel=1e-6)

    def test_norm_needs_step_data(self, capsys):
        cfg = json.dumps({"kind": "power", "domain": {"R": "inf"}, "pieces": [
            {"lo": 0.0, "hi": "inf", "c": 1.0, "gamma": -0.5}]})
        rc, _, err = run_cli(capsys, "norm", "--space", "marcinkiewicz",
                             "--cfg", "pow:0.5", "--f", cfg)
        assert rc == 1
        assert "step-function data" in err


class TestVerifyAndDemo:
    def test_one_star_deterministic_bytes(self, capsys):
        argv = ("verify", "--lemma", "one-star", "--phi", "pow:0.5",
                "--samples", "120", "--seed", "7")
        rc1, out1, _ = run_cli(capsys, *argv)
        rc2, out2, _ = run_cli(capsys, *argv)
        assert rc1 == rc2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["report"]["passed"] is True

    def test_endpoint_selection(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "--lemma", "endpoints",
                             "--which", "T-L1", "--phi", "pow:0.5",
                             "--samples", "40")
        assert rc == 0
        verdicts = json.loads(out)["report"]["verdicts"]
        assert len(verdicts) == 1
        assert verdicts[0]["lemma"] == "endpoint-T-L1"

    def test_interpolate_demo_defaults(self, capsys):
        rc, out, _ = run_cli(capsys, "interpolate-demo", "--samples", "40")
        assert rc == 0
        rep = json.loads(out)["report"]
        assert rep["passed"] is True
        assert rep["details"]["stgg_sup"] == pytest.approx(2.0, rel=1e-9)


class TestPlumbing:
    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        rc, out, _ = run_cli(capsys, *STGG_FIXTURE, "--out", str(target))
        assert rc == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert doc["report"]["sup_value"] == pytest.approx(2.0, rel=1e-9)

    def test_grid_floor(self, capsys):
        rc, _, err = run_cli(capsys, "check-b", "--phi", "pow:0.5",
                             "--grid", "8")
        assert rc == 1
        assert "at least 16" in err

    def test_grid_threads_through_env(self, capsys):
        rc, _, _ = run_cli(capsys, *STGG_FIXTURE, "--grid", "64")
        assert rc == 0
        assert os.environ["REARTOOL_GRID"] == "64"

    def test_version_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0

    def test_console_script_installed(self):
        exe = shutil.which("reartool")
        assert exe, "console script should be on PATH after install"
        proc = subprocess.run([exe, "check-b", "--phi", "pow:0.5"],
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["report"]["holds"] is True
