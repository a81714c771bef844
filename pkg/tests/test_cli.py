import json
import math

import pytest

from raysearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBound:
    def test_doubling_text(self, capsys):
        code, out, _ = run(capsys, "bound", "-m", "2", "-k", "1", "-f", "0")
        assert code == 0
        assert "lambda0 = 9" in out

    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, "bound", "-m", "2", "-k", "3", "-f", "1", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["q"] == 4 and doc["s"] == 1
        assert doc["lambda0"] == pytest.approx((8 / 3) * 4 ** (1 / 3) + 1)
        assert doc["alpha"] == pytest.approx(4 ** (1 / 3))

    def test_delta_row(self, capsys):
        code, out, _ = run(
            capsys, "bound", "-m", "2", "-k", "1", "-f", "0", "--lam", "8.0", "--json"
        )
        doc = json.loads(out)
        assert doc["delta"] > 1.0

    def test_eta_mode(self, capsys):
        code, out, _ = run(capsys, "bound", "--eta", "2.0", "--json")
        assert code == 0
        assert json.loads(out)["ratio"] == pytest.approx(9.0)

    def test_infeasible_exits_one(self, capsys):
        code, _, err = run(capsys, "bound", "-m", "2", "-k", "1", "-f", "1")
        assert code == 1
        assert "infeasible" in err

    def test_trivial_exits_one(self, capsys):
        code, _, err = run(capsys, "bound", "-m", "2", "-k", "4", "-f", "1")
        assert code == 1
        assert "trivial" in err


class TestSimulate:
    def test_summary_and_csv(self, capsys, tmp_path):
        csv = tmp_path / "sweep.csv"
        summary = tmp_path / "summary.json"
        code, out, _ = run(
            capsys,
            "simulate", "-m", "2", "-k", "1", "-f", "0", "-N", "1e3",
            "--csv", str(csv), "--summary", str(summary),
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["covered"] is True
        assert doc["sup_ratio"] == pytest.approx(9.0, abs=0.01)
        assert json.loads(summary.read_text()) == doc
        lines = csv.read_text().splitlines()
        assert lines[0] == "# raysearch sweep v1"
        assert lines[1] == "ray,x,just_above,tau,ratio,robot_order"
        assert len(lines) > 3

    def test_deterministic_output(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            run(capsys, "simulate", "-m", "3", "-k", "2", "-f", "0",
                "-N", "1e3", "--csv", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_uncovered_exits_two(self, capsys, tmp_path):
        strat = tmp_path / "short.txt"
        strat.write_text("1:1.0 2:1.0\n")
        code, out, _ = run(
            capsys,
            "simulate", "-m", "2", "-k", "1", "-f", "0", "-N", "1e3",
            "--strategy", str(strat),
        )
        assert code == 2
        assert json.loads(out)["covered"] is False


class TestRefute:
    def test_certificate_exits_zero(self, capsys, tmp_path):
        trace = tmp_path / "trace.csv"
        code, out, _ = run(
            capsys,
            "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "9.5",
            "-N", "1e3", "--trace", str(trace),
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "certificate"
        lines = trace.read_text().splitlines()
        assert lines[0] == "# raysearch trace v1"
        assert len(lines) > 2

    def test_failure_exits_two(self, capsys):
        code, out, _ = run(
            capsys,
            "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "8.0", "-N", "1e3",
        )
        assert code == 2
        doc = json.loads(out)
        assert doc["kind"] == "coverage_failure"
        assert 1.0 <= doc["witness"]["point"] <= 1e3

    def test_auto_horizon(self, capsys):
        code, out, _ = run(
            capsys,
            "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "8.0",
            "--auto-horizon", "-C", "16",
        )
        assert code == 2
        assert json.loads(out)["kind"] == "coverage_failure"

    def test_assignment_csv(self, capsys, tmp_path):
        path = tmp_path / "assigned.csv"
        code, _, _ = run(
            capsys,
            "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "9.5",
            "-N", "1e3", "--assignment", str(path),
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "# raysearch assignment v1"
        assert lines[1] == "robot,round,t_prime,t"

    def test_gap_detector(self, capsys):
        code, out, _ = run(
            capsys,
            "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "9.5",
            "-N", "1e3", "--gap-constant", "100.0",
        )
        assert code == 0
        assert json.loads(out)["gap"]["case"] == 1

    def test_missing_horizon_is_usage_error(self, capsys):
        code, _, err = run(capsys, "refute", "-m", "2", "-k", "1", "-f", "0", "--lam", "9.5")
        assert code == 1
        assert "auto-horizon" in err


class TestUsage:
    def test_unknown_command_exits_one(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_bad_flag_exits_one(self):
        with pytest.raises(SystemExit) as exc:
            main(["bound", "--no-such-flag"])
        assert exc.value.code == 1
