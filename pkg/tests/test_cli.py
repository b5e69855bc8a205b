import json

from blochtower.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestPrebloch:
    def test_q5(self, capsys):
        code, report = run_json(capsys, "prebloch", "--q", "5")
        assert code == 0
        assert report["schema"] == 1
        by_name = {c["name"]: c for c in report["checks"]}
        assert by_name["bloch_invariants"]["integral"] == {"factors": [3], "free_rank": 0}
        assert by_name["prebloch_invariants"]["odd"] == {"factors": [3], "free_rank": 0}

    def test_q4_even(self, capsys):
        code, report = run_json(capsys, "prebloch", "--q", "4")
        assert code == 0
        by_name = {c["name"]: c for c in report["checks"]}
        assert by_name["bloch_invariants"]["integral"] == {"factors": [5], "free_rank": 0}

    def test_extension_field_spelling(self, capsys):
        code, report = run_json(capsys, "prebloch", "--q", "3^2")
        assert code == 0
        assert report["config"]["q"] == "3^2"

    def test_invalid_q_exits_2(self, capsys):
        assert main(["prebloch", "--q", "1"]) == 2
        assert main(["prebloch", "--q", "6"]) == 2
        capsys.readouterr()

    def test_missing_argument_exits_2(self):
        assert main(["prebloch"]) == 2


class TestVerify:
    def test_all_pass_q7(self, capsys):
        code, report = run_json(capsys, "verify", "--q", "7", "--suite", "all")
        assert code == 0
        assert report["status"] == "ok"
        assert all(c["status"] == "pass" for c in report["checks"])

    def test_char3_constants(self, capsys):
        code, report = run_json(capsys, "verify", "--q", "9", "--suite", "constants")
        assert code == 0

    def test_lambda_sweep_q31(self, capsys):
        code, report = run_json(capsys, "verify", "--q", "31", "--suite", "lambda")
        assert code == 0
        assert report["checks"][0]["checked"] == 29 * 28

    def test_unknown_suite_exits_2(self):
        assert main(["verify", "--q", "5", "--suite", "bogus"]) == 2


class TestLaurentFuzz:
    def test_small_run(self, capsys):
        code, report = run_json(
            capsys, "laurent-fuzz", "--q", "5", "--precision", "24", "--samples", "40", "--seed", "0"
        )
        assert code == 0
        fuzz = next(c for c in report["checks"] if c["name"] == "specialization_fuzz")
        assert fuzz["failures"] == []
        assert fuzz["seed"] == 0

    def test_zero_samples_vacuous(self, capsys):
        code, report = run_json(capsys, "laurent-fuzz", "--q", "5", "--samples", "0")
        assert code == 0

    def test_even_q_rejected(self, capsys):
        assert main(["laurent-fuzz", "--q", "4"]) == 2
        capsys.readouterr()


class TestTower:
    def test_f5_two_levels(self, capsys):
        code, report = run_json(capsys, "tower", "--base", "5", "--levels", "2")
        assert code == 0
        deco = next(c for c in report["checks"] if c["name"] == "decomposition")
        assert deco["exponents"] == [2, 1]
        hypo = [c for c in report["checks"] if c["name"].startswith("hypothesis_")]
        assert len(hypo) == 6 and all(h["status"] == "verified" for h in hypo)
        census = next(c for c in report["checks"] if c["name"] == "eigenspace_census")
        assert census["status"] == "pass"

    def test_real_closed(self, capsys):
        code, report = run_json(capsys, "tower", "--base", "real-closed", "--levels", "2")
        assert code == 0
        deco = next(c for c in report["checks"] if c["name"] == "decomposition")
        assert all("invariants" not in s for s in deco["summands"])

    def test_zero_levels(self, capsys):
        code, report = run_json(capsys, "tower", "--base", "5", "--levels", "0")
        assert code == 0
        deco = next(c for c in report["checks"] if c["name"] == "decomposition")
        assert [s["kind"] for s in deco["summands"]] == ["K3ind-symbolic"]

    def test_even_base_flags_surjection(self, capsys):
        code, report = run_json(capsys, "tower", "--base", "2", "--levels", "1")
        assert code == 0  # reported, not an error
        deco = next(c for c in report["checks"] if c["name"] == "decomposition")
        assert deco["surjection_only"] is True


class TestReportContract:
    def strip_timing(self, report):
        return {k: v for k, v in report.items() if k != "timing"}

    def test_byte_determinism_modulo_timing(self, capsys):
        _, a = run_json(capsys, "laurent-fuzz", "--q", "5", "--samples", "20", "--seed", "42")
        _, b = run_json(capsys, "laurent-fuzz", "--q", "5", "--samples", "20", "--seed", "42")
        assert json.dumps(self.strip_timing(a)) == json.dumps(self.strip_timing(b))

    def test_tower_determinism(self, capsys):
        _, a = run_json(capsys, "tower", "--base", "5", "--levels", "2")
        _, b = run_json(capsys, "tower", "--base", "5", "--levels", "2")
        assert json.dumps(self.strip_timing(a)) == json.dumps(self.strip_timing(b))

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out = run(capsys, "prebloch", "--q", "5", "--out", str(path))
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["command"] == "prebloch"

    def test_text_format(self, capsys):
        code, out = run(capsys, "verify", "--q", "5", "--suite", "lambda", "--format", "text")
        assert code == 0
        assert "lambda_well_defined" in out

    def test_max_q_env(self, capsys, monkeypatch):
        monkeypatch.setenv("BLOCH_MAX_Q", "16")
        assert main(["prebloch", "--q", "17"]) == 2
        capsys.readouterr()

    def test_version_flag(self, capsys):
        assert main(["--version"]) == 0
        assert "blochtower" in capsys.readouterr().out
