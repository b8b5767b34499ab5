import json

import pytest

from qverify.cli import (
    CACHE_ENV,
    EXIT_FAIL,
    EXIT_GUARD,
    EXIT_PASS,
    EXIT_USAGE,
    UsageError,
    main,
    parse_alpha,
)


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


class TestParseAlpha:
    def test_forms(self):
        assert parse_alpha("1,2,1", 3) == {1: 1, 2: 2, 3: 1}
        assert parse_alpha("1:2,3:1", 3) == {1: 2, 3: 1}
        assert parse_alpha("2beta+a1", 2) == {1: 3, 2: 2}

    def test_rejects(self):
        with pytest.raises(UsageError):
            parse_alpha("0,0", 2)
        with pytest.raises(UsageError):
            parse_alpha("a5", 2)


class TestExitCodes:
    def test_serre_pass(self, capsys):
        code, rep = run_json(capsys, "verify", "serre", "--type", "a2", "--cutoff", "4")
        assert code == EXIT_PASS
        assert all(r["status"] == "pass" for r in rep["results"])

    def test_serre_fail_carries_residual(self, capsys):
        code, rep = run_json(capsys, "verify", "serre", "--type", "a3-bad", "--cutoff", "5")
        assert code == EXIT_FAIL
        bad = [r for r in rep["results"] if r["status"] == "fail"]
        assert bad and "[E0,R2] coefficient on E3*E1*" in bad[0]["residual"]

    def test_usage(self, capsys):
        assert main(["verify", "serre", "--type", "nope"]) == EXIT_USAGE
        assert main(["lweight", "--type", "a2", "--a", "0"]) == EXIT_USAGE
        assert main(["verify", "bogus"]) == EXIT_USAGE
        capsys.readouterr()

    def test_strict_guard(self, capsys):
        assert main(["verify", "nat", "--n", "3", "--degree", "4", "--no-extras", "--strict"]) == EXIT_GUARD
        capsys.readouterr()


class TestOutputs:
    def test_character_table(self, capsys):
        assert main(["character", "--n", "2", "--vertex", "2", "--height", "2"]) == EXIT_PASS
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "weight\tcoefficient"
        assert "1,1\t1" in out and "1,0\t1" not in out

    def test_character_compare(self, capsys):
        assert main(["character", "--n", "2", "--vertex", "2", "--height", "4", "--compare"]) == EXIT_PASS
        capsys.readouterr()

    def test_lweight(self, capsys):
        code, _ = run_json(capsys, "lweight", "--type", "a2")
        assert code == EXIT_PASS

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert main(["verify", "klr", "--type", "a2", "--alpha", "1,1", "--products", "20", "--format", "json", "-o", str(out)]) == 0
        assert json.loads(out.read_text())["results"]

    def test_jobs_deterministic(self, capsys):
        argv = ["verify", "boson", "--type", "A2,C2", "--cutoff", "3", "--samples", "4", "--format", "json"]
        main(argv + ["--jobs", "1"])
        one = capsys.readouterr().out
        main(argv + ["--jobs", "2"])
        assert capsys.readouterr().out == one

    def test_merge(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["verify", "serre", "--type", "a2", "--cutoff", "3", "--format", "json", "-o", str(a)])
        main(["verify", "surjection", "--max-n", "3", "--format", "json", "-o", str(b)])
        assert main(["report", "merge", str(a), str(b)]) == EXIT_PASS
        merged = json.loads(capsys.readouterr().out)
        assert merged["summary"]["failed"] == 0 and merged["summary"]["passed"] > 0


class TestConfigAndCache:
    def test_config_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[qverify]\ncutoff = 3\n")
        code, rep = run_json(capsys, "verify", "serre", "--type", "a2", "--config", str(cfg))
        assert code == 0 and rep["config"]["cutoff"] == 3
        code, rep = run_json(capsys, "verify", "serre", "--type", "a2", "--config", str(cfg), "--cutoff", "4")
        assert rep["config"]["cutoff"] == 4

    def test_config_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[qverify]\nbogus = 1\n")
        assert main(["verify", "serre", "--type", "a2", "--config", str(cfg)]) == EXIT_USAGE
        capsys.readouterr()

    def test_cache_round_trip(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv(CACHE_ENV, str(tmp_path))
        argv = ["verify", "serre", "--type", "a2", "--cutoff", "3", "--format", "json"]
        main(argv)
        first = capsys.readouterr().out
        assert list(tmp_path.iterdir())
        main(argv)
        assert capsys.readouterr().out == first
