"""
End-to-end tests for the kbip command line
"""

import json

import pytest

from kbip.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, RunConfig, main, run
from kbip.config import ConfigError


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep log files out of the real home directory."""
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    return home


def cli(*args):
    return main(["--no-progress", *args])


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


class TestColorAndVerify:
    def test_kp2_round_trip(self, tmp_path):
        cert = tmp_path / "k25.json"
        assert cli("color", "--target", "kp2", "--p", "5", "--out", str(cert)) == EXIT_OK
        payload = load(cert)
        assert (payload["n"], payload["num_colors"], payload["construction"]) == (25, 27, "kp2")
        assert len(payload["edges"]) == 625

        report = tmp_path / "report.json"
        assert cli("verify", "--cert", str(cert), "--out", str(report)) == EXIT_OK
        assert load(report)["acyclic"] is True
        assert load(report)["pairs_checked"] == 351

    def test_certificates_are_deterministic(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        cli("color", "--target", "kpp", "--p", "7", "--out", str(first))
        cli("--threads", "3", "color", "--target", "kpp", "--p", "7", "--out", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_kp2_certificates_are_deterministic(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        cli("color", "--target", "kp2", "--p", "5", "--out", str(first))
        cli("--threads", "2", "color", "--target", "kp2", "--p", "5", "--out", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_kpp_p3_uses_original_variant(self, tmp_path):
        cert = tmp_path / "k3.json"
        assert cli("color", "--target", "kpp", "--p", "3", "--out", str(cert)) == EXIT_OK
        assert load(cert)["construction"] == "kpp-original"
        assert cli("verify", "--cert", str(cert)) == EXIT_OK

    def test_uniform_kpp_p3_fails_verification(self, tmp_path):
        cert = tmp_path / "k3.json"
        cli("color", "--target", "kpp", "--p", "3", "--variant", "uniform", "--out", str(cert))
        assert cli("verify", "--cert", str(cert)) == EXIT_FAILURE

    def test_subcoloring(self, tmp_path):
        cert = tmp_path / "k24.json"
        assert cli("color", "--target", "kp2", "--p", "5", "--drop-top", "0", "--drop-bottom", "7",
                   "--out", str(cert)) == EXIT_OK
        payload = load(cert)
        assert (payload["n"], payload["num_colors"]) == (24, 27)
        assert cli("verify", "--cert", str(cert)) == EXIT_OK

    def test_kp2_p3_rejected_without_override(self, tmp_path):
        cert = tmp_path / "k9.json"
        assert cli("color", "--target", "kp2", "--p", "3", "--out", str(cert)) == EXIT_USAGE
        assert not cert.exists()

    def test_kp2_p3_with_override_fails_verification(self, tmp_path, capsys):
        cert = tmp_path / "k9.json"
        report = tmp_path / "report.json"
        assert cli("color", "--target", "kp2", "--p", "3", "--allow-p3", "--out", str(cert)) == EXIT_OK
        assert cli("verify", "--cert", str(cert), "--out", str(report)) == EXIT_FAILURE
        witness = load(report)["bichromatic_witness"]
        assert witness["colors"] == [0, 10]
        assert len(witness["edges"]) == 4
        assert "bichromatic cycle" in capsys.readouterr().out

    def test_improper_certificate(self, tmp_path):
        cert = tmp_path / "bad.json"
        cert.write_text(json.dumps({"n": 2, "num_colors": 2, "edges": [[0, 0, 0], [0, 1, 0], [1, 0, 1], [1, 1, 1]]}))
        assert cli("verify", "--cert", str(cert)) == EXIT_FAILURE

    def test_malformed_certificate(self, tmp_path):
        cert = tmp_path / "broken.json"
        cert.write_text("{not json")
        assert cli("verify", "--cert", str(cert)) == EXIT_USAGE

    def test_missing_certificate(self, tmp_path):
        assert cli("verify", "--cert", str(tmp_path / "absent.json")) == EXIT_USAGE

    @pytest.mark.parametrize("content", [
        b'{"n": 1, "num_colors": 1, "edges": [[0, 0, 0]], "note": "\xff"}',
        b'{"n": 1, "num_colors": 1, "edges": 5}',
        b'{"n": 2.9, "num_colors": 3, "edges": [[0, 0, 0.7]]}',
        b'{"n": 2, "num_colors": 3, "edges": ["000", "011", "102", "110"]}',
        b'{"n": 1000000000, "num_colors": 3, "edges": []}',
        b'{"n": 1, "num_colors": 1000000000, "edges": [[0, 0, 0]]}',
    ])
    def test_rejected_certificates_exit_with_usage(self, tmp_path, content):
        cert = tmp_path / "cert.json"
        cert.write_bytes(content)
        assert cli("verify", "--cert", str(cert)) == EXIT_USAGE

    def test_invalid_generator(self, tmp_path):
        assert cli("color", "--target", "kpp", "--p", "5", "--x", "4", "--out", str(tmp_path / "c.json")) == EXIT_USAGE


class TestFactorize:
    def test_cyclic_prime(self):
        assert cli("factorize", "--family", "cyclic", "--n", "7") == EXIT_OK

    def test_cyclic_composite(self, capsys):
        assert cli("factorize", "--family", "cyclic", "--n", "9", "--fast") == EXIT_FAILURE
        assert "(0,3)" in capsys.readouterr().out

    def test_p_squared_report(self, tmp_path):
        out = tmp_path / "fac.json"
        assert cli("factorize", "--family", "p_squared", "--p", "5", "--out", str(out)) == EXIT_OK
        payload = load(out)
        assert payload["p1f"]["pairs_checked"] == 300
        assert payload["factorization"]["n"] == 25

    def test_missing_size(self):
        assert cli("factorize", "--family", "cyclic") == EXIT_USAGE


class TestAnalyze:
    def test_survey(self, tmp_path):
        out = tmp_path / "cases.json"
        assert cli("analyze", "--p", "5", "--all", "--out", str(out)) == EXIT_OK
        reports = load(out)
        assert len(reports) == 25
        assert all(r["partition_ok"] for r in reports)

    def test_single_case(self, capsys):
        assert cli("analyze", "--p", "5", "--a", "1", "--b", "2") == EXIT_OK
        assert "t=3" in capsys.readouterr().out

    def test_p3_needs_override(self):
        assert cli("analyze", "--p", "3", "--all") == EXIT_USAGE

    def test_p3_with_override(self, tmp_path):
        out = tmp_path / "cases.json"
        assert cli("analyze", "--p", "3", "--all", "--allow-p3", "--out", str(out)) == EXIT_OK
        assert not all(r["partition_ok"] for r in load(out))

    def test_needs_case_selection(self):
        assert cli("analyze", "--p", "5") == EXIT_USAGE


class TestLowerBound:
    def test_four_colors(self, tmp_path, capsys):
        out = tmp_path / "lb.json"
        assert cli("lowerbound", "--n", "3", "--colors", "4", "--out", str(out)) == EXIT_OK
        assert load(out)["exists"] is False
        assert "no acyclic proper coloring" in capsys.readouterr().out

    def test_five_colors(self, tmp_path):
        out = tmp_path / "lb.json"
        assert cli("lowerbound", "--n", "3", "--colors", "5", "--out", str(out)) == EXIT_OK
        witness = load(out)["witness"]
        assert witness["num_colors"] == 5
        assert len(witness["edges"]) == 9

    def test_too_large(self):
        assert cli("lowerbound", "--n", "5", "--colors", "7") == EXIT_USAGE


class TestGlobalOptions:
    def test_argparse_errors(self):
        with pytest.raises(SystemExit) as info:
            main(["color"])
        assert info.value.code == 2

    def test_bad_thread_count(self, tmp_path):
        assert cli("--threads", "0", "color", "--target", "kpp", "--p", "5",
                   "--out", str(tmp_path / "c.json")) == EXIT_USAGE

    def test_bad_thread_environment(self, tmp_path, monkeypatch):
        cert = tmp_path / "c.json"
        cli("color", "--target", "kpp", "--p", "5", "--out", str(cert))
        monkeypatch.setenv("KBIP_THREADS", "many")
        assert cli("verify", "--cert", str(cert)) == EXIT_USAGE

    def test_config_file(self, tmp_path):
        settings = tmp_path / "settings.json"
        settings.write_text(json.dumps({"LOWER_BOUND_MAX_N": 2}))
        assert cli("--config", str(settings), "lowerbound", "--n", "3", "--colors", "5") == EXIT_USAGE

    def test_missing_config_file(self, tmp_path):
        assert cli("--config", str(tmp_path / "none.json"), "lowerbound", "--n", "2", "--colors", "3") == EXIT_USAGE

    def test_log_file_written(self, isolated_home):
        cli("lowerbound", "--n", "2", "--colors", "3")
        assert list((isolated_home / ".kbip" / "logs").glob("kbip_*.log"))

    def test_run_config_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(command="color", target="kpp").validate()
        assert run(RunConfig(command="lowerbound")) == EXIT_USAGE
