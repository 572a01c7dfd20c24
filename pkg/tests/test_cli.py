import json

import pytest

from qfplab.cli import EXIT_CAPABILITY, EXIT_OK, EXIT_USAGE, main


def run_json(tmp_path, argv, name="out.json"):
    path = tmp_path / name
    code = main(argv + ["--out", str(path)])
    assert code == EXIT_OK
    return json.loads(path.read_text())


class TestSwapTest:
    def test_hadamard_report(self, tmp_path):
        report = run_json(tmp_path, [
            "swap-test", "--code", "hadamard", "--n", "4",
            "--x", "0101", "--y", "0110", "--trials", "100000", "--seed", "1",
        ])
        results = report["results"]
        assert results["analytic"]["p_one"] == pytest.approx(0.375, abs=1e-12)
        assert results["circuit_vs_analytic"] <= 1e-10
        assert results["sampled"]["trials"] == 100000
        assert report["version"]
        assert report["config"]["seed"] == 1

    def test_x_equals_y_all_paths_zero(self, tmp_path):
        report = run_json(tmp_path, [
            "swap-test", "--n", "3", "--x", "010", "--x-equals-y",
            "--trials", "5000",
        ])
        results = report["results"]
        assert results["analytic"]["p_one"] <= 1e-12
        assert results["circuit"]["p_one"] <= 1e-12
        assert results["sampled"]["p_one"] == 0.0

    def test_malformed_bits_exit_2(self, capsys):
        code = main(["swap-test", "--n", "4", "--x", "01a1", "--y", "0000"])
        assert code == EXIT_USAGE
        assert "--x" in capsys.readouterr().err

    def test_capability_guard_exit_3(self):
        code = main(["swap-test", "--n", "21", "--x", "0" * 21, "--x-equals-y"])
        assert code == EXIT_CAPABILITY


class TestPermTest:
    def test_k2_gamma0(self, tmp_path):
        report = run_json(tmp_path, ["perm-test", "--k", "2", "--gamma", "0"])
        results = report["results"]
        assert results["closed_form"] == pytest.approx(1 / 6, abs=1e-12)
        assert results["projection"] == pytest.approx(1 / 6, abs=1e-9)
        assert results["bounds"]["lower"] == pytest.approx(1 / 64)

    def test_k1_gamma_half(self, tmp_path):
        report = run_json(tmp_path, ["perm-test", "--k", "1", "--gamma", "0.5"])
        assert report["results"]["closed_form"] == pytest.approx(0.625, abs=1e-12)

    def test_k60_guard_skip_keeps_closed_form(self, tmp_path):
        report = run_json(tmp_path, ["perm-test", "--k", "60", "--gamma", "0.5"])
        results = report["results"]
        assert "skipped" in results["projection"]
        assert results["closed_form"] >= 0.0

    def test_gamma_out_of_range(self):
        assert main(["perm-test", "--k", "2", "--gamma", "1.5"]) == EXIT_USAGE


class TestSmpRun:
    ARGS = [
        "smp-run", "--protocol", "quantum", "--code", "hadamard", "--n", "6",
        "--k", "3", "--trials", "2000", "--pair-source", "forced-unequal",
        "--seed", "42",
    ]

    def test_report_contents(self, tmp_path):
        report = run_json(tmp_path, self.ARGS)
        results = report["results"]
        assert results["theory_error_bound"] == pytest.approx((5 / 8) ** 3)
        assert results["trials_unequal"] == 2000
        assert results["message_cost_summary"]["quantum_qubits"] == 3 * 7
        assert report["config"]["seed"] == 42

    def test_same_seed_byte_identical(self, tmp_path):
        main(self.ARGS + ["--out", str(tmp_path / "a.json")])
        main(self.ARGS + ["--out", str(tmp_path / "b.json")])
        assert (tmp_path / "a.json").read_bytes() == \
            (tmp_path / "b.json").read_bytes()

    def test_csv_projection(self, tmp_path):
        path = tmp_path / "run.csv"
        code = main(self.ARGS + ["--format", "csv", "--out", str(path)])
        assert code == EXIT_OK
        header, row = path.read_text().strip().split("\n")
        assert header.split(",")[0] == "protocol_id"
        assert row.split(",")[0] == "quantum"

    def test_adversarial_pairs(self, tmp_path):
        report = run_json(tmp_path, [
            "smp-run", "--protocol", "shared-key", "--n", "4", "--r", "2",
            "--trials", "100", "--pair-source", "adversarial-list",
            "--pair", "0000:1111", "--pair", "0000:0000",
        ])
        assert report["results"]["trials_equal"] == 50

    def test_unknown_protocol_exit_2(self):
        code = main(["smp-run", "--protocol", "psychic", "--n", "4",
                     "--trials", "10"])
        assert code == EXIT_USAGE

    def test_mixture_forced_equal(self, tmp_path):
        report = run_json(tmp_path, [
            "smp-run", "--protocol", "mixture", "--n", "4",
            "--trials", "2000", "--pair-source", "forced-equal",
        ])
        results = report["results"]
        assert results["theory_error_bound"] is None
        assert 0.8 <= results["empirical_error_equal"] <= 1.0


class TestNearset:
    def test_set_mode_audits(self, tmp_path):
        report = run_json(tmp_path, [
            "nearset", "--n", "6", "--delta", "0.25", "--seeds", "3",
            "--seed", "1",
        ])
        results = report["results"]
        assert results["required_dimension"] == 267
        assert len(results["audits"]) == 3
        for audit in results["audits"]:
            assert audit["total_pairs"] == 64 * 63 // 2

    def test_pair_mode(self, tmp_path):
        report = run_json(tmp_path, [
            "nearset", "--pair-mode", "--d", "800", "--delta", "0.1",
            "--pairs", "20000", "--seed", "5",
        ])
        audit = report["results"]["audit"]
        rate = audit["violating_pairs"] / audit["total_pairs"]
        assert rate <= audit["chernoff_bound"] + 0.01

    def test_delta_out_of_domain_exit_2(self):
        assert main(["nearset", "--n", "4", "--delta", "1.5"]) == EXIT_USAGE

    def test_gram_report(self, tmp_path):
        report = run_json(tmp_path, [
            "nearset", "--n", "4", "--delta", "0.3", "--gram-size", "3",
        ])
        gram = report["results"]["gram"]
        assert gram["rank"] == 3


class TestCodesCommand:
    def test_certificate(self, tmp_path):
        report = run_json(tmp_path, ["codes", "--code", "hadamard", "--n", "4"])
        cert = report["results"]["certificate"]
        assert cert["min_distance"] == 8
        assert cert["max_agreement"] == "1/2"
        assert report["results"]["qubits_required"] == 5

    def test_missing_subcommand_exit_2(self):
        assert main([]) == EXIT_USAGE

    def test_version_flag(self):
        assert main(["--version"]) == EXIT_OK
