import json

import numpy as np
import pytest

from nearshift.cli import main


def series_json(coeffs):
    return {
        "degree": len(coeffs) - 1,
        "coeffs": [[float(np.real(c)), float(np.imag(c))] for c in coeffs],
    }


Z2 = '{"origin_multiplicity": 2, "zeros": []}'
Z1 = '{"origin_multiplicity": 1, "zeros": []}'


def run(tmp_path, args):
    out = tmp_path / "report.json"
    code = main(args + ["--out", str(out)])
    return code, json.loads(out.read_text())


class TestCommands:
    def test_suites_listing(self, tmp_path):
        code, doc = run(tmp_path, ["suites"])
        assert code == 0
        assert "thm39" in doc["suites"]

    def test_decompose(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text(json.dumps(series_json([1, 2, 3, 4])))
        code, doc = run(
            tmp_path, ["decompose", "--blaschke", Z2, "--input", str(f), "--degree", "8"]
        )
        assert code == 0
        assert doc["aggregate_pass"] is True
        coords = np.array(doc["payload"]["coordinates"]["coords"])
        assert np.allclose(coords[:2, :, 0], [[1, 2], [3, 4]])

    def test_norms(self, tmp_path):
        f = tmp_path / "f.json"
        f.write_text(json.dumps(series_json([0, 0, 0, 1])))
        code, doc = run(
            tmp_path, ["norms", "--input", str(f), "--alpha", "-1.0"]
        )
        assert code == 0
        assert doc["payload"]["norm"] == pytest.approx(0.5)

    def test_near_check_fail_report_exits_zero(self, tmp_path):
        gens = tmp_path / "gens.json"
        gens.write_text(json.dumps([series_json([0, 1])]))
        code, doc = run(
            tmp_path,
            ["near-check", "--blaschke", Z1, "--degree", "8", "--generators", str(gens)],
        )
        assert code == 0
        assert doc["checks"][0]["details"]["is_nearly_invariant"] is False

    def test_example_scenario(self, tmp_path):
        code, doc = run(
            tmp_path,
            ["example-sec2", "--a", "0.5", "--m", "1", "--degree", "32"],
        )
        assert code == 0
        assert doc["aggregate_pass"] is True
        assert {c["name"] for c in doc["checks"]} >= {
            "near-invariance",
            "defect-dimension",
            "sstar-invariance",
            "isometry-defect",
            "inner-candidate-distance",
        }

    def test_literal_example_fails_aggregate(self, tmp_path):
        code, doc = run(
            tmp_path,
            ["example-sec2", "--a", "0.5", "--m", "1", "--degree", "32", "--literal"],
        )
        assert code == 1
        assert doc["aggregate_pass"] is False

    def test_verify_suite(self, tmp_path):
        code, doc = run(
            tmp_path,
            [
                "verify", "--suite", "wold", "--blaschke", Z2,
                "--alpha", "0", "--degree", "64", "--trials", "15",
            ],
        )
        assert code == 0
        assert doc["aggregate_pass"] is True

    def test_factorize(self, tmp_path):
        code, doc = run(
            tmp_path,
            [
                "factorize", "--blaschke", Z2, "--alpha", "0.5",
                "--degree", "48", "--levels", "6", "--trials", "3",
            ],
        )
        assert code == 0


class TestExitCodes:
    def test_bad_blaschke_literal(self, capsys):
        with pytest.raises(SystemExit):
            main(["near-check", "--blaschke", "{not json"])

    def test_invalid_zero_is_precondition(self, tmp_path):
        gens = tmp_path / "gens.json"
        gens.write_text(json.dumps([series_json([1])]))
        bad = '{"origin_multiplicity": 0, "zeros": [[1.5, 0]]}'
        code, doc = run(
            tmp_path,
            ["near-check", "--blaschke", bad, "--degree", "8", "--generators", str(gens)],
        )
        assert code == 2
        assert doc["error"]["kind"] == "precondition"

    def test_strict_truncation_is_numeric(self, tmp_path, monkeypatch):
        f = tmp_path / "f.json"
        f.write_text(json.dumps(series_json([1] * 9)))
        monkeypatch.setenv("NEARSHIFT_STRICT", "1")
        code, doc = run(
            tmp_path,
            ["decompose", "--blaschke", Z2, "--input", str(f), "--levels", "1"],
        )
        assert code == 3
        assert doc["error"]["kind"] == "numeric"

    def test_env_strict_off_reports_warning(self, tmp_path, monkeypatch):
        f = tmp_path / "f.json"
        f.write_text(json.dumps(series_json([1] * 9)))
        monkeypatch.delenv("NEARSHIFT_STRICT", raising=False)
        code, doc = run(
            tmp_path,
            ["decompose", "--blaschke", Z2, "--input", str(f), "--levels", "1"],
        )
        assert code == 1
        assert doc["aggregate_pass"] is False

    def test_missing_input_file(self, capsys):
        code = main(["decompose", "--blaschke", Z2, "--input", "/nonexistent.json"])
        assert code == 2


class TestDeterminism:
    def test_reports_byte_identical_modulo_timings(self, tmp_path):
        args = [
            "verify", "--suite", "lowerbound", "--blaschke", Z2,
            "--trials", "4", "--seed", "9",
        ]
        _, one = run(tmp_path, args)
        _, two = run(tmp_path, args)
        one.pop("timings")
        two.pop("timings")
        from nearshift.runner import canonical_json

        assert canonical_json(one) == canonical_json(two)
