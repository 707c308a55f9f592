import warnings

import numpy as np
import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from nearshift.runner import canonical_json
from nearshift.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def series_json(coeffs):
    return {
        "degree": len(coeffs) - 1,
        "coeffs": [[float(np.real(c)), float(np.imag(c))] for c in coeffs],
    }


Z2 = {"origin_multiplicity": 2, "zeros": [], "normalized": True}
Z1 = {"origin_multiplicity": 1, "zeros": [], "normalized": True}


class TestMeta:
    def test_health(self, client):
        doc = client.get("/health").json()
        assert doc["status"] == "ok"
        assert doc["schema_version"] == "1"

    def test_suites_listing(self, client):
        doc = client.get("/suites").json()
        assert "thm35" in doc["suites"]
        assert "all" in doc["suites"]


class TestDecompose:
    def test_round_trip_report(self, client):
        body = {"blaschke": Z2, "series": series_json([1, 1, 1, 1]), "degree": 8}
        resp = client.post("/decompose", json=body)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["aggregate_pass"] is True
        assert doc["schema_version"] == "1"
        check = doc["checks"][0]
        assert check["pass"] is True
        coords = doc["payload"]["coordinates"]["coords"]
        assert np.allclose(np.array(coords)[:2], [[[1, 0], [1, 0]], [[1, 0], [1, 0]]])

    def test_strict_truncation_is_numeric_error(self, client):
        body = {
            "blaschke": Z2,
            "series": series_json([1] * 9),
            "levels": 1,
            "strict": True,
        }
        resp = client.post("/decompose", json=body)
        assert resp.status_code == 500
        assert resp.json()["error"]["kind"] == "numeric"

    def test_nonstrict_truncation_reports_failure(self, client):
        body = {"blaschke": Z2, "series": series_json([1] * 9), "levels": 1}
        resp = client.post("/decompose", json=body)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["aggregate_pass"] is False
        assert "truncation" in doc["checks"][0]["details"]["warning"]


class TestNorms:
    def test_standard_norm(self, client):
        body = {"series": series_json([0, 0, 0, 1]), "variant": "alpha-standard", "alpha": 1.0}
        doc = client.post("/norms", json=body).json()
        assert doc["payload"]["norm"] == pytest.approx(2.0)
        assert doc["aggregate_pass"] is True

    def test_block_norm_requires_multiplier(self, client):
        body = {"series": series_json([1]), "variant": "wold-one", "alpha": 0.5}
        resp = client.post("/norms", json=body)
        assert resp.status_code == 400
        assert resp.json()["error"]["kind"] == "precondition"


class TestNearCheck:
    def test_shifted_span_answer_delivered(self, client):
        body = {
            "blaschke": Z1,
            "degree": 8,
            "generators": [series_json([0, 1])],
        }
        resp = client.post("/near-check", json=body)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["aggregate_pass"] is True  # the report itself is the answer
        details = doc["checks"][0]["details"]
        assert details["is_nearly_invariant"] is False
        assert details["preimage_dim"] == 1

    def test_example_block(self, client):
        body = {
            "blaschke": Z2,
            "degree": 32,
            "example": {"a": [0.5, 0.0], "m": 1, "levels": 3},
        }
        doc = client.post("/near-check", json=body).json()
        assert doc["checks"][0]["details"]["is_nearly_invariant"] is True

    def test_invalid_zero_rejected(self, client):
        bad = {"origin_multiplicity": 0, "zeros": [[1.5, 0.0]], "normalized": True}
        body = {"blaschke": bad, "degree": 8, "generators": [series_json([1])]}
        resp = client.post("/near-check", json=body)
        assert resp.status_code == 400
        assert resp.json()["error"]["kind"] == "precondition"


class TestFactorizeEndpoint:
    def test_expansive_batch(self, client):
        body = {
            "blaschke": Z2,
            "alpha": 0.5,
            "degree": 48,
            "levels": 6,
            "trials": 5,
            "seed": 3,
        }
        doc = client.post("/factorize", json=body).json()
        assert doc["aggregate_pass"] is True
        names = {c["name"] for c in doc["checks"]}
        assert names == {"reconstruction", "coefficient-bound", "norm-bound", "shift-invariance"}

    def test_rescaled_requires_radius(self, client):
        body = {"blaschke": Z2, "alpha": -1.0, "degree": 48, "trials": 2}
        resp = client.post("/factorize", json=body)
        assert resp.status_code == 400


class TestExampleEndpoint:
    def test_full_scenario(self, client):
        body = {"a": [0.5, 0.0], "m": 1, "levels": 3, "degree": 32}
        doc = client.post("/example-sec2", json=body).json()
        assert doc["aggregate_pass"] is True
        names = [c["name"] for c in doc["checks"]]
        assert "near-invariance" in names
        assert "inner-candidate-distance" in names


class TestVerifyEndpoint:
    def test_single_suite(self, client):
        body = {"suite": "wold", "blaschke": Z2, "degree": 48, "trials": 10}
        doc = client.post("/verify", json=body).json()
        assert doc["aggregate_pass"] is True

    def test_unknown_suite(self, client):
        resp = client.post("/verify", json={"suite": "nope"})
        assert resp.status_code == 400

    def test_determinism_modulo_timings(self, client):
        body = {"suite": "example", "trials": 5, "seed": 11}
        one = client.post("/verify", json=body).json()
        two = client.post("/verify", json=body).json()
        one.pop("timings")
        two.pop("timings")
        assert canonical_json(one) == canonical_json(two)
