import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from selecta.cli import main as cli_main
from selecta.service import create_app

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


DESIGN_BODY = {
    "prior_a": [1, 1],
    "prior_b": [1, 1],
    "expected_rate_a": 0.20,
    "expected_rate_b": 0.05,
    "margin": 0.05,
    "ambiguity_weight": 0.0,
    "design_threshold": 0.90,
    "n_lo": 10,
    "n_hi": 200,
}

ANALYZE_BODY = {
    "prior_a": [1, 1],
    "prior_b": [1, 1],
    "data_a": {"n": 40, "responders": 22},
    "data_b": {"n": 40, "responders": 16},
    "margin": 0.10,
    "ambiguity_weight": 0.5,
    "decision_threshold": 0.90,
}


def test_sample_size_reference_case(client):
    response = client.post("/v1/sample-size", json={**DESIGN_BODY, "method": "deterministic"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["result"]["n_min"] == 53
    assert payload["schema_version"] == "1"
    assert payload["request"]["expected_rate_a"] == 0.20
    assert payload["elapsed_ms"] > 0


def test_sample_size_simulated_deterministic(client):
    body = {**DESIGN_BODY, "method": "simulated", "replicates": 5000, "seed": 7, "n_hi": 100}
    first = client.post("/v1/sample-size", json=body)
    second = client.post("/v1/sample-size", json=body)
    assert first.status_code == second.status_code == 200
    assert json.dumps(first.json()["result"]) == json.dumps(second.json()["result"])


def test_sample_size_validation_names_invariant(client):
    body = {**DESIGN_BODY, "expected_rate_a": 0.01}
    response = client.post("/v1/sample-size", json=body)
    assert response.status_code == 400
    assert "expected_rate_a" in response.json()["message"]


def test_analyze_case_study_values(client):
    response = client.post("/v1/analyze", json=ANALYZE_BODY)
    assert response.status_code == 200
    result = response.json()["result"]
    assert round(result["lambda_star"], 2) == 0.82
    assert result["posterior_a"] == {"alpha": 23.0, "beta": 19.0}
    assert result["posterior_b"] == {"alpha": 17.0, "beta": 25.0}

    informative = {**ANALYZE_BODY, "prior_b": [26, 40]}
    response = client.post("/v1/analyze", json=informative)
    assert round(response.json()["result"]["lambda_star"], 2) == 0.86


def test_analyze_rejects_overfull_arm(client):
    body = {**ANALYZE_BODY, "data_a": {"n": 40, "responders": 41}}
    response = client.post("/v1/analyze", json=body)
    assert response.status_code == 400


def test_curve_single_point(client):
    body = {"spec": DESIGN_BODY, "method": "deterministic", "n_from": 53, "n_to": 53}
    response = client.post("/v1/curve", json=body)
    assert response.status_code == 200
    points = response.json()["result"]["points"]
    assert len(points) == 1
    assert points[0][0] == 53


def test_oc_scenario_small(client):
    body = {
        "label": "demo",
        "true_rate_a": 0.30,
        "true_rate_b": 0.15,
        "prior_a": [1, 1],
        "prior_b": [1, 1],
        "margin": 0.05,
        "ambiguity_weight": 0.5,
        "n_per_arm": 39,
        "replicates": 5000,
        "seed": 3,
    }
    response = client.post("/v1/oc", json=body)
    assert response.status_code == 200
    result = response.json()["result"]
    assert result["xi"] + result["nu"] == 1.0
    assert result["replicates_used"] == 5000


def test_oc_over_ceiling_deferred(client, monkeypatch):
    monkeypatch.setenv("SELECTA_SERVICE_MAX_REPLICATES", "1000")
    body = {
        "label": "big",
        "true_rate_a": 0.30,
        "true_rate_b": 0.15,
        "prior_a": [1, 1],
        "prior_b": [1, 1],
        "margin": 0.05,
        "ambiguity_weight": 0.5,
        "n_per_arm": 39,
        "replicates": 5000,
    }
    response = client.post("/v1/oc", json=body)
    assert response.status_code == 202
    payload = response.json()
    assert payload["status"] == "deferred"
    assert "CLI" in payload["message"]


def test_freq_score_at_case_study_size(client):
    body = {
        "true_rate_a": 0.55,
        "true_rate_b": 0.40,
        "margin": 0.10,
        "ambiguity_weight": 0.5,
        "threshold": 0.80,
        "n": 40,
    }
    response = client.post("/v1/freq", json=body)
    assert response.status_code == 200
    assert abs(response.json()["result"]["lambda"] - 0.81) <= 0.01


def test_schema_served(client):
    response = client.get("/v1/schema")
    assert response.status_code == 200
    assert "openapi" in response.json()


def test_malformed_body_rejected(client):
    response = client.post("/v1/analyze", content=b"{not json")
    assert response.status_code == 400


def test_statelessness_under_request_permutation(client):
    bodies = [
        {**ANALYZE_BODY},
        {**ANALYZE_BODY, "prior_b": [26, 40]},
        {**ANALYZE_BODY, "data_b": {"n": 40, "responders": 14}},
    ]
    forward = [client.post("/v1/analyze", json=b).json()["result"] for b in bodies]
    backward = [client.post("/v1/analyze", json=b).json()["result"] for b in reversed(bodies)]
    assert forward == list(reversed(backward))


def test_report_matches_cli_byte_for_byte(client, capsys):
    config = json.loads((CONFIG_DIR / "report_protocol_example.json").read_text())
    response = client.post("/v1/report", json=config)
    assert response.status_code == 200
    service_text = response.json()["result"]["text"]

    code = cli_main(["report", "--config", str(CONFIG_DIR / "report_protocol_example.json")])
    assert code == 0
    cli_text = capsys.readouterr().out
    assert service_text == cli_text
