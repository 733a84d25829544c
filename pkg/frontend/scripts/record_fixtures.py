"""Record real-server fixtures for the frontend tests.

The request bodies are written in exactly the shape the UI sends (every field
populated), so the fixture transport can match on the full serialized
request. The report fixture additionally asserts byte-identity between the
service text and the CLI's output for the same design.
"""

import contextlib
import io
import json
from pathlib import Path

from fastapi.testclient import TestClient

from selecta.cli import main as cli_main
from selecta.service import create_app

REPO_ROOT = Path(__file__).resolve().parents[2]

REFERENCE_DESIGN = {
    "prior_a": [1, 1],
    "prior_b": [1, 1],
    "expected_rate_a": 0.20,
    "expected_rate_b": 0.05,
    "margin": 0.05,
    "ambiguity_weight": 0,
    "design_threshold": 0.90,
    "decision_threshold": 0.90,
    "n_lo": 10,
    "n_hi": 200,
    "replicates": 100_000,
    "seed": 20240,
}

CASE_STUDY_DESIGN = {
    "prior_a": [1, 1],
    "prior_b": [26, 40],
    "expected_rate_a": 0.55,
    "expected_rate_b": 0.40,
    "margin": 0.10,
    "ambiguity_weight": 0.5,
    "design_threshold": 0.80,
    "decision_threshold": 0.90,
    "n_lo": 10,
    "n_hi": 200,
    "replicates": 100_000,
    "seed": 20240,
}

ANALYZE_VAGUE = {
    "prior_a": [1, 1],
    "prior_b": [1, 1],
    "data_a": {"n": 40, "responders": 22},
    "data_b": {"n": 40, "responders": 16},
    "margin": 0.10,
    "ambiguity_weight": 0.5,
    "decision_threshold": 0.90,
}

OC_SCENARIO = {
    "label": "scenario",
    "true_rate_a": 0.30,
    "true_rate_b": 0.15,
    "prior_a": [1, 1],
    "prior_b": [1, 1],
    "margin": 0.05,
    "ambiguity_weight": 0.5,
    "n_per_arm": 39,
    "decision_threshold": 0.90,
    "replicates": 10_000,
    "seed": 20240,
}


def main() -> None:
    client = TestClient(create_app())
    fixtures = {}

    def call(name, url, request, check):
        response = client.post(url, json=request)
        assert response.status_code == 200, f"{name}: {response.status_code} {response.text}"
        payload = response.json()
        check(payload["result"])
        fixtures[name] = {"request": request, "response": payload}
        return payload

    call(
        "sampleSizeReference",
        "/v1/sample-size",
        {**REFERENCE_DESIGN, "method": "deterministic"},
        lambda result: result["n_min"] == 53 or (_ for _ in ()).throw(AssertionError(result)),
    )
    call(
        "sampleSizeLooser",
        "/v1/sample-size",
        {**REFERENCE_DESIGN, "design_threshold": 0.80, "method": "deterministic"},
        lambda result: result["n_min"] == 33 or (_ for _ in ()).throw(AssertionError(result)),
    )
    call(
        "curveReference",
        "/v1/curve",
        {"spec": REFERENCE_DESIGN, "method": "deterministic", "n_from": 10, "n_to": 200},
        lambda result: len(result["points"]) == 191,
    )
    call(
        "curveLooser",
        "/v1/curve",
        {
            "spec": {**REFERENCE_DESIGN, "design_threshold": 0.80},
            "method": "deterministic",
            "n_from": 10,
            "n_to": 200,
        },
        lambda result: len(result["points"]) == 191,
    )
    call(
        "analyzeVague",
        "/v1/analyze",
        ANALYZE_VAGUE,
        lambda result: round(result["lambda_star"], 2) == 0.82
        or (_ for _ in ()).throw(AssertionError(result)),
    )
    call(
        "analyzeInformative",
        "/v1/analyze",
        {**ANALYZE_VAGUE, "prior_b": [26, 40]},
        lambda result: round(result["lambda_star"], 2) == 0.86
        or (_ for _ in ()).throw(AssertionError(result)),
    )
    call("ocInteractive", "/v1/oc", OC_SCENARIO, lambda result: result["replicates_used"] == 10_000)

    report_request = {
        "kind": "design",
        "template": "protocol",
        "method": "deterministic",
        "spec": CASE_STUDY_DESIGN,
    }
    payload = call(
        "reportProtocol",
        "/v1/report",
        report_request,
        lambda result: "20 patients per group" in result["text"],
    )
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli_main(
            ["report", "--config", str(REPO_ROOT / "configs" / "report_protocol_example.json")]
        )
    assert code == 0
    cli_text = buffer.getvalue()
    assert payload["result"]["text"] == cli_text, "service and CLI report text must match exactly"
    fixtures["reportProtocol"]["cliText"] = cli_text

    # the sample-size + curve pair for the case-study design backs the
    # report-panel test's design computation
    call(
        "sampleSizeCaseStudy",
        "/v1/sample-size",
        {**CASE_STUDY_DESIGN, "method": "deterministic"},
        lambda result: result["n_min"] == 20 or (_ for _ in ()).throw(AssertionError(result)),
    )
    call(
        "curveCaseStudy",
        "/v1/curve",
        {"spec": CASE_STUDY_DESIGN, "method": "deterministic", "n_from": 10, "n_to": 200},
        lambda result: len(result["points"]) == 191,
    )

    out = Path(__file__).resolve().parents[1] / "tests" / "fixtures.json"
    out.write_text(json.dumps(fixtures, indent=2) + "\n")
    print(f"wrote {len(fixtures)} fixtures to {out}")


if __name__ == "__main__":
    main()
