import json
from pathlib import Path

import pytest

from selecta import configio
from selecta.betadist import BetaParams
from selecta.cli import main
from selecta.samplesize import DesignSpec, SearchMethod, min_sample_size_deterministic

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sample_size_reference_case_json(capsys):
    code, out, err = run_cli(
        capsys, "sample-size", "--config", str(CONFIG_DIR / "table1_example.json")
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["n_min"] == 53
    assert payload["schema_version"] == "1"
    assert payload["spec"]["expected_rate_a"] == 0.20


def test_sample_size_output_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "sample-size", "--config", str(CONFIG_DIR / "table1_example.json")
    )
    assert code == 0
    result = configio.sample_size_result_from_dict(json.loads(out)["result"])
    spec = configio.design_spec_from_dict(json.loads(out)["spec"])
    assert result == min_sample_size_deterministic(spec)


def test_cli_matches_library_bit_for_bit(capsys):
    code, out, _ = run_cli(
        capsys, "sample-size", "--config", str(CONFIG_DIR / "table1_example.json")
    )
    direct = min_sample_size_deterministic(
        DesignSpec(
            prior_a=BetaParams(1, 1),
            prior_b=BetaParams(1, 1),
            expected_rate_a=0.20,
            expected_rate_b=0.05,
            margin=0.05,
            ambiguity_weight=0.0,
            design_threshold=0.90,
            n_lo=10,
            n_hi=200,
        )
    )
    payload = json.loads(out)["result"]
    assert payload["n_min"] == direct.n_min
    assert payload["curve"] == [[n, v] for n, v in direct.curve]


def test_analyze_text_output(capsys):
    code, out, _ = run_cli(
        capsys,
        "analyze",
        "--config",
        str(CONFIG_DIR / "table5_analyze_vague.json"),
        "--output",
        "text",
    )
    assert code == 0
    assert "lambda_star: 0.82" in out
    assert "decision: consider other factors" in out


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run_cli(capsys, "analyze", "--config", str(bad))
    assert code == 2
    assert out == ""
    assert json.loads(err)["error"] == "config"


def test_domain_error_exits_3(tmp_path, capsys):
    config = tmp_path / "domain.json"
    config.write_text(
        json.dumps(
            {
                "prior_a": [1, 1],
                "prior_b": [1, 1],
                "expected_rate_a": 0.05,
                "expected_rate_b": 0.20,
                "margin": 0.05,
                "ambiguity_weight": 0.0,
                "design_threshold": 0.9,
            }
        )
    )
    code, out, err = run_cli(capsys, "sample-size", "--config", str(config))
    assert code == 3
    assert json.loads(err)["error"] == "domain"


def test_not_attained_exits_4(tmp_path, capsys):
    config = tmp_path / "na.json"
    config.write_text(
        json.dumps(
            {
                "prior_a": [1, 1],
                "prior_b": [1, 1],
                "expected_rate_a": 0.21,
                "expected_rate_b": 0.20,
                "margin": 0.05,
                "ambiguity_weight": 0.0,
                "design_threshold": 0.9,
                "n_hi": 30,
            }
        )
    )
    code, out, err = run_cli(capsys, "sample-size", "--config", str(config))
    assert code == 4
    assert json.loads(err)["error"] == "not_attained"


def test_out_file_and_quiet(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out, _ = run_cli(
        capsys,
        "analyze",
        "--config",
        str(CONFIG_DIR / "table5_analyze_vague.json"),
        "--out",
        str(target),
        "--quiet",
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["result"]["lambda_star"] == pytest.approx(0.823, abs=5e-4)


def test_input_config_not_mutated(capsys):
    path = CONFIG_DIR / "table5_analyze_vague.json"
    before = path.read_bytes()
    run_cli(capsys, "analyze", "--config", str(path))
    assert path.read_bytes() == before


def test_freq_design_score_at_n(capsys):
    code, out, _ = run_cli(
        capsys, "freq-design", "--config", str(CONFIG_DIR / "table5_freq.json")
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["n"] == 40
    assert abs(payload["result"]["lambda"] - 0.81) <= 0.01


def test_curve_single_point(tmp_path, capsys):
    config = tmp_path / "curve.json"
    config.write_text(
        json.dumps(
            {
                "spec": json.loads((CONFIG_DIR / "table1_example.json").read_text()),
                "method": "deterministic",
                "n_from": 53,
                "n_to": 53,
            }
        )
    )
    code, out, _ = run_cli(capsys, "curve", "--config", str(config), "--output", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,value"
    assert len(lines) == 2
    assert lines[1].startswith("53,")


def test_oc_sim_csv_with_replicate_override(tmp_path, capsys):
    config = tmp_path / "oc.json"
    config.write_text(
        json.dumps(
            {
                "scenarios": [
                    {
                        "label": "demo",
                        "true_rate_a": 0.3,
                        "true_rate_b": 0.15,
                        "prior_a": [1, 1],
                        "prior_b": [1, 1],
                        "margin": 0.05,
                        "ambiguity_weight": 0.5,
                        "n_per_arm": 39,
                    }
                ]
            }
        )
    )
    code, out, _ = run_cli(
        capsys, "oc-sim", "--config", str(config), "--output", "csv", "--m", "2000"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "label,n,xi,nu,se,m,seed"
    assert lines[1].split(",")[5] == "2000"


def test_report_command_deterministic(capsys):
    code1, out1, _ = run_cli(
        capsys, "report", "--config", str(CONFIG_DIR / "report_protocol_example.json")
    )
    code2, out2, _ = run_cli(
        capsys, "report", "--config", str(CONFIG_DIR / "report_protocol_example.json")
    )
    assert code1 == code2 == 0
    assert out1 == out2
    assert "20 patients per group" in out1


def test_sample_size_sim_runs(tmp_path, capsys):
    config = tmp_path / "sim.json"
    config.write_text(
        json.dumps(
            {
                "prior_a": [1, 1],
                "prior_b": [1, 1],
                "expected_rate_a": 0.20,
                "expected_rate_b": 0.05,
                "margin": 0.05,
                "ambiguity_weight": 0.0,
                "design_threshold": 0.90,
                "n_hi": 100,
                "replicates": 5000,
                "seed": 11,
            }
        )
    )
    code, out, _ = run_cli(capsys, "sample-size-sim", "--config", str(config))
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["method"] == SearchMethod.SIMULATED.value
    assert isinstance(payload["result"]["n_min"], int)
