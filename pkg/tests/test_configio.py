import pytest

from selecta import configio
from selecta.betadist import ArmData, BetaParams
from selecta.configio import ConfigError
from selecta.decision import Decision, DecisionReport
from selecta.frequentist import FreqMethod
from selecta.oc import OcResult
from selecta.samplesize import SampleSizeResult, SearchMethod


DESIGN_DICT = {
    "prior_a": [1, 1],
    "prior_b": {"alpha": 26, "beta": 40},
    "expected_rate_a": 0.55,
    "expected_rate_b": 0.40,
    "margin": 0.10,
    "ambiguity_weight": 0.5,
    "design_threshold": 0.80,
}


def test_design_spec_round_trip():
    spec = configio.design_spec_from_dict(DESIGN_DICT)
    assert spec.prior_b == BetaParams(26, 40)
    assert spec.n_hi == 1000  # default applied
    again = configio.design_spec_from_dict(configio.design_spec_to_dict(spec))
    assert again == spec


def test_decision_inputs_round_trip():
    data = {
        "prior_a": [1, 1],
        "prior_b": [1, 1],
        "data_a": {"n": 40, "responders": 22},
        "data_b": {"n": 40, "responders": 16},
        "margin": 0.10,
        "ambiguity_weight": 0.5,
    }
    inputs = configio.decision_inputs_from_dict(data)
    assert inputs.data_a == ArmData(40, 22)
    assert inputs.decision_threshold == 0.90
    again = configio.decision_inputs_from_dict(configio.decision_inputs_to_dict(inputs))
    assert again == inputs


def test_oc_scenario_round_trip():
    data = {
        "label": "demo",
        "true_rate_a": 0.3,
        "true_rate_b": 0.3,
        "prior_a": [5, 5],
        "prior_b": [4, 6],
        "margin": 0.05,
        "ambiguity_weight": 0.5,
        "n_per_arm": 39,
        "note": "kept as-is",
    }
    scenario = configio.oc_scenario_from_dict(data)
    assert scenario.note == "kept as-is"
    again = configio.oc_scenario_from_dict(configio.oc_scenario_to_dict(scenario))
    assert again == scenario


def test_freq_design_round_trip():
    data = {
        "true_rate_a": 0.55,
        "true_rate_b": 0.40,
        "margin": 0.10,
        "ambiguity_weight": 0.5,
        "threshold": 0.80,
        "method": "normal_approx",
    }
    design = configio.freq_design_from_dict(data)
    assert design.method == FreqMethod.NORMAL_APPROX
    again = configio.freq_design_from_dict(configio.freq_design_to_dict(design))
    assert again == design


def test_sample_size_result_round_trip():
    result = SampleSizeResult(
        method=SearchMethod.DETERMINISTIC,
        n_min=53,
        under_lower_bound=False,
        threshold=0.9,
        curve=((52, 0.89), (53, 0.91)),
    )
    again = configio.sample_size_result_from_dict(configio.sample_size_result_to_dict(result))
    assert again == result


def test_decision_report_round_trip():
    report = DecisionReport(
        p_correct=0.64,
        p_ambiguous=0.35,
        p_below=0.01,
        lambda_star=0.82,
        decision=Decision.CONSIDER_OTHER_FACTORS,
        posterior_a=BetaParams(23, 19),
        posterior_b=BetaParams(17, 25),
    )
    again = configio.decision_report_from_dict(configio.decision_report_to_dict(report))
    assert again == report


def test_oc_result_round_trip():
    result = OcResult(xi=0.546, nu=0.454, mc_standard_error=0.0016, replicates_used=100_000)
    again = configio.oc_result_from_dict(configio.oc_result_to_dict(result))
    assert again == result


def test_missing_field_names_the_field():
    with pytest.raises(ConfigError, match="margin"):
        configio.design_spec_from_dict({k: v for k, v in DESIGN_DICT.items() if k != "margin"})


def test_bad_prior_shape_reported():
    with pytest.raises(ConfigError, match="prior_a"):
        configio.design_spec_from_dict({**DESIGN_DICT, "prior_a": [1, 2, 3]})


def test_bad_number_type_reported():
    with pytest.raises(ConfigError, match="margin"):
        configio.design_spec_from_dict({**DESIGN_DICT, "margin": "wide"})


def test_bad_integer_reported():
    with pytest.raises(ConfigError, match="n_hi"):
        configio.design_spec_from_dict({**DESIGN_DICT, "n_hi": 99.5})


def test_unknown_freq_method_reported():
    with pytest.raises(ConfigError, match="method"):
        configio.freq_design_from_dict(
            {
                "true_rate_a": 0.5,
                "true_rate_b": 0.4,
                "margin": 0.1,
                "ambiguity_weight": 0.5,
                "threshold": 0.8,
                "method": "dartboard",
            }
        )
