"""JSON and CSV serialization shared by the CLI and the HTTP service.

Specs parse from plain dicts (the config-file schema documented in the
README); results serialize to dicts that re-parse with value equality.
Priors accept either a two-element [alpha, beta] array or an
{"alpha": ..., "beta": ...} object.
"""

from __future__ import annotations

import csv
import io
from typing import Any

from .betadist import ArmData, BetaParams
from .decision import Decision, DecisionInputs, DecisionReport
from .frequentist import FreqDesign, FreqMethod
from .oc import OcResult, OcScenario
from .samplesize import DesignSpec, SampleSizeResult, SearchMethod

SCHEMA_VERSION = "1"


class ConfigError(ValueError):
    """A config document is structurally invalid (missing/unknown/ill-typed fields)."""


def _require(data: dict, field: str):
    if field not in data:
        raise ConfigError(f"missing required field '{field}'")
    return data[field]


def _number(data: dict, field: str, default=None) -> float:
    value = data.get(field, default)
    if value is None:
        raise ConfigError(f"missing required field '{field}'")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{field}' must be a number, got {value!r}")
    return float(value)


def _integer(data: dict, field: str, default=None) -> int:
    value = data.get(field, default)
    if value is None:
        raise ConfigError(f"missing required field '{field}'")
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{field}' must be an integer, got {value!r}")
    return value


def prior_from_value(value: Any, field: str) -> BetaParams:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        alpha, beta = value
    elif isinstance(value, dict) and set(value) >= {"alpha", "beta"}:
        alpha, beta = value["alpha"], value["beta"]
    else:
        raise ConfigError(
            f"field '{field}' must be [alpha, beta] or {{'alpha': .., 'beta': ..}}, "
            f"got {value!r}"
        )
    for part in (alpha, beta):
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise ConfigError(f"field '{field}' components must be numbers, got {part!r}")
    return BetaParams(float(alpha), float(beta))


def prior_to_dict(p: BetaParams) -> dict:
    return {"alpha": p.alpha, "beta": p.beta}


def arm_from_value(value: Any, field: str) -> ArmData:
    if not (isinstance(value, dict) and set(value) >= {"n", "responders"}):
        raise ConfigError(
            f"field '{field}' must be {{'n': .., 'responders': ..}}, got {value!r}"
        )
    return ArmData(_integer(value, "n"), _integer(value, "responders"))


def design_spec_from_dict(data: dict) -> DesignSpec:
    return DesignSpec(
        prior_a=prior_from_value(_require(data, "prior_a"), "prior_a"),
        prior_b=prior_from_value(_require(data, "prior_b"), "prior_b"),
        expected_rate_a=_number(data, "expected_rate_a"),
        expected_rate_b=_number(data, "expected_rate_b"),
        margin=_number(data, "margin"),
        ambiguity_weight=_number(data, "ambiguity_weight"),
        design_threshold=_number(data, "design_threshold"),
        decision_threshold=_number(data, "decision_threshold", 0.90),
        n_lo=_integer(data, "n_lo", 10),
        n_hi=_integer(data, "n_hi", 1000),
        replicates=_integer(data, "replicates", 100_000),
        seed=_integer(data, "seed", 20240),
    )


def design_spec_to_dict(spec: DesignSpec) -> dict:
    return {
        "prior_a": prior_to_dict(spec.prior_a),
        "prior_b": prior_to_dict(spec.prior_b),
        "expected_rate_a": spec.expected_rate_a,
        "expected_rate_b": spec.expected_rate_b,
        "margin": spec.margin,
        "ambiguity_weight": spec.ambiguity_weight,
        "design_threshold": spec.design_threshold,
        "decision_threshold": spec.decision_threshold,
        "n_lo": spec.n_lo,
        "n_hi": spec.n_hi,
        "replicates": spec.replicates,
        "seed": spec.seed,
    }


def decision_inputs_from_dict(data: dict) -> DecisionInputs:
    return DecisionInputs(
        prior_a=prior_from_value(_require(data, "prior_a"), "prior_a"),
        prior_b=prior_from_value(_require(data, "prior_b"), "prior_b"),
        data_a=arm_from_value(_require(data, "data_a"), "data_a"),
        data_b=arm_from_value(_require(data, "data_b"), "data_b"),
        margin=_number(data, "margin"),
        ambiguity_weight=_number(data, "ambiguity_weight"),
        decision_threshold=_number(data, "decision_threshold", 0.90),
    )


def decision_inputs_to_dict(inputs: DecisionInputs) -> dict:
    return {
        "prior_a": prior_to_dict(inputs.prior_a),
        "prior_b": prior_to_dict(inputs.prior_b),
        "data_a": {"n": inputs.data_a.n, "responders": inputs.data_a.responders},
        "data_b": {"n": inputs.data_b.n, "responders": inputs.data_b.responders},
        "margin": inputs.margin,
        "ambiguity_weight": inputs.ambiguity_weight,
        "decision_threshold": inputs.decision_threshold,
    }


def oc_scenario_from_dict(data: dict) -> OcScenario:
    label = data.get("label", "")
    if not isinstance(label, str):
        raise ConfigError(f"field 'label' must be a string, got {label!r}")
    note = data.get("note", "")
    if not isinstance(note, str):
        raise ConfigError(f"field 'note' must be a string, got {note!r}")
    return OcScenario(
        label=label,
        true_rate_a=_number(data, "true_rate_a"),
        true_rate_b=_number(data, "true_rate_b"),
        prior_a=prior_from_value(_require(data, "prior_a"), "prior_a"),
        prior_b=prior_from_value(_require(data, "prior_b"), "prior_b"),
        margin=_number(data, "margin"),
        ambiguity_weight=_number(data, "ambiguity_weight"),
        n_per_arm=_integer(data, "n_per_arm"),
        decision_threshold=_number(data, "decision_threshold", 0.90),
        replicates=_integer(data, "replicates", 100_000),
        seed=_integer(data, "seed", 20240),
        note=note,
    )


def oc_scenario_to_dict(scenario: OcScenario) -> dict:
    return {
        "label": scenario.label,
        "true_rate_a": scenario.true_rate_a,
        "true_rate_b": scenario.true_rate_b,
        "prior_a": prior_to_dict(scenario.prior_a),
        "prior_b": prior_to_dict(scenario.prior_b),
        "margin": scenario.margin,
        "ambiguity_weight": scenario.ambiguity_weight,
        "n_per_arm": scenario.n_per_arm,
        "decision_threshold": scenario.decision_threshold,
        "replicates": scenario.replicates,
        "seed": scenario.seed,
        "note": scenario.note,
    }


def freq_design_from_dict(data: dict) -> FreqDesign:
    method_raw = data.get("method", FreqMethod.EXACT.value)
    try:
        method = FreqMethod(method_raw)
    except ValueError:
        raise ConfigError(
            f"field 'method' must be one of {[m.value for m in FreqMethod]}, got {method_raw!r}"
        ) from None
    return FreqDesign(
        true_rate_a=_number(data, "true_rate_a"),
        true_rate_b=_number(data, "true_rate_b"),
        margin=_number(data, "margin"),
        ambiguity_weight=_number(data, "ambiguity_weight"),
        threshold=_number(data, "threshold"),
        method=method,
        n_lo=_integer(data, "n_lo", 10),
        n_hi=_integer(data, "n_hi", 1000),
    )


def freq_design_to_dict(design: FreqDesign) -> dict:
    return {
        "true_rate_a": design.true_rate_a,
        "true_rate_b": design.true_rate_b,
        "margin": design.margin,
        "ambiguity_weight": design.ambiguity_weight,
        "threshold": design.threshold,
        "method": design.method.value,
        "n_lo": design.n_lo,
        "n_hi": design.n_hi,
    }


def sample_size_result_to_dict(result: SampleSizeResult) -> dict:
    return {
        "method": result.method.value,
        "n_min": result.n_min,
        "under_lower_bound": result.under_lower_bound,
        "threshold": result.threshold,
        "curve": [[n, value] for n, value in result.curve],
    }


def sample_size_result_from_dict(data: dict) -> SampleSizeResult:
    return SampleSizeResult(
        method=SearchMethod(_require(data, "method")),
        n_min=data.get("n_min"),
        under_lower_bound=bool(_require(data, "under_lower_bound")),
        threshold=_number(data, "threshold"),
        curve=tuple((int(n), float(v)) for n, v in _require(data, "curve")),
    )


def decision_report_to_dict(report: DecisionReport) -> dict:
    return {
        "p_correct": report.p_correct,
        "p_ambiguous": report.p_ambiguous,
        "p_below": report.p_below,
        "lambda_star": report.lambda_star,
        "decision": report.decision.value,
        "posterior_a": prior_to_dict(report.posterior_a),
        "posterior_b": prior_to_dict(report.posterior_b),
    }


def decision_report_from_dict(data: dict) -> DecisionReport:
    return DecisionReport(
        p_correct=_number(data, "p_correct"),
        p_ambiguous=_number(data, "p_ambiguous"),
        p_below=_number(data, "p_below"),
        lambda_star=_number(data, "lambda_star"),
        decision=Decision(_require(data, "decision")),
        posterior_a=prior_from_value(_require(data, "posterior_a"), "posterior_a"),
        posterior_b=prior_from_value(_require(data, "posterior_b"), "posterior_b"),
    )


def oc_result_to_dict(result: OcResult) -> dict:
    return {
        "xi": result.xi,
        "nu": result.nu,
        "mc_standard_error": result.mc_standard_error,
        "replicates_used": result.replicates_used,
    }


def oc_result_from_dict(data: dict) -> OcResult:
    return OcResult(
        xi=_number(data, "xi"),
        nu=_number(data, "nu"),
        mc_standard_error=_number(data, "mc_standard_error"),
        replicates_used=_integer(data, "replicates_used"),
    )


SAMPLE_SIZE_CSV_COLUMNS = ("method", "n_min", "under_lower_bound", "threshold")
CURVE_CSV_COLUMNS = ("n", "value")
DECISION_CSV_COLUMNS = (
    "p_correct",
    "p_ambiguous",
    "p_below",
    "lambda_star",
    "decision",
    "posterior_a_alpha",
    "posterior_a_beta",
    "posterior_b_alpha",
    "posterior_b_beta",
)


def sample_size_result_to_csv(result: SampleSizeResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SAMPLE_SIZE_CSV_COLUMNS)
    writer.writerow(
        [
            result.method.value,
            "" if result.n_min is None else result.n_min,
            result.under_lower_bound,
            repr(result.threshold),
        ]
    )
    return buffer.getvalue()


def curve_to_csv(curve) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CURVE_CSV_COLUMNS)
    for n, value in curve:
        writer.writerow([n, repr(value)])
    return buffer.getvalue()


def decision_report_to_csv(report: DecisionReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(DECISION_CSV_COLUMNS)
    writer.writerow(
        [
            repr(report.p_correct),
            repr(report.p_ambiguous),
            repr(report.p_below),
            repr(report.lambda_star),
            report.decision.value,
            repr(report.posterior_a.alpha),
            repr(report.posterior_a.beta),
            repr(report.posterior_b.alpha),
            repr(report.posterior_b.beta),
        ]
    )
    return buffer.getvalue()
