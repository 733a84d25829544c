"""Protocol, SAP and summary text generation.

Rendering is plain deterministic template substitution: identical inputs give
byte-identical text, every numeric placeholder is filled from the spec and
result, and probabilities appear at two decimals to match how designs are
reported.  The same functions back the command line and the HTTP service so
downloaded documents match CLI output exactly.
"""

from __future__ import annotations

import enum

from .decision import Decision, DecisionInputs, DecisionReport
from .oc import OcResult, OcScenario
from .samplesize import DesignSpec, SampleSizeResult, SearchMethod


class ReportTemplate(str, enum.Enum):
    PROTOCOL = "protocol"
    SAP = "sap"
    SUMMARY = "summary"


class TemplateMismatchError(TypeError):
    """The result type does not fit the requested template."""


def _fmt_prior(p) -> str:
    return f"Beta({_fmt_num(p.alpha)}, {_fmt_num(p.beta)})"


def _fmt_num(x: float) -> str:
    return f"{x:g}"


def _fmt_prob(x: float) -> str:
    return f"{x:.2f}"


def _method_phrase(method: SearchMethod) -> str:
    return {
        SearchMethod.DETERMINISTIC: "the deterministic plug-in score",
        SearchMethod.SIMULATED: "the simulation-averaged score",
        SearchMethod.FREQUENTIST: "the frequentist selection score",
    }[method]


def _n_min_phrase(result: SampleSizeResult) -> str:
    if result.under_lower_bound:
        return "fewer than the scanned lower bound (criterion already satisfied everywhere scanned)"
    return f"{result.n_min} patients per group"


def _design_protocol(spec: DesignSpec, result: SampleSizeResult) -> str:
    return (
        "Design summary (treatment selection, two-arm randomised phase II)\n"
        "\n"
        f"Patients are randomised 1:1 to arm A and arm B; {_n_min_phrase(result)} "
        "will be enrolled.\n"
        f"The anticipated response rates are {_fmt_num(spec.expected_rate_a)} on arm A and "
        f"{_fmt_num(spec.expected_rate_b)} on arm B, with a clinically meaningful "
        f"difference of {_fmt_num(spec.margin)}.\n"
        f"Prior beliefs about the response rates are encoded as {_fmt_prior(spec.prior_a)} "
        f"for arm A and {_fmt_prior(spec.prior_b)} for arm B.\n"
        f"The selection score is the posterior probability that arm A exceeds arm B by "
        f"more than {_fmt_num(spec.margin)}, plus {_fmt_num(spec.ambiguity_weight)} times "
        f"the posterior probability that the arms differ by at most {_fmt_num(spec.margin)}.\n"
        f"The sample size is the smallest per-group size at which "
        f"{_method_phrase(result.method)} exceeds {_fmt_prob(result.threshold)} at that "
        "size and at every larger size scanned.\n"
        "Decision rule at the final analysis: choose treatment A as optimal if the "
        f"selection score exceeds {_fmt_prob(spec.decision_threshold)}; otherwise consider "
        "other factors (toxicity, cost, ease of administration, quality of life) for "
        "choosing treatment A or B, whichever has better behaviour.\n"
    )


def _design_sap(spec: DesignSpec, result: SampleSizeResult) -> str:
    return (
        "Statistical analysis plan (treatment selection analysis)\n"
        "\n"
        "Primary endpoint: binary response, summarised per arm as responders out of "
        "patients treated.\n"
        f"Model: independent Beta priors {_fmt_prior(spec.prior_a)} (arm A) and "
        f"{_fmt_prior(spec.prior_b)} (arm B) are updated with the observed responder "
        "counts to give Beta posteriors for the true response rates.\n"
        "Analysis: compute the posterior probability that the arm-A rate exceeds the "
        f"arm-B rate by more than {_fmt_num(spec.margin)} and the posterior probability "
        f"that the rates differ by at most {_fmt_num(spec.margin)}; the selection score "
        f"adds {_fmt_num(spec.ambiguity_weight)} times the second to the first.\n"
        f"Decision: select arm A if the selection score exceeds "
        f"{_fmt_prob(spec.decision_threshold)}; otherwise the selection is referred to "
        "secondary factors.\n"
        f"Planned sample size: {_n_min_phrase(result)} (score threshold "
        f"{_fmt_prob(result.threshold)}, method: {result.method.value}).\n"
    )


def _analysis_summary(inputs: DecisionInputs, report: DecisionReport) -> str:
    decision_text = (
        "select treatment A"
        if report.decision == Decision.SELECT_A
        else "consider other factors"
    )
    return (
        "Analysis summary\n"
        "\n"
        f"Arm A: {inputs.data_a.responders}/{inputs.data_a.n} responders, prior "
        f"{_fmt_prior(inputs.prior_a)}, posterior {_fmt_prior(report.posterior_a)}.\n"
        f"Arm B: {inputs.data_b.responders}/{inputs.data_b.n} responders, prior "
        f"{_fmt_prior(inputs.prior_b)}, posterior {_fmt_prior(report.posterior_b)}.\n"
        f"Posterior probability of a difference above {_fmt_num(inputs.margin)}: "
        f"{_fmt_prob(report.p_correct)}.\n"
        f"Posterior probability of a difference within {_fmt_num(inputs.margin)}: "
        f"{_fmt_prob(report.p_ambiguous)}.\n"
        f"Selection score: {_fmt_prob(report.lambda_star)} against threshold "
        f"{_fmt_prob(inputs.decision_threshold)}.\n"
        f"Decision: {decision_text}.\n"
    )


def _oc_summary(scenario: OcScenario, result: OcResult) -> str:
    return (
        "Operating characteristics summary\n"
        "\n"
        f"Scenario: {scenario.label or 'unnamed'} with true response rates "
        f"{_fmt_num(scenario.true_rate_a)} (arm A) and {_fmt_num(scenario.true_rate_b)} "
        f"(arm B), {scenario.n_per_arm} patients per arm.\n"
        f"Priors: {_fmt_prior(scenario.prior_a)} (arm A), {_fmt_prior(scenario.prior_b)} "
        f"(arm B); margin {_fmt_num(scenario.margin)}; ambiguity weight "
        f"{_fmt_num(scenario.ambiguity_weight)}; decision threshold "
        f"{_fmt_prob(scenario.decision_threshold)}.\n"
        f"Across {result.replicates_used} simulated trials, {result.xi * 100:.1f}% were "
        f"decided on efficacy alone and {result.nu * 100:.1f}% deferred to secondary "
        f"factors (Monte-Carlo standard error {result.mc_standard_error * 100:.2f} "
        "percentage points).\n"
    )


def _design_summary(spec: DesignSpec, result: SampleSizeResult) -> str:
    return (
        "Sample size summary\n"
        "\n"
        f"Required size: {_n_min_phrase(result)} (method: {result.method.value}, "
        f"threshold {_fmt_prob(result.threshold)}).\n"
        f"Assumed response rates {_fmt_num(spec.expected_rate_a)} vs "
        f"{_fmt_num(spec.expected_rate_b)}; margin {_fmt_num(spec.margin)}; ambiguity "
        f"weight {_fmt_num(spec.ambiguity_weight)}; priors {_fmt_prior(spec.prior_a)} and "
        f"{_fmt_prior(spec.prior_b)}.\n"
    )


def generate_report_text(spec, result, template: ReportTemplate) -> str:
    """Render the report for (spec, result) under the chosen template.

    Template compatibility: protocol and sap need a design spec with a sample
    size result; summary also accepts an analysed trial or an operating
    characteristics run.
    """
    if template in (ReportTemplate.PROTOCOL, ReportTemplate.SAP):
        if not (isinstance(spec, DesignSpec) and isinstance(result, SampleSizeResult)):
            raise TemplateMismatchError(
                f"{template.value} template needs a design spec and a sample size result; "
                f"got {type(spec).__name__} and {type(result).__name__}"
            )
        renderer = _design_protocol if template == ReportTemplate.PROTOCOL else _design_sap
        return renderer(spec, result)
    if template == ReportTemplate.SUMMARY:
        if isinstance(spec, DesignSpec) and isinstance(result, SampleSizeResult):
            return _design_summary(spec, result)
        if isinstance(spec, DecisionInputs) and isinstance(result, DecisionReport):
            return _analysis_summary(spec, result)
        if isinstance(spec, OcScenario) and isinstance(result, OcResult):
            return _oc_summary(spec, result)
        raise TemplateMismatchError(
            f"summary template does not accept {type(spec).__name__} with "
            f"{type(result).__name__}"
        )
    raise TemplateMismatchError(f"unknown template: {template}")
