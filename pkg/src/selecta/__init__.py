"""Bayesian treatment-selection design toolkit for two-arm phase II trials."""

from .betadist import ArmData, BetaParams, beta_cdf, beta_pdf, posterior_update
from .decision import (
    Decision,
    DecisionInputs,
    DecisionReport,
    analyze_trial,
    decide,
    lambda_star,
    prob_ambiguous,
    prob_correct,
)
from .frequentist import (
    FreqDesign,
    FreqMethod,
    lambda_freq,
    min_sample_size_freq,
    p_amb_exact,
    p_amb_normal,
    p_corr_exact,
    p_corr_normal,
)
from .oc import OcResult, OcScenario, estimate_nu, estimate_xi, run_scenario_grid
from .quadrature import IntegrationError, integrate
from .reports import ReportTemplate, TemplateMismatchError, generate_report_text
from .samplesize import (
    DesignSpec,
    NotAttainedError,
    SampleSizeResult,
    SearchMethod,
    expected_responders,
    lambda_bar_at_n,
    lambda_curve,
    lambda_star_at_n,
    min_sample_size_deterministic,
    min_sample_size_simulated,
)
from .streams import RngStream, beta_sample, binomial_sample

__version__ = "0.1.0"

__all__ = [
    "ArmData",
    "BetaParams",
    "Decision",
    "DecisionInputs",
    "DecisionReport",
    "DesignSpec",
    "FreqDesign",
    "FreqMethod",
    "IntegrationError",
    "NotAttainedError",
    "OcResult",
    "OcScenario",
    "ReportTemplate",
    "RngStream",
    "SampleSizeResult",
    "SearchMethod",
    "TemplateMismatchError",
    "analyze_trial",
    "beta_cdf",
    "beta_pdf",
    "beta_sample",
    "binomial_sample",
    "decide",
    "estimate_nu",
    "estimate_xi",
    "expected_responders",
    "generate_report_text",
    "integrate",
    "lambda_bar_at_n",
    "lambda_curve",
    "lambda_freq",
    "lambda_star",
    "lambda_star_at_n",
    "min_sample_size_deterministic",
    "min_sample_size_freq",
    "min_sample_size_simulated",
    "p_amb_exact",
    "p_amb_normal",
    "p_corr_exact",
    "p_corr_normal",
    "posterior_update",
    "prob_ambiguous",
    "prob_correct",
    "run_scenario_grid",
]
