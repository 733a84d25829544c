"""Posterior selection probabilities and the trial decision rule.

Given independent Beta posteriors for the two arms, this module computes the
posterior probability that arm A beats arm B by more than the clinically
meaningful margin, the probability that the arms are within the margin of
each other, the composite selection score (correct-selection probability plus
a weighted share of the ambiguity probability), and the resulting categorical
decision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .betadist import (
    ArmData,
    BetaParams,
    _log_beta,
    posterior_update,
    regularized_incomplete_beta,
)
from .quadrature import DEFAULT_TOL, integrate_columns


class Decision(str, enum.Enum):
    SELECT_A = "select_a"
    CONSIDER_OTHER_FACTORS = "consider_other_factors"


@dataclass(frozen=True)
class DecisionInputs:
    """Everything needed to analyze a completed two-arm trial."""

    prior_a: BetaParams
    prior_b: BetaParams
    data_a: ArmData
    data_b: ArmData
    margin: float
    ambiguity_weight: float
    decision_threshold: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.margin < 1.0:
            raise ValueError(f"margin must lie in [0, 1), got {self.margin}")
        if not 0.0 <= self.ambiguity_weight <= 1.0:
            raise ValueError(
                f"ambiguity_weight must lie in [0, 1], got {self.ambiguity_weight}"
            )
        if not 0.0 < self.decision_threshold < 1.0:
            raise ValueError(
                f"decision_threshold must lie in (0, 1), got {self.decision_threshold}"
            )


@dataclass(frozen=True)
class DecisionReport:
    """Analysis output: posterior probabilities, selection score and decision."""

    p_correct: float
    p_ambiguous: float
    p_below: float
    lambda_star: float
    decision: Decision
    posterior_a: BetaParams
    posterior_b: BetaParams


def _exceedance_grid(
    alpha_a: np.ndarray,
    beta_a: np.ndarray,
    alpha_b: np.ndarray,
    beta_b: np.ndarray,
    shift: float,
    tol: float,
    paired: bool,
) -> np.ndarray:
    """Pr[pi_A - pi_B > shift] for a batch of posterior pairs.

    Evaluates {1 - F_A(x + shift)} * f_B(x) integrated over the support of B,
    with all components sharing quadrature panels.  ``paired`` pairs the
    arrays row-by-row; otherwise the full outer grid is produced with shape
    (len A, len B).

    Three numerical hazards are handled explicitly.  Below x = -shift the
    A-factor is identically 1, and F_A has an algebraic kink at that point,
    so the region is added analytically as CDF mass of B and the quadrature
    starts at the kink.  Shape parameters below one (density singularities)
    or below two (curvature blow-up of the A-factor at a boundary) trigger a
    geometrically graded opening mesh toward the affected endpoint; nodes
    stay interior, so singular points are never evaluated.  Finally, within
    one ulp of x = 1 the float grid cannot resolve a below-one B shape, so
    that sliver of mass is restored analytically from the CDF.
    """
    hi = min(1.0, 1.0 - shift)
    lo = max(0.0, -shift)
    n_a, n_b = alpha_a.size, alpha_b.size
    empty_shape = n_a if paired else (n_a, n_b)
    if hi <= 0.0:
        return np.zeros(empty_shape)

    head_mass_b = (
        regularized_incomplete_beta(alpha_b, beta_b, lo) if lo > 0.0 else np.zeros(n_b)
    )
    if paired:
        head = head_mass_b
    else:
        head = np.broadcast_to(head_mass_b[None, :], (n_a, n_b))
    if hi <= lo:
        return head.copy() if not paired else head

    grade_left = (lo == 0.0 and bool(np.min(alpha_b) < 1.0)) or (
        lo == -shift and bool(np.min(alpha_a) < 2.0)
    )
    grade_right = (hi == 1.0 and bool(np.min(beta_b) < 1.0)) or (
        hi == 1.0 - shift and bool(np.min(beta_a) < 2.0)
    )

    log_norm_b = -_log_beta(alpha_b, beta_b)
    x_cap = np.nextafter(1.0, 0.0)

    def integrand(x: np.ndarray) -> np.ndarray:
        x = np.minimum(x, x_cap)
        tail_a = 1.0 - regularized_incomplete_beta(
            alpha_a[:, None], beta_a[:, None], np.clip(x[None, :] + shift, 0.0, 1.0)
        )
        log_pdf_b = (
            log_norm_b[:, None]
            + (alpha_b[:, None] - 1.0) * np.log(x[None, :])
            + (beta_b[:, None] - 1.0) * np.log1p(-x[None, :])
        )
        pdf_b = np.exp(log_pdf_b)
        if paired:
            return tail_a * pdf_b
        return tail_a[:, None, :] * pdf_b[None, :, :]

    result = head + integrate_columns(
        integrand, lo, hi, tol=tol, grade_left=grade_left, grade_right=grade_right
    )
    if hi == 1.0:
        cap_mass_b = 1.0 - regularized_incomplete_beta(alpha_b, beta_b, x_cap)
        if np.any(cap_mass_b > 0.0):
            tail_a_at_one = 1.0 - regularized_incomplete_beta(
                alpha_a, beta_a, min(1.0, max(0.0, 1.0 + shift))
            )
            if paired:
                result = result + tail_a_at_one * cap_mass_b
            else:
                result = result + tail_a_at_one[:, None] * cap_mass_b[None, :]
    return result


def _as_shape_arrays(posteriors):
    alphas = np.array([p.alpha for p in posteriors], dtype=float)
    betas = np.array([p.beta for p in posteriors], dtype=float)
    return alphas, betas


def _check_margin(margin: float) -> None:
    if not 0.0 <= margin <= 1.0:
        raise ValueError(f"margin must lie in [0, 1], got {margin}")


def prob_correct(
    post_a: BetaParams, post_b: BetaParams, margin: float, tol: float = DEFAULT_TOL
) -> float:
    """Posterior probability that arm A exceeds arm B by more than the margin."""
    _check_margin(margin)
    a_alpha, a_beta = _as_shape_arrays([post_a])
    b_alpha, b_beta = _as_shape_arrays([post_b])
    value = _exceedance_grid(a_alpha, a_beta, b_alpha, b_beta, margin, tol, paired=True)
    return float(value[0])


def prob_ambiguous(
    post_a: BetaParams, post_b: BetaParams, margin: float, tol: float = DEFAULT_TOL
) -> float:
    """Posterior probability that the two arms differ by at most the margin.

    Computed as the difference of two one-sided probabilities,
    Pr[diff > -margin] - Pr[diff > margin], which keeps the integrand inside
    the support of both densities.
    """
    _check_margin(margin)
    a_alpha, a_beta = _as_shape_arrays([post_a])
    b_alpha, b_beta = _as_shape_arrays([post_b])
    above_lower = _exceedance_grid(a_alpha, a_beta, b_alpha, b_beta, -margin, tol, paired=True)
    above_upper = _exceedance_grid(a_alpha, a_beta, b_alpha, b_beta, margin, tol, paired=True)
    return float(above_lower[0] - above_upper[0])


def lambda_star(inputs: DecisionInputs, tol: float = DEFAULT_TOL) -> float:
    """Composite selection score on the updated posteriors."""
    post_a = posterior_update(inputs.prior_a, inputs.data_a)
    post_b = posterior_update(inputs.prior_b, inputs.data_b)
    return lambda_star_from_posteriors(
        post_a, post_b, inputs.margin, inputs.ambiguity_weight, tol=tol
    )


def lambda_star_from_posteriors(
    post_a: BetaParams,
    post_b: BetaParams,
    margin: float,
    ambiguity_weight: float,
    tol: float = DEFAULT_TOL,
) -> float:
    p_corr = prob_correct(post_a, post_b, margin, tol=tol)
    if ambiguity_weight == 0.0:
        return p_corr
    p_amb = prob_ambiguous(post_a, post_b, margin, tol=tol)
    return p_corr + ambiguity_weight * p_amb


def lambda_grid(
    alpha_a: np.ndarray,
    beta_a: np.ndarray,
    alpha_b: np.ndarray,
    beta_b: np.ndarray,
    margin: float,
    ambiguity_weight: float,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Selection score over the outer grid of arm-A and arm-B posteriors.

    Shapes are given as parallel alpha/beta arrays per arm; the result has
    shape (len A, len B).  Used by the simulation loops, where thousands of
    distinct posterior pairs share quadrature panels.
    """
    _check_margin(margin)
    alpha_a = np.asarray(alpha_a, dtype=float)
    beta_a = np.asarray(beta_a, dtype=float)
    alpha_b = np.asarray(alpha_b, dtype=float)
    beta_b = np.asarray(beta_b, dtype=float)
    above_upper = _exceedance_grid(alpha_a, beta_a, alpha_b, beta_b, margin, tol, paired=False)
    if ambiguity_weight == 0.0:
        return above_upper
    above_lower = _exceedance_grid(alpha_a, beta_a, alpha_b, beta_b, -margin, tol, paired=False)
    return above_upper + ambiguity_weight * (above_lower - above_upper)


def lambda_pairs(
    alpha_a: np.ndarray,
    beta_a: np.ndarray,
    alpha_b: np.ndarray,
    beta_b: np.ndarray,
    margin: float,
    ambiguity_weight: float,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Selection score for row-wise paired posteriors (one score per row)."""
    _check_margin(margin)
    alpha_a = np.asarray(alpha_a, dtype=float)
    beta_a = np.asarray(beta_a, dtype=float)
    alpha_b = np.asarray(alpha_b, dtype=float)
    beta_b = np.asarray(beta_b, dtype=float)
    above_upper = _exceedance_grid(alpha_a, beta_a, alpha_b, beta_b, margin, tol, paired=True)
    if ambiguity_weight == 0.0:
        return above_upper
    above_lower = _exceedance_grid(alpha_a, beta_a, alpha_b, beta_b, -margin, tol, paired=True)
    return above_upper + ambiguity_weight * (above_lower - above_upper)


def decide(lambda_value: float, threshold: float) -> Decision:
    """Select arm A only when the score strictly exceeds the threshold."""
    if not 0.0 <= lambda_value <= 1.0 + 1e-9:
        raise ValueError(f"lambda must lie in [0, 1], got {lambda_value}")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    if lambda_value > threshold:
        return Decision.SELECT_A
    return Decision.CONSIDER_OTHER_FACTORS


def analyze_trial(inputs: DecisionInputs, tol: float = DEFAULT_TOL) -> DecisionReport:
    """Full posterior analysis of a completed trial.

    Arm labels are taken from the input order; the report never reorders arms
    by observed rate.  The below-margin probability is evaluated through the
    arm-swapped integral, so the three probabilities summing to one is a
    genuine numerical consistency check rather than an identity.
    """
    post_a = posterior_update(inputs.prior_a, inputs.data_a)
    post_b = posterior_update(inputs.prior_b, inputs.data_b)
    p_corr = prob_correct(post_a, post_b, inputs.margin, tol=tol)
    p_amb = prob_ambiguous(post_a, post_b, inputs.margin, tol=tol)
    p_below = prob_correct(post_b, post_a, inputs.margin, tol=tol)
    score = p_corr + inputs.ambiguity_weight * p_amb
    return DecisionReport(
        p_correct=p_corr,
        p_ambiguous=p_amb,
        p_below=p_below,
        lambda_star=score,
        decision=decide(score, inputs.decision_threshold),
        posterior_a=post_a,
        posterior_b=post_b,
    )
