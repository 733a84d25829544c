"""Frequentist selection-design comparator built on observed-rate differences.

The superior arm is picked when the observed response-rate difference exceeds
the margin; differences inside the closed band [-margin, margin] defer the
choice to secondary factors.  Correct-selection and ambiguity probabilities
are evaluated either exactly, by summing binomial outcome products over the
distribution of the count difference, or through the large-sample normal
approximation.  The composite score and sample size rule mirror the Bayesian
module so the two designs can be compared cell by cell.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .samplesize import NotAttainedError, SampleSizeResult, SearchMethod

# Observed differences are compared to the margin with this absolute slack so
# boundary outcomes (say difference 4 of 40 against margin 0.10) land in the
# ambiguity band, matching the closed-interval definition.
BOUNDARY_EPS = 1e-12


class FreqMethod(str, enum.Enum):
    EXACT = "exact"
    NORMAL_APPROX = "normal_approx"


@dataclass(frozen=True)
class FreqDesign:
    """Configuration of the frequentist comparator design."""

    true_rate_a: float
    true_rate_b: float
    margin: float
    ambiguity_weight: float
    threshold: float
    method: FreqMethod = FreqMethod.EXACT
    n_lo: int = 10
    n_hi: int = 1000

    def __post_init__(self) -> None:
        for name in ("true_rate_a", "true_rate_b"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {rate}")
        if self.true_rate_a < self.true_rate_b:
            raise ValueError(
                "true_rate_a must be at least true_rate_b (arm A is the assumed-better "
                f"arm); got {self.true_rate_a} < {self.true_rate_b}"
            )
        if self.margin < 0.0:
            raise ValueError(f"margin must be nonnegative, got {self.margin}")
        if not 0.0 <= self.ambiguity_weight <= 1.0:
            raise ValueError(
                f"ambiguity_weight must lie in [0, 1], got {self.ambiguity_weight}"
            )
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")
        if not 1 <= self.n_lo <= self.n_hi:
            raise ValueError(
                f"search bounds must satisfy 1 <= n_lo <= n_hi, got [{self.n_lo}, {self.n_hi}]"
            )


def _binomial_pmf(n: int, p: float) -> np.ndarray:
    """Binomial(n, p) probabilities over k = 0..n via log-space evaluation."""
    if p == 0.0:
        pmf = np.zeros(n + 1)
        pmf[0] = 1.0
        return pmf
    if p == 1.0:
        pmf = np.zeros(n + 1)
        pmf[n] = 1.0
        return pmf
    k = np.arange(n + 1, dtype=float)
    log_pmf = (
        gammaln(n + 1.0)
        - gammaln(k + 1.0)
        - gammaln(n - k + 1.0)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    return np.exp(log_pmf)


def _difference_distribution(n: int, design: FreqDesign) -> np.ndarray:
    """Distribution of the responder-count difference; index i maps to i - n."""
    pmf_a = _binomial_pmf(n, design.true_rate_a)
    pmf_b = _binomial_pmf(n, design.true_rate_b)
    return np.convolve(pmf_a, pmf_b[::-1])


def _classify(n: int, margin: float):
    diffs = (np.arange(2 * n + 1) - n) / n
    correct = diffs > margin + BOUNDARY_EPS
    below = diffs < -margin - BOUNDARY_EPS
    ambiguous = ~(correct | below)
    return correct, ambiguous, below


def p_corr_exact(n: int, design: FreqDesign) -> float:
    """Exact probability that the observed difference exceeds the margin."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    dist = _difference_distribution(n, design)
    correct, _, _ = _classify(n, design.margin)
    return float(dist[correct].sum())


def p_amb_exact(n: int, design: FreqDesign) -> float:
    """Exact probability that the observed difference lies within the margin band."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    dist = _difference_distribution(n, design)
    _, ambiguous, _ = _classify(n, design.margin)
    return float(dist[ambiguous].sum())


def _normal_sd(n: int, design: FreqDesign) -> float:
    variance = (
        design.true_rate_a * (1.0 - design.true_rate_a)
        + design.true_rate_b * (1.0 - design.true_rate_b)
    ) / n
    if variance <= 0.0:
        raise ValueError(
            "normal approximation is degenerate: both rates are 0 or 1, variance is zero"
        )
    return math.sqrt(variance)


def _phi(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def p_corr_normal(n: int, design: FreqDesign) -> float:
    """Large-sample tail probability Pr[Z > (margin - delta) / sd]."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    delta = design.true_rate_a - design.true_rate_b
    sd = _normal_sd(n, design)
    return 1.0 - _phi((design.margin - delta) / sd)


def p_amb_normal(n: int, design: FreqDesign) -> float:
    """Large-sample band probability via the difference of two normal CDFs."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    delta = design.true_rate_a - design.true_rate_b
    sd = _normal_sd(n, design)
    return _phi((design.margin - delta) / sd) - _phi((-design.margin - delta) / sd)


def lambda_freq(n: int, design: FreqDesign) -> float:
    """Composite score: correct-selection plus weighted ambiguity probability."""
    if design.method == FreqMethod.EXACT:
        p_corr = p_corr_exact(n, design)
        if design.ambiguity_weight == 0.0:
            return p_corr
        return p_corr + design.ambiguity_weight * p_amb_exact(n, design)
    p_corr = p_corr_normal(n, design)
    if design.ambiguity_weight == 0.0:
        return p_corr
    return p_corr + design.ambiguity_weight * p_amb_normal(n, design)


def min_sample_size_freq(design: FreqDesign) -> SampleSizeResult:
    """Downward scan for the smallest n whose score stays above the threshold."""
    curve: list[tuple[int, float]] = []
    result_n: int | None = None
    under = False
    for n in range(design.n_hi, design.n_lo - 1, -1):
        value = lambda_freq(n, design)
        curve.append((n, value))
        if not value > design.threshold:
            if n == design.n_hi:
                raise NotAttainedError(
                    f"score {value:.6f} does not exceed {design.threshold} at the "
                    f"search upper bound n={n}; raise n_hi"
                )
            result_n = n + 1
            break
    else:
        under = True
    return SampleSizeResult(
        method=SearchMethod.FREQUENTIST,
        n_min=result_n,
        under_lower_bound=under,
        threshold=design.threshold,
        curve=tuple(reversed(curve)),
    )
