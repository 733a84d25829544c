"""Sample size determination for the Bayesian selection design.

Two procedures are provided.  The deterministic one plugs the expected
responder counts into the posterior at each candidate size and scores the
resulting selection probability; the simulated one resamples the responder
counts binomially and averages the score over many replicates, trading
runtime for a curve that is stable at small sizes.  Both searches scan
downward from the upper bound and report the smallest n at which the score
stays above the design threshold for every larger candidate, which makes the
answer robust to the sawtooth the integer responder counts induce.
"""

from __future__ import annotations

import enum
import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .betadist import BetaParams
from .decision import lambda_grid, lambda_pairs
from .quadrature import DEFAULT_TOL
from .streams import replicate_binomials

THREADS_ENV_VAR = "SELECTA_THREADS"

ARM_A = 0
ARM_B = 1


class SearchMethod(str, enum.Enum):
    DETERMINISTIC = "deterministic"
    SIMULATED = "simulated"
    FREQUENTIST = "frequentist"


class NotAttainedError(RuntimeError):
    """The score never exceeded the threshold at the top of the search range."""


@dataclass(frozen=True)
class DesignSpec:
    """Design configuration for planning a two-arm selection trial."""

    prior_a: BetaParams
    prior_b: BetaParams
    expected_rate_a: float
    expected_rate_b: float
    margin: float
    ambiguity_weight: float
    design_threshold: float
    decision_threshold: float = 0.90
    n_lo: int = 10
    n_hi: int = 1000
    replicates: int = 100_000
    seed: int = 20240

    def __post_init__(self) -> None:
        for name in ("expected_rate_a", "expected_rate_b"):
            rate = getattr(self, name)
            if not 0.0 < rate < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {rate}")
        if not self.expected_rate_a > self.expected_rate_b:
            raise ValueError(
                "expected_rate_a must exceed expected_rate_b "
                f"(arm A is the assumed-better arm); got {self.expected_rate_a} "
                f"<= {self.expected_rate_b}"
            )
        if not 0.0 <= self.margin < 1.0:
            raise ValueError(f"margin must lie in [0, 1), got {self.margin}")
        if not 0.0 <= self.ambiguity_weight <= 1.0:
            raise ValueError(
                f"ambiguity_weight must lie in [0, 1], got {self.ambiguity_weight}"
            )
        for name in ("design_threshold", "decision_threshold"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        if not 1 <= self.n_lo <= self.n_hi:
            raise ValueError(
                f"search bounds must satisfy 1 <= n_lo <= n_hi, got [{self.n_lo}, {self.n_hi}]"
            )
        if self.replicates < 1:
            raise ValueError(f"replicates must be at least 1, got {self.replicates}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")


@dataclass(frozen=True)
class SampleSizeResult:
    """Outcome of a sample size search.

    ``n_min`` is None when the criterion already holds at every scanned size
    (``under_lower_bound``), mirroring the below-lower-bound notation of
    published sample size tables.
    """

    method: SearchMethod
    n_min: int | None
    under_lower_bound: bool
    threshold: float
    curve: tuple[tuple[int, float], ...]


def worker_count() -> int:
    """Parallelism cap from the environment (defaults to serial)."""
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def expected_responders(n: int, rate: float) -> int:
    """Expected responder count n * rate, resolved to an integer.

    Rounds to the nearest integer with ties going to the even neighbour, after
    snapping the product to 12 decimals so binary-float fuzz (40 * 0.55 is a
    hair above 22) cannot shift the count.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    product = round(n * rate, 12)
    floor = math.floor(product)
    remainder = product - floor
    if remainder > 0.5:
        count = floor + 1
    elif remainder < 0.5:
        count = floor
    else:
        count = floor if floor % 2 == 0 else floor + 1
    return min(n, count)


def _plugin_shapes(spec: DesignSpec, sizes: np.ndarray):
    counts_a = np.array([expected_responders(int(n), spec.expected_rate_a) for n in sizes])
    counts_b = np.array([expected_responders(int(n), spec.expected_rate_b) for n in sizes])
    alpha_a = spec.prior_a.alpha + counts_a
    beta_a = spec.prior_a.beta + sizes - counts_a
    alpha_b = spec.prior_b.alpha + counts_b
    beta_b = spec.prior_b.beta + sizes - counts_b
    return alpha_a, beta_a, alpha_b, beta_b


def lambda_star_at_n(spec: DesignSpec, n: int, tol: float = DEFAULT_TOL) -> float:
    """Deterministic selection score at size n with plug-in responder counts."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    sizes = np.array([n])
    values = lambda_pairs(*_plugin_shapes(spec, sizes), spec.margin, spec.ambiguity_weight, tol=tol)
    return float(values[0])


def _deterministic_values(spec: DesignSpec, sizes: np.ndarray, tol: float) -> np.ndarray:
    return lambda_pairs(
        *_plugin_shapes(spec, sizes), spec.margin, spec.ambiguity_weight, tol=tol
    )


# simulated scores keyed by the fields the average depends on (thresholds and
# search bounds excluded, so threshold variants share one curve); single-writer
# via the lock below
_SIM_CACHE: dict[tuple, tuple[float, float]] = {}
_SIM_CACHE_LOCK = threading.Lock()


def _simulation_key(spec: DesignSpec, n: int) -> tuple:
    return (
        spec.prior_a,
        spec.prior_b,
        spec.expected_rate_a,
        spec.expected_rate_b,
        spec.margin,
        spec.ambiguity_weight,
        spec.replicates,
        spec.seed,
        n,
    )


def _simulated_point(spec: DesignSpec, n: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Mean and Monte-Carlo standard error of the score at size n.

    Replicate j draws responder counts from streams (seed, n, j, arm); the
    score is evaluated once per distinct posterior pair and averaged with the
    replicate multiplicities, which leaves the result bit-identical to the
    replicate-by-replicate loop at a tiny fraction of the cost.
    """
    key = _simulation_key(spec, n)
    with _SIM_CACHE_LOCK:
        if key in _SIM_CACHE:
            return _SIM_CACHE[key]
    draws_a = replicate_binomials(
        spec.seed, (n,), spec.replicates, (ARM_A,), n, spec.expected_rate_a
    )
    draws_b = replicate_binomials(
        spec.seed, (n,), spec.replicates, (ARM_B,), n, spec.expected_rate_b
    )
    unique_a, idx_a = np.unique(draws_a, return_inverse=True)
    unique_b, idx_b = np.unique(draws_b, return_inverse=True)
    grid = lambda_grid(
        spec.prior_a.alpha + unique_a,
        spec.prior_a.beta + n - unique_a,
        spec.prior_b.alpha + unique_b,
        spec.prior_b.beta + n - unique_b,
        spec.margin,
        spec.ambiguity_weight,
        tol=tol,
    )
    per_replicate = grid[idx_a, idx_b]
    mean = float(per_replicate.mean())
    std_err = float(per_replicate.std(ddof=1) / math.sqrt(spec.replicates)) if spec.replicates > 1 else 0.0
    with _SIM_CACHE_LOCK:
        _SIM_CACHE[key] = (mean, std_err)
    return mean, std_err


def lambda_bar_at_n(spec: DesignSpec, n: int, tol: float = DEFAULT_TOL) -> float:
    """Monte-Carlo average selection score at size n (deterministic per seed)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _simulated_point(spec, n, tol=tol)[0]


def lambda_bar_stats(spec: DesignSpec, n: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Monte-Carlo average and its standard error at size n."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _simulated_point(spec, n, tol=tol)


def clear_simulation_cache() -> None:
    with _SIM_CACHE_LOCK:
        _SIM_CACHE.clear()


def _scan_down(sizes: np.ndarray, values: np.ndarray, threshold: float, method: SearchMethod,
               ) -> SampleSizeResult:
    """Smallest n whose score exceeds the threshold at n and every larger size."""
    curve = tuple((int(n), float(v)) for n, v in zip(sizes, values))
    for position in range(len(sizes) - 1, -1, -1):
        if not values[position] > threshold:
            if position == len(sizes) - 1:
                raise NotAttainedError(
                    f"score {values[position]:.6f} does not exceed {threshold} at the "
                    f"search upper bound n={int(sizes[position])}; raise n_hi"
                )
            return SampleSizeResult(
                method=method,
                n_min=int(sizes[position + 1]),
                under_lower_bound=False,
                threshold=threshold,
                curve=curve,
            )
    return SampleSizeResult(
        method=method,
        n_min=None,
        under_lower_bound=True,
        threshold=threshold,
        curve=curve,
    )


def min_sample_size_deterministic(spec: DesignSpec, tol: float = DEFAULT_TOL) -> SampleSizeResult:
    """Smallest per-group size whose plug-in score clears the design threshold
    at that size and at every larger size up to n_hi."""
    sizes = np.arange(spec.n_lo, spec.n_hi + 1)
    values = _deterministic_values(spec, sizes, tol)
    return _scan_down(sizes, values, spec.design_threshold, SearchMethod.DETERMINISTIC)


def min_sample_size_simulated(spec: DesignSpec, tol: float = DEFAULT_TOL) -> SampleSizeResult:
    """Downward scan on the Monte-Carlo averaged score.

    Evaluates sizes from n_hi downward and stops at the first failure, so the
    curve in the result covers exactly the scanned sizes.
    """
    scanned: list[tuple[int, float]] = []
    for n in range(spec.n_hi, spec.n_lo - 1, -1):
        value = lambda_bar_at_n(spec, n, tol=tol)
        scanned.append((n, value))
        if not value > spec.design_threshold:
            if n == spec.n_hi:
                raise NotAttainedError(
                    f"score {value:.6f} does not exceed {spec.design_threshold} at the "
                    f"search upper bound n={n}; raise n_hi"
                )
            sizes = np.array([s for s, _ in reversed(scanned)])
            values = np.array([v for _, v in reversed(scanned)])
            return _scan_down(sizes, values, spec.design_threshold, SearchMethod.SIMULATED)
    sizes = np.array([s for s, _ in reversed(scanned)])
    values = np.array([v for _, v in reversed(scanned)])
    return _scan_down(sizes, values, spec.design_threshold, SearchMethod.SIMULATED)


def lambda_curve(
    spec: DesignSpec,
    n_from: int,
    n_to: int,
    method: SearchMethod,
    tol: float = DEFAULT_TOL,
) -> tuple[tuple[int, float], ...]:
    """Score-versus-size curve over [n_from, n_to], one value per integer size."""
    if n_from < 1:
        raise ValueError(f"n_from must be at least 1, got {n_from}")
    if n_from > n_to:
        raise ValueError(f"curve range must satisfy n_from <= n_to, got [{n_from}, {n_to}]")
    sizes = np.arange(n_from, n_to + 1)
    if method == SearchMethod.DETERMINISTIC:
        values = _deterministic_values(spec, sizes, tol)
        return tuple((int(n), float(v)) for n, v in zip(sizes, values))
    if method == SearchMethod.SIMULATED:
        workers = min(worker_count(), len(sizes))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(lambda n: lambda_bar_at_n(spec, int(n), tol=tol), sizes))
        else:
            values = [lambda_bar_at_n(spec, int(n), tol=tol) for n in sizes]
        return tuple((int(n), float(v)) for n, v in zip(sizes, values))
    raise ValueError(f"unsupported curve method: {method}")
