"""Operating characteristics of the selection rule under known true rates.

For a scenario with fixed true response rates, priors and decision settings,
the simulator repeatedly generates trial outcomes, applies the selection rule
to each, and reports the proportion of trials decided on efficacy alone
(``xi``) and its complement, the proportion deferred to secondary factors
(``nu``).  Replicates are shared between the two proportions so nu = 1 - xi
holds exactly.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .betadist import BetaParams
from .decision import lambda_grid
from .quadrature import DEFAULT_TOL
from .samplesize import ARM_A, ARM_B, worker_count
from .streams import replicate_binomials


@dataclass(frozen=True)
class OcScenario:
    """One simulation scenario: truth, prior beliefs and decision settings."""

    label: str
    true_rate_a: float
    true_rate_b: float
    prior_a: BetaParams
    prior_b: BetaParams
    margin: float
    ambiguity_weight: float
    n_per_arm: int
    decision_threshold: float = 0.90
    replicates: int = 100_000
    seed: int = 20240
    note: str = ""

    def __post_init__(self) -> None:
        for name in ("true_rate_a", "true_rate_b"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {rate}")
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
        if self.n_per_arm < 1:
            raise ValueError(f"n_per_arm must be at least 1, got {self.n_per_arm}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be at least 1, got {self.replicates}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")


@dataclass(frozen=True)
class OcResult:
    """Estimated operating characteristics with Monte-Carlo error."""

    xi: float
    nu: float
    mc_standard_error: float
    replicates_used: int


def estimate_xi(scenario: OcScenario, tol: float = DEFAULT_TOL) -> OcResult:
    """Proportion of simulated trials whose score clears the decision threshold.

    Replicate j draws the per-arm responder counts from streams
    (seed, j, arm); the score is evaluated once per distinct posterior pair.
    A quadrature failure in any replicate aborts the run; partial results are
    never reported.
    """
    n = scenario.n_per_arm
    m = scenario.replicates
    draws_a = replicate_binomials(scenario.seed, (), m, (ARM_A,), n, scenario.true_rate_a)
    draws_b = replicate_binomials(scenario.seed, (), m, (ARM_B,), n, scenario.true_rate_b)
    unique_a, idx_a = np.unique(draws_a, return_inverse=True)
    unique_b, idx_b = np.unique(draws_b, return_inverse=True)
    grid = lambda_grid(
        scenario.prior_a.alpha + unique_a,
        scenario.prior_a.beta + n - unique_a,
        scenario.prior_b.alpha + unique_b,
        scenario.prior_b.beta + n - unique_b,
        scenario.margin,
        scenario.ambiguity_weight,
        tol=tol,
    )
    selected = grid[idx_a, idx_b] > scenario.decision_threshold
    xi = float(np.count_nonzero(selected)) / m
    se = math.sqrt(xi * (1.0 - xi) / m)
    return OcResult(xi=xi, nu=1.0 - xi, mc_standard_error=se, replicates_used=m)


def estimate_nu(scenario: OcScenario, tol: float = DEFAULT_TOL) -> OcResult:
    """Complementary proportion, sharing replicates with :func:`estimate_xi`."""
    return estimate_xi(scenario, tol=tol)


def run_scenario_grid(
    scenarios: list[OcScenario], tol: float = DEFAULT_TOL
) -> list[tuple[str, OcResult]]:
    """Evaluate scenarios in order; results pair each label with its estimate."""
    if not scenarios:
        raise ValueError("scenario list must not be empty")
    workers = min(worker_count(), len(scenarios))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: estimate_xi(s, tol=tol), scenarios))
    else:
        results = [estimate_xi(s, tol=tol) for s in scenarios]
    return [(s.label, r) for s, r in zip(scenarios, results)]


OC_CSV_COLUMNS = ("label", "n", "xi", "nu", "se", "m", "seed")


def results_to_csv(rows: list[tuple[OcScenario, OcResult]]) -> str:
    """Render scenario results with the documented fixed column order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(OC_CSV_COLUMNS)
    for scenario, result in rows:
        writer.writerow(
            [
                scenario.label,
                scenario.n_per_arm,
                repr(result.xi),
                repr(result.nu),
                repr(result.mc_standard_error),
                result.replicates_used,
                scenario.seed,
            ]
        )
    return buffer.getvalue()
