import numpy as np
import pytest

from selecta.betadist import ArmData, BetaParams
from selecta.decision import (
    Decision,
    DecisionInputs,
    analyze_trial,
    decide,
    lambda_grid,
    lambda_star,
    lambda_star_from_posteriors,
    prob_ambiguous,
    prob_correct,
)
from selecta.streams import RngStream, beta_sample


def random_posterior(rng):
    return BetaParams(float(rng.uniform(0.5, 60.0)), float(rng.uniform(0.5, 60.0)))


def test_prob_correct_exchangeable_arms():
    p = BetaParams(1, 1)
    assert prob_correct(p, p, 0.0) == pytest.approx(0.5, abs=1e-9)


def test_prob_correct_empty_range():
    assert prob_correct(BetaParams(8, 2), BetaParams(2, 8), 1.0) == 0.0


def test_prob_correct_against_frozen_mc_oracle():
    # 10^7 paired draws from the package sampler: Pr[A - B > 0.05] with
    # A ~ Beta(9, 23), B ~ Beta(4, 28) gave 0.8653408 (SE 1.079e-04)
    value = prob_correct(BetaParams(9, 23), BetaParams(4, 28), 0.05)
    assert abs(value - 0.8653408) <= 3.5 * 1.079e-04


def test_prob_ambiguous_zero_margin():
    value = prob_ambiguous(BetaParams(23, 19), BetaParams(17, 25), 0.0)
    assert value == pytest.approx(0.0, abs=1e-12)


def test_prob_ambiguous_identical_posteriors_symmetry():
    p = BetaParams(12, 20)
    for margin in (0.05, 0.1, 0.2):
        amb = prob_ambiguous(p, p, margin)
        corr = prob_correct(p, p, margin)
        assert amb == pytest.approx(1.0 - 2.0 * corr, abs=1e-9)


def test_prob_ambiguous_against_frozen_mc_oracle():
    # 10^7 paired draws: Pr[|A - B| <= 0.10] with A ~ Beta(23, 19),
    # B ~ Beta(17, 25) gave 0.3295878 (SE 1.486e-04)
    value = prob_ambiguous(BetaParams(23, 19), BetaParams(17, 25), 0.10)
    assert abs(value - 0.3295878) <= 3.5 * 1.486e-04


def test_lambda_star_zero_weight_equals_prob_correct():
    inputs = DecisionInputs(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(1, 1),
        data_a=ArmData(30, 12),
        data_b=ArmData(30, 7),
        margin=0.05,
        ambiguity_weight=0.0,
        decision_threshold=0.9,
    )
    assert lambda_star(inputs) == prob_correct(BetaParams(13, 19), BetaParams(8, 24), 0.05)


def test_lambda_star_case_study_vague_priors():
    inputs = DecisionInputs(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(1, 1),
        data_a=ArmData(40, 22),
        data_b=ArmData(40, 16),
        margin=0.10,
        ambiguity_weight=0.5,
        decision_threshold=0.9,
    )
    assert round(lambda_star(inputs), 2) == 0.82


def test_lambda_star_case_study_informative_prior():
    inputs = DecisionInputs(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(26, 40),
        data_a=ArmData(40, 22),
        data_b=ArmData(40, 16),
        margin=0.10,
        ambiguity_weight=0.5,
        decision_threshold=0.9,
    )
    assert round(lambda_star(inputs), 2) == 0.86


def test_decide_rule_and_boundary():
    assert decide(0.95, 0.90) == Decision.SELECT_A
    assert decide(0.90, 0.90) == Decision.CONSIDER_OTHER_FACTORS
    assert decide(0.50, 0.90) == Decision.CONSIDER_OTHER_FACTORS


def test_analyze_trial_case_study():
    inputs = DecisionInputs(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(1, 1),
        data_a=ArmData(40, 22),
        data_b=ArmData(40, 16),
        margin=0.10,
        ambiguity_weight=0.5,
        decision_threshold=0.90,
    )
    report = analyze_trial(inputs)
    assert round(report.lambda_star, 2) == 0.82
    assert report.decision == Decision.CONSIDER_OTHER_FACTORS
    assert report.posterior_a == BetaParams(23, 19)
    assert report.posterior_b == BetaParams(17, 25)
    assert report.lambda_star == pytest.approx(
        report.p_correct + 0.5 * report.p_ambiguous, abs=1e-12
    )


def test_analyze_trial_symmetric_when_no_data():
    inputs = DecisionInputs(
        prior_a=BetaParams(2, 5),
        prior_b=BetaParams(2, 5),
        data_a=ArmData(0, 0),
        data_b=ArmData(0, 0),
        margin=0.05,
        ambiguity_weight=0.5,
        decision_threshold=0.9,
    )
    report = analyze_trial(inputs)
    assert report.p_correct == pytest.approx(report.p_below, abs=1e-9)


def test_probability_partition_sums_to_one():
    rng = np.random.default_rng(17)
    for _ in range(30):
        inputs = DecisionInputs(
            prior_a=random_posterior(rng),
            prior_b=random_posterior(rng),
            data_a=ArmData(0, 0),
            data_b=ArmData(0, 0),
            margin=float(rng.uniform(0.0, 0.4)),
            ambiguity_weight=0.5,
            decision_threshold=0.9,
        )
        report = analyze_trial(inputs)
        total = report.p_correct + report.p_ambiguous + report.p_below
        assert total == pytest.approx(1.0, abs=1e-8)


def test_prob_correct_nonincreasing_in_margin():
    post_a, post_b = BetaParams(23, 19), BetaParams(17, 25)
    margins = np.arange(0.0, 0.55, 0.05)
    values = [prob_correct(post_a, post_b, float(d)) for d in margins]
    assert all(first >= second - 1e-12 for first, second in zip(values, values[1:]))


def test_arm_swap_antisymmetry():
    post_a, post_b = BetaParams(14, 30), BetaParams(9, 35)
    margin = 0.07
    # Pr[A - B > d] must complement the swapped report's within-or-above mass
    swapped_above = prob_correct(post_b, post_a, margin)
    swapped_amb = prob_ambiguous(post_b, post_a, margin)
    assert prob_correct(post_a, post_b, margin) == pytest.approx(
        1.0 - swapped_above - swapped_amb, abs=1e-8
    )


def test_full_weight_gives_noninferiority_identity():
    rng = np.random.default_rng(23)
    for _ in range(10):
        post_a, post_b = random_posterior(rng), random_posterior(rng)
        margin = float(rng.uniform(0.0, 0.3))
        score = lambda_star_from_posteriors(post_a, post_b, margin, 1.0)
        below = prob_correct(post_b, post_a, margin)
        assert score == pytest.approx(1.0 - below, abs=1e-8)


def test_lambda_grid_matches_scalar_path():
    alphas_a = np.array([3.0, 11.0, 24.0])
    betas_a = np.array([9.0, 21.0, 18.0])
    alphas_b = np.array([2.0, 16.0])
    betas_b = np.array([10.0, 26.0])
    grid = lambda_grid(alphas_a, betas_a, alphas_b, betas_b, 0.05, 0.5)
    for i in range(3):
        for j in range(2):
            scalar = lambda_star_from_posteriors(
                BetaParams(alphas_a[i], betas_a[i]),
                BetaParams(alphas_b[j], betas_b[j]),
                0.05,
                0.5,
            )
            assert grid[i, j] == pytest.approx(scalar, abs=1e-10)


def test_quadrature_against_live_mc_oracle():
    rng = np.random.default_rng(31)
    draws = 1_000_000
    for case in range(4):
        post_a, post_b = random_posterior(rng), random_posterior(rng)
        margin = float(rng.uniform(0.0, 0.25))
        a = beta_sample(RngStream(1000 + case, (0,)), post_a, size=draws)
        b = beta_sample(RngStream(1000 + case, (1,)), post_b, size=draws)
        est = float(np.mean(a - b > margin))
        shrunk = (est * draws + 2.0) / (draws + 4.0)  # small-count calibration
        se = np.sqrt(shrunk * (1 - shrunk) / draws)
        assert abs(prob_correct(post_a, post_b, margin) - est) <= 4.5 * se


def test_input_validation():
    good = dict(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(1, 1),
        data_a=ArmData(10, 5),
        data_b=ArmData(10, 5),
        margin=0.05,
        ambiguity_weight=0.5,
        decision_threshold=0.9,
    )
    with pytest.raises(ValueError):
        DecisionInputs(**{**good, "margin": 1.0})
    with pytest.raises(ValueError):
        DecisionInputs(**{**good, "ambiguity_weight": 1.2})
    with pytest.raises(ValueError):
        DecisionInputs(**{**good, "decision_threshold": 0.0})
