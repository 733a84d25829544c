import numpy as np
import pytest

from selecta.betadist import BetaParams
from selecta.samplesize import (
    DesignSpec,
    NotAttainedError,
    SearchMethod,
    clear_simulation_cache,
    expected_responders,
    lambda_bar_at_n,
    lambda_bar_stats,
    lambda_curve,
    lambda_star_at_n,
    min_sample_size_deterministic,
    min_sample_size_simulated,
)
from selecta.streams import RngStream, binomial_sample


def make_spec(**overrides):
    base = dict(
        prior_a=BetaParams(1, 1),
        prior_b=BetaParams(1, 1),
        expected_rate_a=0.20,
        expected_rate_b=0.05,
        margin=0.05,
        ambiguity_weight=0.0,
        design_threshold=0.90,
        n_lo=10,
        n_hi=200,
        replicates=100_000,
        seed=20240,
    )
    base.update(overrides)
    return DesignSpec(**base)


def test_expected_responders_worked_example():
    assert expected_responders(30, 0.25) == 8


def test_expected_responders_exact_product_not_inflated():
    # 40 * 0.55 evaluates slightly above 22 in binary floating point
    assert expected_responders(40, 0.55) == 22


def test_expected_responders_zero_rate():
    assert expected_responders(10, 0.0) == 0


def test_expected_responders_ties_round_to_even():
    assert expected_responders(50, 0.25) == 12   # 12.5 -> 12
    assert expected_responders(6, 0.25) == 2     # 1.5  -> 2
    assert expected_responders(26, 0.25) == 6    # 6.5  -> 6
    assert expected_responders(30, 0.15) == 4    # 4.5  -> 4 (binary float lands below)
    assert expected_responders(93, 0.50) == 46   # 46.5 -> 46


def test_expected_responders_capped_at_n():
    assert expected_responders(3, 1.0) == 3


def test_expected_responders_rejects_bad_arguments():
    with pytest.raises(ValueError):
        expected_responders(-1, 0.5)
    with pytest.raises(ValueError):
        expected_responders(10, 1.5)


def test_deterministic_reference_sizes():
    assert min_sample_size_deterministic(make_spec()).n_min == 53
    spec = make_spec(expected_rate_a=0.30, expected_rate_b=0.15,
                     ambiguity_weight=0.5, design_threshold=0.80)
    assert min_sample_size_deterministic(spec).n_min == 19


def test_deterministic_under_lower_bound():
    spec = make_spec(
        prior_a=BetaParams(3, 7), prior_b=BetaParams(1, 9),
        expected_rate_a=0.25, expected_rate_b=0.10,
        ambiguity_weight=0.5, design_threshold=0.80,
    )
    result = min_sample_size_deterministic(spec)
    assert result.under_lower_bound
    assert result.n_min is None


def test_deterministic_not_attained():
    spec = make_spec(expected_rate_a=0.21, expected_rate_b=0.20,
                     design_threshold=0.90, n_hi=30)
    with pytest.raises(NotAttainedError):
        min_sample_size_deterministic(spec)


def test_deterministic_result_consistent_with_curve():
    result = min_sample_size_deterministic(make_spec())
    values = dict(result.curve)
    assert all(values[n] > result.threshold for n in range(result.n_min, 201))
    assert not values[result.n_min - 1] > result.threshold


def test_lambda_star_at_n_matches_curve_point():
    spec = make_spec(expected_rate_a=0.30, expected_rate_b=0.15)
    points = lambda_curve(spec, 72, 72, SearchMethod.DETERMINISTIC)
    assert len(points) == 1
    assert points[0][0] == 72
    assert points[0][1] == pytest.approx(lambda_star_at_n(spec, 72), abs=1e-12)
    assert lambda_star_at_n(spec, 72) > 0.90


def test_deterministic_curve_has_small_sample_instability():
    spec = make_spec(expected_rate_a=0.30, expected_rate_b=0.15)
    points = lambda_curve(spec, 10, 40, SearchMethod.DETERMINISTIC)
    values = [v for _, v in points]
    assert any(later < earlier for earlier, later in zip(values, values[1:]))


def test_threshold_monotonicity_single_row():
    loose = min_sample_size_deterministic(make_spec(design_threshold=0.80))
    tight = min_sample_size_deterministic(make_spec(design_threshold=0.90))
    assert tight.n_min >= loose.n_min


def test_simulated_single_replicate_matching_plugin_counts():
    # hunt for a seed whose single draw reproduces the plug-in responder
    # counts; the averaged score then equals the deterministic one exactly
    n = 20
    target_a = expected_responders(n, 0.20)
    target_b = expected_responders(n, 0.05)
    for seed in range(4000):
        draw_a = binomial_sample(RngStream(seed, (n, 0, 0)), n, 0.20)
        draw_b = binomial_sample(RngStream(seed, (n, 0, 1)), n, 0.05)
        if draw_a == target_a and draw_b == target_b:
            break
    else:
        pytest.fail("no seed with a plug-in-matching draw found in range")
    spec = make_spec(replicates=1, seed=seed)
    assert lambda_bar_at_n(spec, n) == pytest.approx(lambda_star_at_n(spec, n), abs=1e-12)


def test_simulated_deterministic_per_seed():
    spec = make_spec(replicates=5000)
    clear_simulation_cache()
    first = lambda_bar_at_n(spec, 40)
    clear_simulation_cache()
    second = lambda_bar_at_n(spec, 40)
    assert first == second


def test_simulated_seed_sensitivity_within_mc_error():
    mean_a, se_a = lambda_bar_stats(make_spec(replicates=20_000, seed=1), 40)
    mean_b, se_b = lambda_bar_stats(make_spec(replicates=20_000, seed=2), 40)
    pooled = np.hypot(se_a, se_b)
    assert mean_a != mean_b
    assert abs(mean_a - mean_b) <= 4.0 * pooled


def test_simulated_search_reference_case():
    spec = make_spec(replicates=20_000)
    result = min_sample_size_simulated(spec)
    assert result.method == SearchMethod.SIMULATED
    # full-replicate reference value is 71; modest replicates stay close
    assert abs(result.n_min - 71) <= 4
    values = dict(result.curve)
    assert all(values[n] > 0.90 for n in range(result.n_min, 201))


def test_simulated_exceeds_deterministic():
    det = min_sample_size_deterministic(make_spec())
    sim = min_sample_size_simulated(make_spec(replicates=20_000))
    assert sim.n_min >= det.n_min


def test_curve_single_point_simulated_matches_at_n():
    spec = make_spec(replicates=2000)
    points = lambda_curve(spec, 30, 30, SearchMethod.SIMULATED)
    assert points == ((30, lambda_bar_at_n(spec, 30)),)


def test_curve_rejects_reversed_range():
    with pytest.raises(ValueError):
        lambda_curve(make_spec(), 50, 40, SearchMethod.DETERMINISTIC)


def test_thread_count_invariance(monkeypatch):
    spec = make_spec(replicates=2000)
    monkeypatch.setenv("SELECTA_THREADS", "1")
    clear_simulation_cache()
    serial = lambda_curve(spec, 20, 26, SearchMethod.SIMULATED)
    monkeypatch.setenv("SELECTA_THREADS", "4")
    clear_simulation_cache()
    threaded = lambda_curve(spec, 20, 26, SearchMethod.SIMULATED)
    assert serial == threaded


def test_spec_validation():
    with pytest.raises(ValueError):
        make_spec(expected_rate_a=0.05, expected_rate_b=0.20)
    with pytest.raises(ValueError):
        make_spec(expected_rate_a=1.0)
    with pytest.raises(ValueError):
        make_spec(n_lo=50, n_hi=40)
    with pytest.raises(ValueError):
        make_spec(replicates=0)
    with pytest.raises(ValueError):
        make_spec(design_threshold=1.0)
