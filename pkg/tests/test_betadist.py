import numpy as np
import pytest
from scipy import special

from selecta.betadist import ArmData, BetaParams, beta_cdf, beta_pdf, posterior_update
from selecta.quadrature import integrate


def test_uniform_cdf_midpoint():
    assert beta_cdf(0.5, BetaParams(1, 1)) == pytest.approx(0.5, abs=1e-14)


def test_cdf_full_support():
    assert beta_cdf(1.0, BetaParams(3, 7)) == 1.0
    assert beta_cdf(0.0, BetaParams(3, 7)) == 0.0


def test_cdf_symmetric_shape():
    assert beta_cdf(0.5, BetaParams(2, 2)) == pytest.approx(0.5, abs=1e-14)


def test_cdf_against_simpson_oracle():
    # composite Simpson on the density, 10^6 panels:
    #   int_0^0.3 beta_pdf(x, Beta(9, 21)) dx = 0.5212948600297194
    assert beta_cdf(0.3, BetaParams(9, 21)) == pytest.approx(0.5212948600297194, abs=1e-10)


def test_cdf_against_scipy_grid():
    rng = np.random.default_rng(42)
    a = rng.uniform(0.3, 1200.0, 3000)
    b = rng.uniform(0.3, 1200.0, 3000)
    x = rng.uniform(0.0, 1.0, 3000)
    ours = np.array([beta_cdf(xi, BetaParams(ai, bi)) for ai, bi, xi in zip(a, b, x)])
    ref = special.betainc(a, b, x)
    assert np.max(np.abs(ours - ref)) < 5e-12


def test_cdf_monotone_in_x():
    grid = np.linspace(0.0, 1.0, 201)
    for p in (BetaParams(0.5, 0.5), BetaParams(1, 1), BetaParams(9, 21), BetaParams(300, 500)):
        values = beta_cdf(grid, p)
        assert np.all(np.diff(values) >= -1e-15)


def test_cdf_reflection_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b = rng.uniform(0.4, 80.0, 2)
        x = rng.uniform(0.0, 1.0)
        total = beta_cdf(x, BetaParams(a, b)) + beta_cdf(1.0 - x, BetaParams(b, a))
        assert total == pytest.approx(1.0, abs=1e-12)


def test_cdf_rejects_bad_arguments():
    with pytest.raises(ValueError):
        beta_cdf(-0.1, BetaParams(2, 2))
    with pytest.raises(ValueError):
        beta_cdf(1.1, BetaParams(2, 2))
    with pytest.raises(ValueError):
        BetaParams(0.0, 2.0)
    with pytest.raises(ValueError):
        BetaParams(2.0, -1.0)


def test_pdf_uniform():
    assert beta_pdf(0.25, BetaParams(1, 1)) == pytest.approx(1.0, abs=1e-12)


def test_pdf_symmetric_value():
    # 6 x (1 - x) at x = 0.5
    assert beta_pdf(0.5, BetaParams(2, 2)) == pytest.approx(1.5, abs=1e-12)


def test_pdf_integrates_to_one():
    p = BetaParams(23, 19)
    mass = integrate(lambda x: beta_pdf(x, p), 0.0, 1.0, tol=1e-10)
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_pdf_finite_at_endpoints_for_small_shapes():
    p = BetaParams(0.5, 0.8)
    assert np.isfinite(beta_pdf(0.0, p))
    assert np.isfinite(beta_pdf(1.0, p))


def test_posterior_update_formula():
    assert posterior_update(BetaParams(1, 1), ArmData(40, 22)) == BetaParams(23, 19)
    assert posterior_update(BetaParams(26, 40), ArmData(40, 16)) == BetaParams(42, 64)


def test_posterior_update_no_data_is_identity():
    prior = BetaParams(2, 8)
    assert posterior_update(prior, ArmData(0, 0)) == prior


def test_posterior_update_rejects_bad_counts():
    with pytest.raises(ValueError):
        ArmData(10, 11)
    with pytest.raises(ValueError):
        ArmData(-1, 0)
    with pytest.raises(ValueError):
        ArmData(5, -2)


def test_posterior_update_associative_over_splits():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n1, n2 = rng.integers(0, 30, 2)
        s1 = int(rng.integers(0, n1 + 1)) if n1 else 0
        s2 = int(rng.integers(0, n2 + 1)) if n2 else 0
        # dyadic shapes add exactly with integer counts, keeping the check strict
        prior = BetaParams(int(rng.integers(1, 80)) / 4.0, int(rng.integers(1, 80)) / 4.0)
        stepwise = posterior_update(posterior_update(prior, ArmData(int(n1), s1)), ArmData(int(n2), s2))
        pooled = posterior_update(prior, ArmData(int(n1 + n2), s1 + s2))
        assert stepwise == pooled


def test_array_evaluation_matches_scalar():
    p = BetaParams(4, 28)
    xs = np.array([0.0, 0.1, 0.35, 0.9, 1.0])
    np.testing.assert_allclose(beta_cdf(xs, p), [beta_cdf(float(x), p) for x in xs], rtol=0, atol=1e-15)
    np.testing.assert_allclose(beta_pdf(xs, p), [beta_pdf(float(x), p) for x in xs], rtol=0, atol=1e-15)
