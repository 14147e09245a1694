"""Sampling schemes, discrete norms, and richness estimates."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frameapprox import frames, orthopoly, sampling


def test_point_scheme_scales():
    leg = sampling.legendre_point_scheme(9)
    rule = orthopoly.gauss_legendre_rule(9)
    assert np.allclose(leg.nodes, rule.nodes, atol=0)
    assert np.allclose(leg.scales, np.sqrt(rule.weights), atol=0)
    assert leg.A_prime == 1.0 and leg.B_prime == 1.0

    eq = sampling.equispaced_point_scheme(8)
    assert np.allclose(eq.scales, np.sqrt(1.0 / 8), atol=0)

    cheb = sampling.chebyshev_point_scheme(8)
    assert np.allclose(cheb.scales, 1.0, atol=0)
    assert cheb.A_prime is None and cheb.B_prime is None


def test_weighted_chebyshev_scales():
    M = 12
    scheme = sampling.chebyshev_point_scheme(M, weighted=True)
    t = 2 * scheme.nodes - 1
    expected = np.sqrt(np.pi * np.sqrt(1 - t ** 2) / (2 * M))
    assert np.allclose(scheme.scales, expected, atol=1e-15)
    assert scheme.A_prime == 1.0 and scheme.B_prime == 1.0


def test_inner_product_scheme_reproduces_basis_coefficients():
    # sampling phi_j against the first 6 basis functions gives a unit vector
    scheme = sampling.inner_product_scheme(6)
    for j in range(6):
        f = lambda x: orthopoly.legendre_shifted(j, x)
        y = sampling.sample(scheme, f).values
        expected = np.zeros(6)
        expected[j] = 1.0
        assert np.abs(y - expected).max() < 1e-12


def test_point_sampling_values():
    scheme = sampling.legendre_point_scheme(5)
    y = sampling.sample(scheme, np.exp)
    assert np.allclose(y.values, scheme.scales * np.exp(scheme.nodes), atol=0)
    assert y.scheme is scheme


def test_sample_rejects_non_finite_values():
    scheme = sampling.chebyshev_point_scheme(4)
    with pytest.raises(ValueError):
        sampling.sample(scheme, lambda x: np.full_like(x, np.nan))


def test_discrete_norm_weighted_points_approximates_l2_norm():
    # sqrt-weight scaling makes the discrete norm a Gauss estimate of ||f||
    scheme = sampling.legendre_point_scheme(30)
    norm = sampling.discrete_norm(scheme, np.exp)
    exact = np.sqrt((np.e ** 2 - 1.0) / 2.0)
    assert abs(norm - exact) < 1e-12
    assert sampling.discrete_norm(sampling.legendre_point_scheme(6),
                                  lambda x: np.ones_like(x)) == pytest.approx(1.0)
    phi2 = lambda x: orthopoly.legendre_shifted(2, x)
    assert sampling.discrete_norm(sampling.legendre_point_scheme(32), phi2) \
        == pytest.approx(1.0, abs=1e-12)


def test_discrete_norm_equispaced_riemann_convergence():
    exact = np.sqrt((np.e ** 2 - 1.0) / 2.0)
    errs = [abs(sampling.discrete_norm(sampling.equispaced_point_scheme(M), np.exp)
                - exact) for M in (16, 64, 256)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < errs[0] / 100  # midpoint sums converge at second order


def test_data_vector_validation():
    scheme = sampling.legendre_point_scheme(4)
    with pytest.raises(ValueError):
        sampling.DataVector(np.zeros(5), scheme)
    vec = sampling.DataVector(np.array([3.0, 4.0, 0.0, 0.0]), scheme)
    assert abs(vec.norm() - 5.0) < 1e-15


def test_scheme_family_realize():
    fam = sampling.legendre_points()
    scheme = fam.realize(7)
    assert scheme.M == 7
    assert scheme.kind is sampling.SchemeKind.WEIGHTED_POINT_VALUES
    assert sampling.inner_products().realize(5).kind is sampling.SchemeKind.BASIS_INNER_PRODUCTS


@settings(deadline=None, max_examples=25)
@given(M=st.integers(1, 40))
def test_scheme_sizes(M):
    for fam in (sampling.legendre_points(), sampling.equispaced_points(),
                sampling.chebyshev_points(), sampling.chebyshev_points(weighted=True)):
        scheme = fam.realize(M)
        assert scheme.nodes.shape == (M,)
        assert np.all((scheme.nodes > 0) & (scheme.nodes <= 1))


def test_richness_pure_basis_inner_products_is_one():
    frame = frames.legendre_onb(8)
    value = sampling.richness_estimate(sampling.inner_product_scheme(8), frame, 8)
    assert abs(value - 1.0) < 1e-10


def test_richness_regression_enriched_gauss_points():
    # slow approach to 1 from below is intrinsic to the log enrichment
    frame = frames.onb_plus_k(20, 5)
    value = sampling.richness_estimate(sampling.legendre_point_scheme(40), frame, 20)
    assert value == pytest.approx(0.00023898856999156424, rel=1e-6)


def test_richness_increases_with_oversampling():
    frame = frames.onb_plus_k(10, 5)
    values = [
        sampling.richness_estimate(sampling.legendre_point_scheme(mult * 10), frame, 10)
        for mult in (2, 4, 8, 16, 32)
    ]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] > 0.9  # approaches the continuous lower frame bound 1


def test_richness_equispaced_points_nearly_degenerate():
    frame = frames.onb_plus_k(20, 5)
    value = sampling.richness_estimate(sampling.equispaced_point_scheme(40), frame, 20)
    assert 0 < value < 1e-10


def test_richness_argument_validation():
    frame = frames.onb_plus_k(10, 2)
    with pytest.raises(ValueError):
        sampling.richness_estimate(sampling.legendre_point_scheme(20), frame, 11)
    with pytest.raises(ValueError):
        sampling.richness_estimate(sampling.legendre_point_scheme(5), frame, 10)
