"""Sampled Gram systems and the continuous Gram factor."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frameapprox import frames, gram, sampling


def test_pure_basis_inner_product_system_is_identity_block():
    frame = frames.legendre_onb(8)
    system = gram.build_system(frame, sampling.inner_product_scheme(14))
    expected = np.zeros((14, 8))
    expected[:8, :8] = np.eye(8)
    assert np.abs(system.matrix - expected).max() < 1e-13
    assert system.M == 14 and system.N == 8


def test_build_system_dimension_checks():
    frame = frames.onb_plus_k(6, 1)
    scheme = sampling.legendre_point_scheme(12)
    with pytest.raises(ValueError):
        gram.build_system(frame, scheme, M=10)
    with pytest.raises(ValueError):
        gram.build_system(frame, scheme, N=5)
    system = gram.build_system(frame, scheme, M=12, N=6)
    assert system.matrix.shape == (12, 6)


def test_svd_factors_reconstruct_and_are_orthogonal():
    frame = frames.onb_plus_k(12, 3)
    system = gram.build_system(frame, sampling.chebyshev_point_scheme(24))
    U, s, Vt = system.U, system.singular_values, system.Vt
    scale = np.linalg.norm(system.matrix)
    assert np.linalg.norm(U @ (s[:, None] * Vt) - system.matrix) < 1e-12 * scale
    assert np.abs(U.T @ U - np.eye(12)).max() < 1e-12
    assert np.abs(Vt @ Vt.T - np.eye(12)).max() < 1e-12
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)


def test_from_matrix_rejects_non_matrix():
    with pytest.raises(ValueError):
        gram.GramSystem.from_matrix(np.zeros(3))


def test_continuous_gram_column_closed_form():
    # first column holds the log moments (-1)^(m+1) sqrt(2m+1) / (sqrt2 m (m+1))
    frame = frames.onb_plus_k(60, 1)
    G = gram.continuous_gram(gram.build_gram_factor(frame))
    m = np.arange(1, 59)
    closed = np.concatenate([
        [1.0, -1.0 / np.sqrt(2.0)],
        np.sqrt(2 * m + 1) * (-1.0) ** (m + 1) / (np.sqrt(2.0) * m * (m + 1)),
    ])
    assert np.abs(G[:, 0] - closed).max() < 1e-10
    assert np.abs(G - G.T).max() < 1e-14


def test_continuous_gram_spectrum_within_frame_bounds():
    frame = frames.onb_plus_k(30, 1)
    G = gram.continuous_gram(gram.build_gram_factor(frame))
    s = np.linalg.svd(G, compute_uv=False)
    assert s[0] <= frame.B_upper * (1 + 1e-12)
    assert s[-1] > 0


@settings(deadline=None, max_examples=50)
@given(data=st.data())
def test_gram_quadratic_form_bounded_by_upper_frame_bound(data):
    frame = frames.onb_plus_k(12, 3)
    G = _cached_gram(12, 3)
    c = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=12, max_size=12)))
    lhs = c @ G @ c
    assert lhs <= frame.B_upper * (c @ c) * (1 + 1e-10) + 1e-12


_GRAMS = {}


def _cached_gram(N, K):
    key = (N, K)
    if key not in _GRAMS:
        _GRAMS[key] = gram.continuous_gram(
            gram.build_gram_factor(frames.onb_plus_k(N, K)))
    return _GRAMS[key]


def test_condition_number_basics():
    ident = gram.GramSystem.from_matrix(np.eye(4))
    assert gram.condition_number(ident) == pytest.approx(1.0)
    diag = gram.GramSystem.from_matrix(np.diag([2.0, 0.5]))
    assert gram.condition_number(diag) == pytest.approx(4.0)
    singular = gram.GramSystem.from_matrix(np.diag([1.0, 0.0]))
    assert gram.condition_number(singular) == np.inf


def test_square_gram_conditioning_grows_with_n():
    cond = {}
    for N in (10, 40):
        cond[N] = gram.condition_number(gram.GramSystem.from_matrix(_cached_gram(N, 1)))
    assert cond[40] > cond[10] > 1.0


def test_inner_product_systems_retain_full_rank():
    # redundancy makes these ill conditioned but never numerically singular
    for N in (10, 20, 40):
        frame = frames.onb_plus_k(N, 1)
        for M in (N, 2 * N):
            s = gram.build_system(frame, sampling.inner_product_scheme(M)).singular_values
            assert s[-1] / s[0] > 1e-15


def test_inner_product_normal_matrix_approaches_continuous_gram():
    frame = frames.onb_plus_k(10, 5)
    G_cont = _cached_gram(10, 5)
    devs = []
    for M in (20, 40, 80, 160):
        G = gram.build_system(frame, sampling.inner_product_scheme(M)).matrix
        devs.append(np.linalg.norm(G.T @ G - G_cont))
    assert all(b < a for a, b in zip(devs, devs[1:]))
    assert devs[-1] < 1e-3


def test_squared_condition_number_limit():
    # cond(G_MN)^2 approaches cond(G_N) under heavy inner product oversampling
    frame = frames.onb_plus_k(10, 5)
    target = gram.condition_number(gram.GramSystem.from_matrix(_cached_gram(10, 5)))
    system = gram.build_system(frame, sampling.inner_product_scheme(160))
    ratio = gram.condition_number(system) ** 2 / target
    assert abs(ratio - 1.0) < 0.05


def test_gram_factor_matches_direct_quadrature():
    frame = frames.onb_plus_k(6, 2)
    factor = gram.build_gram_factor(frame)
    G = gram.continuous_gram(factor)
    rule = factor.rule
    elems = frames.element_matrix(frame, rule.nodes)
    direct = (elems * rule.weights) @ elems.T
    assert np.abs(G - direct).max() < 1e-13


def test_dump_matrix_format(tmp_path):
    path = tmp_path / "matrix.csv"
    gram.dump_matrix(np.array([[1.0 / 3.0, 2.0], [np.pi, 4.0]]), path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().strip().split("\n")
    assert lines[0] == "0.33333333333333331,2"
    back = np.loadtxt(path, delimiter=",")
    assert np.array_equal(back, np.array([[1.0 / 3.0, 2.0], [np.pi, 4.0]]))
