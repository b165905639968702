import math

import numpy as np
import pytest

from sumlab.kernels import (amplitude, cesaro_kernel,
                            cesaro_profile, convolve_atomic, decompose,
                            error_series, error_series_coefficients,
                            harmonic_dim, jacobi_params, main_profile,
                            main_term, main_term_asymptote, szego_coefficient,
                            szego_coefficients, szego_limit, zonal_kernel,
                            zonal_profile)
from sumlab.specfun import cesaro_numbers, delta0, jacobi_profile, log_gamma
from sumlab.sphere import AtomicMeasure, SpherePoint, sample_uniform


def pt_at(theta):
    return SpherePoint((math.sin(theta), 0.0, math.cos(theta)))


# -------------------------------------------------------------- zonal kernel

def test_zonal_examples():
    assert zonal_kernel(2, 0, 1.1) == pytest.approx(1.0)
    for k in (0, 1, 2, 7):
        assert zonal_kernel(2, k, 0.0) == pytest.approx(2 * k + 1, rel=1e-13)
    assert zonal_kernel(2, 2, 0.0) == pytest.approx(5.0, rel=1e-13)


def test_zonal_matches_dimension_formula():
    for n in (2, 3, 4):
        Z0 = zonal_profile(n, 60, 0.0)
        for k in range(61):
            assert float(Z0[k]) == pytest.approx(harmonic_dim(n, k),
                                                 rel=1e-11)


def test_harmonic_dim_n2():
    # binom(k+2, k) - binom(k, k-2) = 2k + 1
    assert harmonic_dim(2, 2) == 5
    assert [harmonic_dim(2, k) for k in range(5)] == [1, 3, 5, 7, 9]


# ------------------------------------------------------------- cesaro kernel

def test_cesaro_kernel_examples():
    assert cesaro_kernel(2, 0.7, 0, 0.9) == pytest.approx(1.0)
    assert cesaro_kernel(2, 0.0, 1, 0.0) == pytest.approx(4.0, rel=1e-13)


def test_cesaro_kernel_integrates_to_one():
    from sumlab.sphere import sphere_quadrature
    for n in (2, 3):
        for delta, N in ((0.5, 7), (1.0, 25), (2.5, 60)):
            est, _ = sphere_quadrature(
                n, lambda th: np.array([cesaro_kernel(n, delta, N, float(t))
                                        for t in np.atleast_1d(th)]),
                400, zonal=True)
            assert est == pytest.approx(1.0, abs=1e-10)


def test_cesaro_profile_matches_pointwise():
    prof = cesaro_profile(2, 0.5, 64, 0.8)
    for N in (0, 1, 17, 64):
        assert prof[N] == pytest.approx(cesaro_kernel(2, 0.5, N, 0.8),
                                        rel=1e-11)


# -------------------------------------------------------- main term constant

def test_szego_limit_values():
    assert szego_limit(2) == pytest.approx(math.sqrt(math.pi) * 2 ** -1.5)
    assert szego_limit(3) == pytest.approx(math.sqrt(math.pi) / 8.0)


def test_szego_coefficient_converges_to_limit_from_above():
    for n in (2, 3):
        Ns = 2 ** np.arange(4, 13)
        vals = szego_coefficients(n, Ns) / np.sqrt(Ns)
        gaps = np.abs(vals - szego_limit(n))
        assert np.all(np.diff(gaps) < 0.0)


def test_main_term_cutoff_and_endpoint():
    assert main_term(2, 3, 3 * math.pi / 4) == 0.0
    # C_1 * P_1^{(3/2,0)}(1) = C_1 * 5/2
    assert main_term(2, 1, 0.0) == pytest.approx(
        szego_coefficient(2, 1) * 2.5, rel=1e-12)


def test_main_profile_matches_scalar():
    prof = main_profile(2, 32, 0.7)
    for N in (1, 5, 32):
        assert prof[N] == pytest.approx(main_term(2, N, 0.7), rel=1e-11)


# ----------------------------------------------------------------- amplitude

def test_amplitude_example():
    # pi^{-1/2} * 2 * 2^{1/4}
    assert amplitude(2, math.pi / 2) == pytest.approx(
        math.pi ** -0.5 * 2.0 * 2.0 ** 0.25, rel=1e-12)


def test_amplitude_dominates_inverse_power():
    # sin(u) <= u gives amplitude >= pi^{-1/2} theta^{-n} for theta <= pi/2
    for n in (2, 3):
        for theta in (0.1, 0.5, 1.2, math.pi / 2):
            assert amplitude(n, theta) >= math.pi ** -0.5 * theta ** -n


def test_amplitude_antipodal_exponent():
    # amplitude * (pi - theta)^{(n-1)/2} tends to a constant at pi
    for n in (2, 3):
        vals = [amplitude(n, math.pi - eps) * eps ** ((n - 1) / 2.0)
                for eps in (1e-3, 1e-5)]
        assert vals[0] == pytest.approx(vals[1], rel=1e-4)


def test_amplitude_singularities():
    with pytest.raises(ValueError):
        amplitude(2, 0.0)
    with pytest.raises(ValueError):
        amplitude(2, math.pi)


def test_main_term_asymptote_error_decays():
    alpha, beta = jacobi_params(2)
    P = jacobi_profile(alpha, beta, 1024, math.cos(1.0))
    e16 = abs(float(P[16]) - main_term_asymptote(2, 16, 1.0))
    e1024 = abs(float(P[1024]) - main_term_asymptote(2, 1024, 1.0))
    assert e1024 < e16 / 100.0


# -------------------------------------------------------------- error series

def _exact_error_term(n, N, theta):
    # closed form: the series sums per zonal coefficient to a Gauss 2F1
    d0 = delta0(n)
    v = (3.0 * n + 1.0) / 2.0
    A = cesaro_numbers(d0, N)
    w = A[::-1] / A[N]
    ks = np.arange(N + 1.0)
    lg = log_gamma
    G = np.exp(lg(2 * N + v) + lg(N + ks + v - 1.0)
               - lg(2 * N + v + d0) - lg(N + ks + v - d0 - 1.0))
    coef = w * (1.0 - G)
    Z = zonal_profile(n, N, theta)
    return float(np.dot(coef, Z))


def test_error_series_converges_to_exact_closed_form():
    for n in (2, 4):
        for N in (3, 11):
            for theta in (0.4, 1.3):
                exact = _exact_error_term(n, N, theta)
                val = error_series(n, N, theta, trunc=400).value
                assert val == pytest.approx(exact, rel=1e-10, abs=1e-12)


def test_error_series_residual_below_reported_bound():
    for n in (2, 3):
        d0 = delta0(n)
        for N in (5, 20, 100):
            for theta in (0.3, 0.7, 1.2):
                K = cesaro_kernel(n, d0, N, theta)
                es = error_series(n, N, theta, trunc=40)
                resid = abs(K - main_term(n, N, theta) - es.value)
                # small allowance for double rounding in the three summands
                assert resid <= es.tail_bound + 1e-11 * (1.0 + abs(K))


def test_szego_identity_moderate_degrees():
    # at N >= 20 the trunc=40 tail is far below the 1e-8 scale
    for n in (2, 3):
        d0 = delta0(n)
        for N in (20, 100):
            for theta in (0.3, 0.7, 1.2):
                K = cesaro_kernel(n, d0, N, theta)
                es = error_series(n, N, theta, trunc=40)
                resid = abs(K - main_term(n, N, theta) - es.value)
                assert resid <= 1e-8 * (1.0 + abs(K))


def test_error_series_terminates_for_odd_sphere():
    # integer critical order: binom(1, l) vanishes beyond l = 1
    c = error_series_coefficients(3, 9, 10)
    assert c[0] == pytest.approx((9 + 2.0) / (2 * 9 + 5.0), rel=1e-13)
    assert np.all(c[1:] == 0.0)


def test_error_series_tail_bound_halves():
    for N in (10, 40):
        bounds = [error_series(2, N, 0.8, trunc=L).tail_bound
                  for L in range(1, 16)]
        ratios = np.array(bounds[1:]) / np.array(bounds[:-1])
        assert np.all(ratios <= 0.75)


def test_error_series_leading_term_sign():
    # first term equals -(-1) binom(d0,1) ratio K^{d0+1}: positive multiple
    from sumlab.specfun import gen_binomial
    n, N, theta = 2, 12, 0.6
    d0 = delta0(n)
    k1 = cesaro_kernel(n, d0 + 1.0, N, theta)
    term1 = error_series(n, N, theta, trunc=1).value
    lead = -(-1.0) * gen_binomial(d0, 1)
    assert term1 * (lead * k1) > 0.0


# ------------------------------------------------------------- decomposition

def test_decompose_branch_activity():
    d_near = decompose(2, 9, 0.8)
    assert d_near.antipodal == 0.0
    assert d_near.main != 0.0
    d_far = decompose(2, 9, 2.5)
    assert d_far.main == 0.0 and d_far.error == 0.0
    assert d_far.antipodal == pytest.approx(
        cesaro_kernel(2, 0.5, 9, 2.5), rel=1e-12)


def test_decompose_reproduces_kernel_within_tolerance():
    for n in (2, 3):
        d0 = delta0(n)
        for N in (6, 33):
            for theta in (0.2, 1.1, 2.0, 2.9):
                d = decompose(n, N, theta)
                K = cesaro_kernel(n, d0, N, theta)
                assert abs(d.total - K) <= d.tail_bound + 1e-10


# ----------------------------------------------------------------- convolve

def test_convolve_point_mass():
    pole = SpherePoint((0.0, 0.0, 1.0))
    mu = AtomicMeasure.point_mass(pole)
    x = pt_at(0.9)
    val = convolve_atomic(lambda N, th: cesaro_kernel(2, 0.5, N, th),
                          mu, x, 7)
    assert val == pytest.approx(cesaro_kernel(2, 0.5, 7, 0.9), rel=1e-12)


def test_convolve_linearity_and_mass():
    pts = sample_uniform(2, 5, seed=2)
    mu = AtomicMeasure.uniform(pts)
    x = pt_at(1.3)
    kernel = lambda N, th: cesaro_kernel(2, 0.5, N, th)
    v = convolve_atomic(kernel, mu, x, 6)
    mu2 = AtomicMeasure(pts, 2.0 * mu.weights)
    assert convolve_atomic(kernel, mu2, x, 6) == pytest.approx(2 * v,
                                                               rel=1e-12)
    assert convolve_atomic(kernel, mu, x, 0) == pytest.approx(1.0, rel=1e-12)


# --------------------------------------------- reproducing kernel, general x

def test_projection_composition_spot_check():
    # int Z_k(x, y) Z_l(y, z) dy = delta_{kl} Z_k(x, z) on S^2 via a
    # product Gauss x trapezoid grid (exact for trigonometric polynomials)
    from numpy.polynomial.legendre import leggauss
    nodes, weights = leggauss(96)
    phis = np.linspace(0.0, 2 * math.pi, 192, endpoint=False)
    theta = np.arccos(nodes)
    TH, PH = np.meshgrid(theta, phis, indexing="ij")
    Y = np.stack([np.sin(TH) * np.cos(PH), np.sin(TH) * np.sin(PH),
                  np.cos(TH)], axis=-1).reshape(-1, 3)
    W = np.repeat(weights, 192) / (2.0 * 192)

    x = np.array([0.0, 0.0, 1.0])
    gamma = 1.1
    z = np.array([math.sin(gamma), 0.0, math.cos(gamma)])
    tx = np.arccos(np.clip(Y @ x, -1, 1))
    tz = np.arccos(np.clip(Y @ z, -1, 1))
    for k, l in ((2, 2), (3, 5), (6, 6), (1, 4)):
        Zk = zonal_profile(2, k, tx)[k]
        Zl = zonal_profile(2, l, tz)[l]
        integral = float(np.sum(W * Zk * Zl))
        expected = zonal_kernel(2, k, gamma) if k == l else 0.0
        assert integral == pytest.approx(expected, abs=1e-9)
