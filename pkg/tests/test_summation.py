import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sumlab.summation import (SummationSpec, apply,
                              bochner_riesz_reduction, cesaro_means_all,
                              compare_methods, delta_lift, included_indices,
                              ingham_a_polys, ingham_a_residual,
                              ingham_b_coeffs, ingham_b_residual,
                              method_weights, phi_mean, riesz_jump_grid,
                              riesz_running_sup,
                              shifted_riesz_identity_check)


# ----------------------------------------------------------------- validity

def test_spec_validation():
    with pytest.raises(ValueError):
        SummationSpec("Abel", 1.0, 2.0)
    with pytest.raises(ValueError):
        SummationSpec("Riesz", -0.5, 2.0)
    with pytest.raises(ValueError):
        SummationSpec("QuadraticRiesz", 1.0, 2.0, c=-0.5)
    with pytest.raises(ValueError):
        SummationSpec("BochnerRiesz", 1.0, 2.0)
    with pytest.raises(ValueError):
        SummationSpec("Cesaro", 1.0, 2.5)


# -------------------------------------------------------------------- apply

def test_apply_k0_only():
    for spec in (SummationSpec("Cesaro", 0.5, 4),
                 SummationSpec("Riesz", 1.0, 2.3),
                 SummationSpec("ShiftedRiesz", 1.0, 2.3, c=0.4),
                 SummationSpec("QuadraticRiesz", 1.0, 2.3, c=0.4),
                 SummationSpec("BochnerRiesz", 1.0, 2.3, n=2)):
        assert apply(spec, [1.0]) == pytest.approx(
            float(method_weights(spec, 0)[0]))
    assert apply(SummationSpec("Cesaro", 0.5, 4), [1.0]) == 1.0


def test_apply_cesaro_constant_sequence():
    # sum A^d_{N-k} / A^d_N = A^{d+1}_N / A^d_N = (N+d+1)/(d+1)
    for delta in (0.0, 0.5, 2.0):
        for N in (0, 3, 9):
            val = apply(SummationSpec("Cesaro", delta, N), np.ones(N + 1))
            assert val == pytest.approx((N + delta + 1.0) / (delta + 1.0),
                                        rel=1e-13)


def test_apply_riesz_example():
    assert apply(SummationSpec("Riesz", 1.0, 2.0), [1.0, 1.0]) == 1.5


def test_strict_cutoff():
    # k + c = R exactly must be excluded
    spec = SummationSpec("Riesz", 1.0, 3.0)
    assert np.array_equal(included_indices(spec, 10), [0, 1, 2])
    spec = SummationSpec("ShiftedRiesz", 1.0, 3.0, c=1.0)
    assert np.array_equal(included_indices(spec, 10), [0, 1])
    # Bochner-Riesz: k(k+n-1) < R^2
    spec = SummationSpec("BochnerRiesz", 1.0, math.sqrt(6.0), n=2)
    assert np.array_equal(included_indices(spec, 10), [0, 1])


def test_monotone_cutoff_inclusion():
    for make in (lambda R: SummationSpec("Riesz", 0.7, R),
                 lambda R: SummationSpec("QuadraticRiesz", 0.7, R, c=0.3),
                 lambda R: SummationSpec("BochnerRiesz", 0.7, R, n=3)):
        prev = set()
        for R in np.linspace(0.5, 20.0, 40):
            cur = set(included_indices(make(R), 40).tolist())
            assert prev <= cur
            prev = cur


def test_all_methods_agree_at_huge_cutoff():
    rng = np.random.default_rng(1)
    a = rng.uniform(-1.0, 1.0, 12)
    total = float(np.sum(a))
    huge = 1e12
    c = 1.3
    vals = [
        apply(SummationSpec("Cesaro", 0.5, int(huge)), a),
        apply(SummationSpec("Riesz", 0.5, huge), a),
        apply(SummationSpec("ShiftedRiesz", 0.5, huge, c=c), a),
        apply(SummationSpec("QuadraticRiesz", 0.5, huge, c=c), a),
        apply(SummationSpec("BochnerRiesz", 0.5, huge, n=2), a),
    ]
    for v in vals:
        assert v == pytest.approx(total, abs=1e-10)
    # index sets saturate once the cutoff clears 2 * support * (1 + |c|)
    kmax = len(a) - 1
    R0 = 2.0 * kmax * (1.0 + abs(c))
    for spec in (SummationSpec("ShiftedRiesz", 0.5, R0, c=c),
                 SummationSpec("QuadraticRiesz", 0.5, R0, c=c),
                 SummationSpec("BochnerRiesz", 0.5, R0, n=2)):
        assert len(included_indices(spec, kmax)) == kmax + 1


# ---------------------------------------------------------------- identities

def test_shifted_identity_c_zero():
    a = np.array([0.3, -0.7, 1.1])
    lhs, rhs = shifted_riesz_identity_check(0.8, 0.0, 2.7, a)
    assert lhs == rhs


def test_shifted_identity_example():
    lhs, rhs = shifted_riesz_identity_check(1.0, 0.5, 3.0, np.ones(3))
    assert lhs == pytest.approx(rhs, rel=1e-14)


def test_shifted_identity_requires_R_above_c():
    with pytest.raises(ValueError):
        shifted_riesz_identity_check(1.0, 2.0, 1.5, [1.0])


@given(st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_shifted_identity_random(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, rng.integers(1, 51))
    delta = rng.uniform(0.05, 2.5)
    c = rng.uniform(-2.0, 2.0)
    R = max(c, 0.0) + rng.uniform(0.3, 25.0)
    lhs, rhs = shifted_riesz_identity_check(delta, c, R, a)
    scale = max(abs(lhs), abs(rhs), float(np.sum(np.abs(a))) * 1e-4)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_bochner_reduction_k0():
    lhs, rhs = bochner_riesz_reduction(2, 0.7, 4.0, [1.0])
    assert lhs == pytest.approx(1.0, rel=1e-14)
    assert rhs == pytest.approx(1.0, rel=1e-14)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_bochner_reduction_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    a = rng.uniform(-1.0, 1.0, rng.integers(1, 41))
    delta = rng.uniform(0.05, 2.0)
    R = rng.uniform(0.6, 40.0) + 0.111
    lhs, rhs = bochner_riesz_reduction(n, delta, R, a)
    scale = max(abs(lhs), abs(rhs), float(np.sum(np.abs(a))) * 1e-4)
    assert abs(lhs - rhs) <= 1e-12 * scale


# ---------------------------------------------------------------- delta lift

def test_delta_lift_N0():
    assert delta_lift([2.5, 1.0], 0.3, 1.0, 0) == pytest.approx(2.5)


def test_delta_lift_hand_identity_N3():
    # rho = 1, delta = 0: S^1_3 = sum of partial sums / 4... checked by hand:
    # A^1_3 S^1_3 = sum_{l<=3} S^0_{3-l} with S^0_k the partial sums
    a = np.array([1.0, -2.0, 0.5, 3.0])
    partial = np.cumsum(a)
    expected = float(np.sum(partial)) / 4.0
    assert delta_lift(a, 0.0, 1.0, 3) == pytest.approx(expected, rel=1e-13)


def test_delta_lift_matches_direct():
    rng = np.random.default_rng(3)
    for _ in range(40):
        a = rng.uniform(-1.0, 1.0, rng.integers(2, 30))
        delta = rng.uniform(-0.5, 2.0)
        rho = rng.uniform(0.2, 3.0)
        N = int(rng.integers(0, 40))
        lhs = delta_lift(a, delta, rho, N)
        rhs = apply(SummationSpec("Cesaro", delta + rho, N), a)
        assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-13)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=300, deadline=None)
def test_majorization_lemma_a(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, rng.integers(2, 30))
    delta = rng.uniform(-0.5, 2.0)
    rho = rng.uniform(0.2, 3.0)
    N = int(rng.integers(0, 40))
    hi = abs(cesaro_means_all(a, delta + rho, N)[N])
    lo = float(np.max(np.abs(cesaro_means_all(a, delta, N))))
    assert hi <= lo + 1e-10


# ------------------------------------------------------------------ phi mean

def test_phi_mean_constant_sequence():
    # a = (1): (1 - c/R)^{d+rho} <= sup_r (1 - c/r)^d for c >= 0
    val = phi_mean([1.0], 0.8, 0.5, 4.0, 1.0)
    assert val == pytest.approx((1.0 - 0.5 / 4.0) ** 1.8, rel=1e-13)
    sup = riesz_running_sup(np.array([1.0]), 0.8, 0.5, 4.0)
    assert val <= sup + 1e-12


@given(st.integers(0, 10 ** 6))
@settings(max_examples=200, deadline=None)
def test_phi_mean_majorized(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, rng.integers(2, 25))
    delta = rng.uniform(0.1, 1.5)
    rho = 1.0
    c = rng.uniform(0.0, 1.5)
    R = rng.uniform(1.5, 30.0) + 0.23
    val = abs(phi_mean(a, delta, c, R, rho))
    grid = riesz_jump_grid(c, R, per_unit=64, kmax=len(a) - 1)
    sup = max(abs(apply(SummationSpec("ShiftedRiesz", delta, r, c=c), a))
              for r in grid)
    assert val <= sup + 1e-10


# -------------------------------------------------------------------- ingham

def test_ingham_b_delta1_exact_solution():
    ks = np.arange(10, 10001)
    resid = ingham_b_residual(1.0, [0.0, 0.0, 1.0], ks)
    assert float(np.max(resid)) < 1e-3


def test_ingham_b_leading_order_sum():
    # matching the k^delta coefficient forces sum c_j = 1/Gamma(delta+1)
    for d in (0.5, 1.0):
        c = ingham_b_coeffs(d)
        assert float(np.sum(c)) == pytest.approx(1.0 / math.gamma(d + 1.0),
                                                 rel=1e-8)


def test_ingham_b_contract():
    ks = np.arange(10, 10001)
    ks2 = np.arange(10, 20001)
    c = ingham_b_coeffs(0.5)
    r1 = float(np.max(ingham_b_residual(0.5, c, ks)))
    r2 = float(np.max(ingham_b_residual(0.5, c, ks2)))
    assert r1 < 0.1
    assert r2 <= 1.1 * r1


def test_ingham_a_delta1_exact():
    p = ingham_a_polys(1.0, 0.7)
    ks = np.arange(10, 5001)
    assert float(np.max(ingham_a_residual(1.0, 0.7, p, ks))) < 1e-3


def test_ingham_a_contract():
    ks = np.arange(10, 10001)
    ks2 = np.arange(10, 20001)
    for eps in (0.25, 1.0):
        p = ingham_a_polys(0.5, eps)
        r1 = float(np.max(ingham_a_residual(0.5, eps, p, ks)))
        r2 = float(np.max(ingham_a_residual(0.5, eps, p, ks2)))
        assert r1 < 0.1
        assert r2 <= 1.1 * r1


# ---------------------------------------------------------------- comparison

def test_compare_methods_constant():
    rec = compare_methods([1.0], 0.5, 16.0)
    assert rec.sup_cesaro == pytest.approx(1.0)
    assert rec.sup_riesz == pytest.approx(1.0, rel=1e-6)
    assert rec.proj_bound == pytest.approx(1.0)
    assert rec.sup_cesaro <= 2.0 * (rec.sup_riesz + rec.proj_bound)
    assert rec.sup_riesz <= 2.0 * (rec.sup_cesaro + rec.proj_bound)


def test_compare_methods_scaling_equivariance():
    rng = np.random.default_rng(7)
    a = rng.uniform(-1.0, 1.0, 10)
    r1 = compare_methods(a, 0.5, 32.0)
    r2 = compare_methods(3.0 * a, 0.5, 32.0)
    assert r2.sup_cesaro == pytest.approx(3.0 * r1.sup_cesaro, rel=1e-12)
    assert r2.sup_riesz == pytest.approx(3.0 * r1.sup_riesz, rel=1e-12)
    assert r2.proj_bound == pytest.approx(3.0 * r1.proj_bound, rel=1e-12)


def test_compare_methods_alternating():
    a = np.array([1.0, -1.0] * 8)
    rec = compare_methods(a, 0.5, 64.0)
    assert np.isfinite(rec.sup_cesaro) and np.isfinite(rec.sup_riesz)
    assert rec.sup_cesaro > 0 and rec.sup_riesz > 0


def test_quadratic_riesz_series_identity_40_terms():
    # (1-t^2)^d = 2^d (1-t)^d + 2^d sum_l binom(d,l) (-1)^l 2^{-l} (1-t)^{d+l}
    # transferred to the means; 40 terms reach 1e-8 * l1(a)
    from sumlab.specfun import gen_binomial
    rng = np.random.default_rng(11)
    d0 = 0.5
    for _ in range(25):
        a = rng.uniform(-1.0, 1.0, rng.integers(2, 30))
        c = float(rng.choice([0.0, 0.5, 1.0]))
        R = rng.uniform(2.0, 100.0) + 0.171
        lhs = apply(SummationSpec("QuadraticRiesz", d0, R, c=c), a)
        series = apply(SummationSpec("ShiftedRiesz", d0, R, c=c), a)
        for ell in range(1, 41):
            series += (gen_binomial(d0, ell) * (-1.0) ** ell * 2.0 ** -ell
                       * apply(SummationSpec("ShiftedRiesz", d0 + ell, R,
                                             c=c), a))
        assert abs(lhs - 2.0 ** d0 * series) <= 1e-8 * float(np.sum(np.abs(a)))
