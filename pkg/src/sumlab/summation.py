"""Summation methods on abstract coefficient sequences: Cesaro, Riesz,
shifted and quadratic Riesz, Bochner-Riesz; the Ingham matching
coefficients; and the majorization / comparison machinery.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfun import cesaro_numbers, cesaro_ratio

METHODS = ("Cesaro", "Riesz", "ShiftedRiesz", "QuadraticRiesz", "BochnerRiesz")


@dataclass(frozen=True)
class SummationSpec:
    """Tagged summation method.

    cutoff is the integer N for Cesaro and the real R for the others;
    c is the shift (ShiftedRiesz: any real; QuadraticRiesz: c >= 0);
    n is the sphere dimension and is required for BochnerRiesz, whose
    cutoff acts on the Laplace eigenvalue k(k+n-1).
    """

    method: str
    delta: float
    cutoff: float
    c: float = 0.0
    n: int = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.delta <= -1.0:
            raise ValueError("delta must exceed -1")
        if self.method != "Cesaro" and self.delta <= 0.0:
            raise ValueError("Riesz-type methods require delta > 0")
        if self.method == "QuadraticRiesz" and self.c < 0.0:
            raise ValueError("QuadraticRiesz requires c >= 0")
        if self.method == "BochnerRiesz" and self.n is None:
            raise ValueError("BochnerRiesz requires the sphere dimension n")
        if self.method == "Cesaro":
            if self.cutoff < 0 or self.cutoff != int(self.cutoff):
                raise ValueError("Cesaro cutoff must be a nonnegative integer")
        elif self.cutoff <= 0.0:
            raise ValueError("cutoff must be positive")


def included_indices(spec, kmax):
    """Indices k <= kmax included by the method (strict cutoff inequality)."""
    ks = np.arange(kmax + 1)
    if spec.method == "Cesaro":
        return ks[ks <= int(spec.cutoff)]
    if spec.method in ("Riesz", "ShiftedRiesz"):
        c = spec.c if spec.method == "ShiftedRiesz" else 0.0
        return ks[ks + c < spec.cutoff]
    if spec.method == "QuadraticRiesz":
        return ks[ks + spec.c < spec.cutoff]
    eig = ks * (ks + spec.n - 1.0)
    return ks[eig < spec.cutoff ** 2]


def method_weights(spec, kmax):
    """Multiplier w_k for k = 0..kmax (zero outside the included set)."""
    ks = np.arange(kmax + 1, dtype=float)
    w = np.zeros(kmax + 1)
    if spec.method == "Cesaro":
        N = int(spec.cutoff)
        top = min(N, kmax)
        if N <= 2 * kmax + 64:
            A = cesaro_numbers(spec.delta, N)
            w[:top + 1] = A[N - np.arange(top + 1)] / A[N]
        else:
            # huge horizon: stable ratio form per index
            for k in range(top + 1):
                w[k] = cesaro_ratio(spec.delta, N, k)
        return w
    if spec.method in ("Riesz", "ShiftedRiesz"):
        c = spec.c if spec.method == "ShiftedRiesz" else 0.0
        mask = ks + c < spec.cutoff
        w[mask] = (1.0 - (ks[mask] + c) / spec.cutoff) ** spec.delta
        return w
    if spec.method == "QuadraticRiesz":
        mask = ks + spec.c < spec.cutoff
        w[mask] = (1.0 - ((ks[mask] + spec.c) / spec.cutoff) ** 2) ** spec.delta
        return w
    eig = ks * (ks + spec.n - 1.0)
    mask = eig < spec.cutoff ** 2
    w[mask] = (1.0 - eig[mask] / spec.cutoff ** 2) ** spec.delta
    return w


def apply(spec, a):
    """The method's weighted sum over a finitely supported sequence."""
    a = np.asarray(a, dtype=float)
    kmax = len(a) - 1
    return float(np.dot(method_weights(spec, kmax), a))


def cesaro_means_all(a, delta, Nmax):
    """S^delta_N for every N = 0..Nmax (columns of the triangular scheme)."""
    a = np.asarray(a, dtype=float)
    kmax = len(a) - 1
    A = cesaro_numbers(delta, Nmax)
    apad = np.zeros(Nmax + 1)
    apad[:min(kmax, Nmax) + 1] = a[:Nmax + 1]
    num = np.convolve(A, apad)[:Nmax + 1]
    return num / A


def shifted_riesz_identity_check(delta, c, R, a):
    """Both sides of the shift identity
    S~^{delta,c}_R = (1 - c/R)^delta S~^delta_{R-c}; they agree to rounding."""
    if R <= c:
        raise ValueError("identity requires R > c")
    lhs = apply(SummationSpec("ShiftedRiesz", delta, R, c=c), a)
    rhs = ((1.0 - c / R) ** delta
           * apply(SummationSpec("Riesz", delta, R - c), a))
    return lhs, rhs


def bochner_riesz_reduction(n, delta, R, a):
    """Both sides of the eigenvalue-completion identity
    B^delta_R = (1 + c^2/R^2)^delta B^{delta,c}_{sqrt(R^2+c^2)}, c=(n-1)/2."""
    c = (n - 1) / 2.0
    lhs = apply(SummationSpec("BochnerRiesz", delta, R, n=n), a)
    rhs = ((1.0 + (c / R) ** 2) ** delta
           * apply(SummationSpec("QuadraticRiesz", delta,
                                 math.hypot(R, c), c=c), a))
    return lhs, rhs


def delta_lift(a, delta, rho, N):
    """S^{delta+rho}_N assembled from the lower-order means via
    A_N^{delta+rho} S^{delta+rho}_N = sum_l A_l^{rho-1} A_{N-l}^delta S_{N-l}^delta."""
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    S = cesaro_means_all(a, delta, N)
    Arho = cesaro_numbers(rho - 1.0, N)
    Ad = cesaro_numbers(delta, N)
    Atop = cesaro_numbers(delta + rho, N)[N]
    ls = np.arange(N + 1)
    return float(np.sum(Arho[ls] * Ad[N - ls] * S[N - ls]) / Atop)


def riesz_jump_grid(c, Rmax, per_unit=8, kmax=None):
    """R-grid containing every jump point k + c plus a uniform refinement;
    used to evaluate running suprema of piecewise-smooth R -> S~_R."""
    jumps = []
    k = 0
    while k + c < Rmax and (kmax is None or k <= kmax):
        if k + c > 0:
            jumps.append(k + c)
            jumps.append(k + c + 1e-9)
        k += 1
    uniform = np.linspace(max(1e-6, c + 1e-6), Rmax,
                          max(int(per_unit * Rmax), 16))
    grid = np.unique(np.concatenate([np.asarray(jumps), uniform,
                                     [Rmax]]))
    return grid[(grid > max(0.0, c)) & (grid <= Rmax)]


def riesz_running_sup(a, delta, c, Rmax, quadratic=False, per_unit=8):
    """sup over r <= Rmax of |S~^{delta,c}_r| on the jump-complete grid."""
    a = np.asarray(a, dtype=float)
    grid = riesz_jump_grid(c, Rmax, per_unit=per_unit, kmax=len(a) - 1)
    ks = np.arange(len(a), dtype=float)
    frac = (ks[None, :] + c) / grid[:, None]
    if quadratic:
        W = np.where(frac < 1.0, np.abs(1.0 - frac ** 2) ** delta, 0.0)
        W[frac >= 1.0] = 0.0
    else:
        W = np.where(frac < 1.0, (1.0 - np.minimum(frac, 1.0)) ** delta, 0.0)
    return float(np.max(np.abs(W @ a)))


def phi_mean(a, delta, c, R, rho):
    """S~^{delta+rho,c}_R, the phi(t) = t^{delta+rho} mean; majorized by
    sup_{r<=R} |S~^{delta,c}_r| since phi(1) = 1."""
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if R <= 0.0:
        raise ValueError("R must be positive")
    return apply(SummationSpec("ShiftedRiesz", delta + rho, R, c=c), a)


def _asymptotic_coeff_matrix(fns, kgrid, orders, dps=50):
    """Extract the leading 1/k expansion coefficients of each callable on a
    geometric k-grid by solving a Vandermonde system in mpmath."""
    from mpmath import mp, matrix, lu_solve, mpf
    old = mp.dps
    mp.dps = dps
    try:
        rows = len(kgrid)
        out = []
        for fn in fns:
            V = matrix(rows, orders)
            rhs = matrix(rows, 1)
            for i, k in enumerate(kgrid):
                kk = mpf(k)
                for j in range(orders):
                    V[i, j] = kk ** (-j)
                rhs[i] = fn(kk)
            sol = lu_solve(V[:orders, :], rhs[:orders])
            out.append([float(sol[j]) for j in range(orders)])
        return np.asarray(out)
    finally:
        mp.dps = old


def ingham_b_coeffs(delta):
    """Constants c_1..c_m (m = ceil(delta)+2) with
    binom(k+delta, k) ~ sum_j c_j (k + j/m)^delta through m asymptotic
    orders, so the residual is O(k^{-2}). Singular systems (integer delta)
    resolve to the minimum-norm solution."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    m = math.ceil(delta) + 2
    from mpmath import mpf, gamma as mpgamma

    kgrid = [mpf(10) ** (7 + i) for i in range(m + 3)]

    def target(k):
        return (mpgamma(k + delta + 1)
                / (mpgamma(k + 1) * mpgamma(delta + 1))) / k ** mpf(delta)

    fns = [target]
    for j in range(1, m + 1):
        fns.append(lambda k, j=j: (k + mpf(j) / m) ** mpf(delta) / k ** mpf(delta))
    coeffs = _asymptotic_coeff_matrix(fns, kgrid, m)
    b = coeffs[0]
    M = coeffs[1:].T  # M[i, j-1] = coeff of k^{-i} in (k+j/m)^delta / k^delta
    sol, *_ = np.linalg.lstsq(M, b, rcond=1e-10)
    return sol


def ingham_a_polys(delta, eps):
    """Values p_0(eps)..p_m(eps) (m = ceil(delta)+1) with
    (k+eps)^delta ~ sum_j p_j(eps) A^delta_{k-j} through m+1 orders."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    m = math.ceil(delta) + 1
    from mpmath import mpf, gamma as mpgamma

    kgrid = [mpf(10) ** (7 + i) for i in range(m + 4)]

    def target(k):
        return (k + mpf(eps)) ** mpf(delta) / k ** mpf(delta)

    fns = [target]
    for j in range(m + 1):
        def basis(k, j=j):
            return (mpgamma(k - j + delta + 1)
                    / (mpgamma(k - j + 1) * mpgamma(delta + 1))) / k ** mpf(delta)
        fns.append(basis)
    coeffs = _asymptotic_coeff_matrix(fns, kgrid, m + 1)
    b = coeffs[0]
    M = coeffs[1:].T
    sol, *_ = np.linalg.lstsq(M, b, rcond=1e-10)
    return sol


def _cesaro_numbers_ext(delta, kmax):
    # extended-precision A_0..A_kmax so that k^2-amplified residuals are not
    # swamped by cumulative rounding at k ~ 1e4
    out = np.empty(kmax + 1, dtype=np.longdouble)
    out[0] = 1.0
    ks = np.arange(1, kmax + 1, dtype=np.longdouble)
    np.cumprod((delta + ks) / ks, out=out[1:])
    return out


def ingham_b_residual(delta, coeffs, ks):
    """k^2 |binom(k+delta,k) - sum_j c_j (k+j/m)^delta| on an integer grid."""
    m = len(coeffs)
    ks = np.asarray(ks, dtype=int)
    A = _cesaro_numbers_ext(delta, int(np.max(ks)))
    target = A[ks]
    kf = ks.astype(np.longdouble)
    approx = np.zeros_like(kf)
    for j, cj in enumerate(coeffs, start=1):
        approx += np.longdouble(cj) * (kf + np.longdouble(j) / m) ** np.longdouble(delta)
    return (kf ** 2 * np.abs(target - approx)).astype(float)


def ingham_a_residual(delta, eps, polys, ks):
    """k^2 |(k+eps)^delta - sum_j p_j A^delta_{k-j}| on an integer grid."""
    ks = np.asarray(ks, dtype=int)
    A = _cesaro_numbers_ext(delta, int(np.max(ks)))
    kf = ks.astype(np.longdouble)
    target = (kf + np.longdouble(eps)) ** np.longdouble(delta)
    approx = np.zeros_like(kf)
    for j, pj in enumerate(polys):
        kj = ks - j
        valid = kj >= 0
        term = np.zeros_like(kf)
        term[valid] = A[kj[valid]]
        approx += np.longdouble(pj) * term
    return (kf ** 2 * np.abs(target - approx)).astype(float)


@dataclass(frozen=True)
class ComparisonRecord:
    sup_cesaro: float
    sup_riesz: float
    proj_bound: float


def compare_methods(a, delta, horizon):
    """Running suprema of Cesaro and Riesz means up to the horizon plus the
    normalized coefficient bound sup_k |a_k|/(k+1)^delta."""
    a = np.asarray(a, dtype=float)
    N = int(horizon)
    sup_c = float(np.max(np.abs(cesaro_means_all(a, delta, N))))
    sup_r = riesz_running_sup(a, delta, 0.0, float(horizon))
    ks = np.arange(len(a), dtype=float)
    proj = float(np.max(np.abs(a) / (ks + 1.0) ** delta))
    return ComparisonRecord(sup_c, sup_r, proj)
