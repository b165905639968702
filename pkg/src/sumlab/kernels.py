"""Zonal projection kernels, critical-index Cesaro kernels, and the
main-term / error-series / antipodal decomposition.

Every kernel here is zonal: it depends on the two points only through their
geodesic distance theta, so all evaluators take (N, theta) and the sphere
enters through precomputed angles.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np

from .specfun import (cesaro_numbers, delta0, gen_binomials, jacobi_profile,
                      gegenbauer_profile, log_gamma)


def harmonic_dim(n, k):
    """Dimension of the space of degree-k spherical harmonics on S^n."""
    if k == 0:
        return 1
    if k == 1:
        return n + 1
    return math.comb(k + n, k) - math.comb(k - 2 + n, k - 2)


def harmonic_dims(n, kmax):
    """Vector of harmonic space dimensions for k = 0..kmax."""
    return np.array([harmonic_dim(n, k) for k in range(kmax + 1)], dtype=float)


def zonal_profile(n, kmax, theta):
    """Z_k(theta) = ((k+lam)/lam) C_k^lam(cos theta) for k = 0..kmax.

    theta may be scalar or ndarray; the leading axis indexes k.
    """
    lam = delta0(n)
    t = np.cos(np.asarray(theta, dtype=float))
    geg = gegenbauer_profile(lam, kmax, t)
    ks = np.arange(kmax + 1.0).reshape((kmax + 1,) + (1,) * np.ndim(t))
    out = (ks + lam) / lam * geg
    return out


def zonal_kernel(n, k, theta):
    """Z_k(theta), the reproducing kernel of degree-k harmonics."""
    val = zonal_profile(n, int(k), theta)[int(k)]
    return float(val) if np.ndim(val) == 0 else val


def cesaro_kernel(n, delta, N, theta):
    """K_N^delta(theta) = (1/A_N^delta) sum_k A_{N-k}^delta Z_k(theta)."""
    if delta <= -1.0:
        raise ValueError("cesaro_kernel requires delta > -1")
    N = int(N)
    Z = zonal_profile(n, N, theta)
    A = cesaro_numbers(delta, N)
    w = A[::-1] / A[N]
    return float(np.tensordot(w, Z, axes=(0, 0))) if np.ndim(theta) == 0 \
        else np.tensordot(w, Z, axes=(0, 0))


def cesaro_profile(n, delta, Nmax, theta):
    """K_N^delta(theta) for every N = 0..Nmax at a scalar angle.

    The numerators over N form a discrete convolution of the Cesaro weights
    with the zonal values, so the whole profile costs O(Nmax^2) scalar work
    (FFT above 4096).
    """
    Z = zonal_profile(n, Nmax, float(theta))
    A = cesaro_numbers(delta, Nmax)
    if Nmax > 4096:
        from scipy.signal import fftconvolve
        num = fftconvolve(A, Z)[:Nmax + 1]
    else:
        num = np.convolve(A, Z)[:Nmax + 1]
    return num / A


def szego_limit(n):
    """Limit of szego_coefficient(n, N) / sqrt(N) as N grows."""
    return math.sqrt(math.pi) * 2.0 ** (-1.5 * (n - 1))


def szego_coefficients(n, Ns):
    """Main-term coefficients C_N of the critical-index kernel expansion,
    for an array of degrees N >= 1.

    Closed form (lam = delta0 = (n-1)/2):

        C_N = (N+lam) 4^N (lam)_N Gamma(N+(3n-1)/2) Gamma(2N+(3n+1)/2)
              / ( lam A_N^{lam} Gamma(2N+2n) Gamma(2N+n) )

    With this normalization K_N - C_N P_N^{(n-1/2,(n-2)/2)}(cos theta) is
    exactly the convergent error series of error_series(); the ratio
    C_N/sqrt(N) tends to szego_limit(n).
    """
    lam = delta0(n)
    Ns = np.asarray(Ns, dtype=float)
    if np.any(Ns < 1):
        raise ValueError("szego_coefficient requires N >= 1")
    lg = log_gamma
    logA = lg(Ns + lam + 1.0) - lg(Ns + 1.0) - lg(lam + 1.0)
    val = (np.log(Ns + lam) + Ns * math.log(4.0)
           + lg(lam + Ns) - lg(lam) - math.log(lam)
           + lg(Ns + (3.0 * n - 1.0) / 2.0)
           + lg(2.0 * Ns + (3.0 * n + 1.0) / 2.0)
           - logA - lg(2.0 * Ns + 2.0 * n) - lg(2.0 * Ns + n))
    return np.exp(val)


def szego_coefficient(n, N):
    """Main-term coefficient C_N for a single degree N >= 1."""
    return float(szego_coefficients(n, np.array([float(N)]))[0])


def amplitude(n, theta):
    """Oscillation amplitude k(theta) of the Jacobi asymptotics:
    pi^{-1/2} (sin theta/2)^{-n} (sin (pi-theta)/2)^{-(n-1)/2}."""
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise ValueError("amplitude is singular at 0 and pi")
    return (math.pi ** -0.5
            * math.sin(theta / 2.0) ** (-float(n))
            * math.cos(theta / 2.0) ** (-(n - 1) / 2.0))


def phase(n, N, theta):
    """Phase of the main-term oscillation, (N + (3n-1)/4) theta - n pi/2."""
    return (N + (3.0 * n - 1.0) / 4.0) * theta - n * math.pi / 2.0


def main_term_asymptote(n, N, theta):
    """Leading Jacobi asymptotics N^{-1/2} k(theta) cos(phase)."""
    return N ** -0.5 * amplitude(n, theta) * math.cos(phase(n, N, theta))


def jacobi_params(n):
    """Jacobi parameter pair (n-1/2, (n-2)/2) of the main term."""
    return n - 0.5, (n - 2) / 2.0


def main_term(n, N, theta):
    """Main term C_N P_N^{(n-1/2,(n-2)/2)}(cos theta), cut off beyond pi/2."""
    N = int(N)
    if N < 1:
        raise ValueError("main_term requires N >= 1")
    theta = float(theta)
    if theta > math.pi / 2.0:
        return 0.0
    alpha, beta = jacobi_params(n)
    P = jacobi_profile(alpha, beta, N, math.cos(theta))[N]
    return szego_coefficient(n, N) * float(P)


def main_profile(n, Nmax, theta):
    """Main term for every N = 1..Nmax (index 0 unused, set to 0)."""
    theta = float(theta)
    out = np.zeros(Nmax + 1)
    if theta > math.pi / 2.0:
        return out
    alpha, beta = jacobi_params(n)
    P = jacobi_profile(alpha, beta, Nmax, math.cos(theta))
    Ns = np.arange(1, Nmax + 1)
    out[1:] = szego_coefficients(n, Ns) * P[1:]
    return out


def error_series_coefficients(n, N, lmax):
    """Coefficients c_l, l = 1..lmax, of the error series
    E_N = sum_l c_l K_N^{delta0+l}:

        c_l = -(-1)^l binom(delta0, l)
              (N + (n+1)/2)_l / (2N + (3n+1)/2)_l
    """
    d0 = delta0(n)
    binoms = gen_binomials(d0, lmax)[1:]
    ls = np.arange(lmax, dtype=float)
    ratio = np.cumprod((N + (n + 1.0) / 2.0 + ls)
                       / (2.0 * N + (3.0 * n + 1.0) / 2.0 + ls))
    signs = -((-1.0) ** np.arange(1, lmax + 1))
    return signs * binoms * ratio


@functools.lru_cache(maxsize=4096)
def _coeff_tail_sum(n, N, trunc):
    # sum of |c_l| for l > trunc, summed until negligible
    block = 4096
    d0 = delta0(n)
    total = 0.0
    # recompute |c| from scratch up to trunc+block, keep extending
    lmax = trunc
    last = None
    while lmax < 200000:
        lmax += block
        c = np.abs(error_series_coefficients(n, N, lmax))
        tail = float(np.sum(c[trunc:]))
        if last is not None and tail - last < 1e-16 * max(tail, 1.0):
            return tail
        last = tail
    return last


@dataclass(frozen=True)
class ErrorSeriesValue:
    value: float
    tail_bound: float


def error_series(n, N, theta, trunc=40):
    """Partial sum through l = trunc of the error series, plus a bound on
    the discarded tail (tail coefficient mass times the largest kernel
    magnitude seen)."""
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    N = int(N)
    theta = float(theta)
    d0 = delta0(n)
    coeffs = error_series_coefficients(n, N, trunc)
    Z = zonal_profile(n, N, theta)
    vals = np.empty(trunc)
    kmag = 1.0
    for i, ell in enumerate(range(1, trunc + 1)):
        A = cesaro_numbers(d0 + ell, N)
        k_val = float(np.dot(A[::-1] / A[N], Z))
        vals[i] = k_val
        kmag = max(kmag, abs(k_val))
    value = float(np.dot(coeffs, vals))
    tail = _coeff_tail_sum(n, N, trunc) * kmag
    return ErrorSeriesValue(value=value, tail_bound=tail)


@dataclass(frozen=True)
class KernelDecomposition:
    """Triple (main, error, antipodal) at a given (N, theta); exactly one of
    {main+error, antipodal} is active depending on which side of pi/2 the
    angle falls."""

    main: float
    error: float
    antipodal: float
    N: int
    theta: float
    trunc: int
    tail_bound: float

    @property
    def total(self):
        return self.main + self.error + self.antipodal


def decompose(n, N, theta, trunc=40):
    """Split K_N(theta) into main term, truncated error series and antipodal
    part."""
    N = int(N)
    theta = float(theta)
    if theta <= math.pi / 2.0:
        es = error_series(n, N, theta, trunc)
        return KernelDecomposition(main=main_term(n, N, theta),
                                   error=es.value, antipodal=0.0,
                                   N=N, theta=theta, trunc=trunc,
                                   tail_bound=es.tail_bound)
    d0 = delta0(n)
    return KernelDecomposition(main=0.0, error=0.0,
                               antipodal=cesaro_kernel(n, d0, N, theta),
                               N=N, theta=theta, trunc=trunc, tail_bound=0.0)


def convolve_atomic(kernel_fn, mu, x, N):
    """Convolution of a zonal kernel against an atomic measure at the point
    x: sum_j w_j kernel(N, |x - y_j|)."""
    from .sphere import geodesic_distance
    total = 0.0
    for point, weight in mu:
        total += weight * kernel_fn(N, geodesic_distance(x, point))
    return total
