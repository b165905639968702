"""Divergence-witness machinery: projections of atomic measures, the
equidistribution (Kronecker) limsup target, running-supremum scans of the
main kernel term, smoothing of measures into polynomials, and the staged
construction of the divergent integrable function.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kernels import (amplitude, harmonic_dims, jacobi_params,
                      szego_coefficients, szego_limit, zonal_profile)
from .specfun import cesaro_numbers, delta0
from .sphere import AtomicMeasure, SpherePoint, sample_uniform


def measure_projection(mu, k, x):
    """(proj_k mu)(x) = sum_j w_j Z_k(x, y_j)."""
    theta = mu.angles_to(x)
    Z = zonal_profile(mu.dim, int(k), theta)[int(k)]
    return float(np.dot(mu.weights, Z))


def kronecker_target(mu, x, n, atom_tol=1e-9):
    """Limsup of |main-term * mu| at x predicted by equidistribution of the
    phases: lim(C_N N^{-1/2}) times the cut-off amplitude sum."""
    theta = mu.angles_to(x)
    if np.any(theta < atom_tol) or np.any(theta > math.pi - atom_tol):
        raise ValueError("target is singular at atoms and antipodes")
    mask = theta <= math.pi / 2.0
    if not np.any(mask):
        return 0.0
    amp = np.array([amplitude(n, t) for t in theta[mask]])
    return szego_limit(n) * float(np.dot(mu.weights[mask], amp))


@dataclass(frozen=True)
class ScanResult:
    """Running-supremum record for one evaluation point."""

    x: SpherePoint
    sup_abs: float
    argmax_N: int
    target: float
    N_max: int


def scan_sup(mu, x, N_max, n):
    """max over 1 <= N <= N_max of |sum_j w_j main_term(N, theta_j)|."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    theta = mu.angles_to(x)
    mask = theta <= math.pi / 2.0
    target = kronecker_target(mu, x, n)
    if not np.any(mask):
        return ScanResult(x, 0.0, 0, target, N_max)
    t = np.cos(theta[mask])
    w = mu.weights[mask]
    alpha, beta = jacobi_params(n)
    C = szego_coefficients(n, np.arange(1, N_max + 1))
    ab = alpha + beta
    p_prev = np.ones_like(t)
    p_cur = (alpha + 1.0) + (ab + 2.0) * (t - 1.0) / 2.0
    best = abs(float(np.dot(w, p_cur))) * C[0]
    arg = 1
    for N in range(2, N_max + 1):
        c1 = 2.0 * N * (N + ab) * (2.0 * N + ab - 2.0)
        c2 = (2.0 * N + ab - 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * N + ab - 2.0) * (2.0 * N + ab - 1.0) * (2.0 * N + ab)
        c4 = 2.0 * (N + alpha - 1.0) * (N + beta - 1.0) * (2.0 * N + ab)
        p_next = ((c2 + c3 * t) * p_cur - c4 * p_prev) / c1
        p_prev, p_cur = p_cur, p_next
        val = abs(float(np.dot(w, p_cur))) * C[N - 1]
        if val > best:
            best = val
            arg = N
    return ScanResult(x, float(best), arg, target, N_max)


@dataclass(frozen=True)
class GridScan:
    """Batched scan over a fixed evaluation grid."""

    points: np.ndarray
    sup_abs: np.ndarray
    argmax_N: np.ndarray
    target: np.ndarray
    N_max: int

    def results(self):
        for i in range(self.points.shape[0]):
            yield ScanResult(SpherePoint(tuple(self.points[i])),
                             float(self.sup_abs[i]), int(self.argmax_N[i]),
                             float(self.target[i]), self.N_max)


def scan_grid(mu, points, N_max, n):
    """scan_sup over every row of `points`, sharing the degree recurrence
    across all (point, atom) pairs. Grid points that collide with atoms or
    antipodes get a NaN target but a valid supremum."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    G = points.shape[0]
    dots = np.clip(points @ mu.points.T, -1.0, 1.0)
    theta = np.arccos(dots)

    # targets, NaN on singular rows
    amp = np.zeros_like(theta)
    interior = (theta > 1e-9) & (theta < math.pi - 1e-9)
    cut = theta <= math.pi / 2.0
    ok = interior & cut
    th = theta[ok]
    amp[ok] = (math.pi ** -0.5 * np.sin(th / 2.0) ** (-float(n))
               * np.cos(th / 2.0) ** (-(n - 1) / 2.0))
    target = szego_limit(n) * amp @ mu.weights
    singular_rows = np.any(~interior, axis=1)
    target[singular_rows] = np.nan

    # flatten pairs with theta <= pi/2, grouped by grid row
    rows, cols = np.nonzero(cut)
    t = np.cos(theta[cut])
    w = mu.weights[cols]
    # reduceat boundaries: rows is sorted because nonzero scans row-major
    starts = np.searchsorted(rows, np.arange(G))
    has_pairs = np.diff(np.append(starts, len(rows))) > 0

    alpha, beta = jacobi_params(n)
    ab = alpha + beta
    C = szego_coefficients(n, np.arange(1, N_max + 1))

    sup = np.zeros(G)
    arg = np.zeros(G, dtype=int)

    p_prev = np.ones_like(t)
    p_cur = (alpha + 1.0) + (ab + 2.0) * (t - 1.0) / 2.0
    wp = w * p_cur
    s = np.zeros(G)
    s[has_pairs] = np.add.reduceat(wp, starts[has_pairs])
    np.abs(s, out=s)
    s *= C[0]
    sup[:] = s
    arg[:] = 1

    p_next = np.empty_like(t)
    scratch = np.empty_like(t)
    for N in range(2, N_max + 1):
        c1 = 2.0 * N * (N + ab) * (2.0 * N + ab - 2.0)
        c2 = (2.0 * N + ab - 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * N + ab - 2.0) * (2.0 * N + ab - 1.0) * (2.0 * N + ab)
        c4 = 2.0 * (N + alpha - 1.0) * (N + beta - 1.0) * (2.0 * N + ab)
        np.multiply(t, p_cur, out=p_next)
        p_next *= c3
        np.multiply(p_cur, c2, out=scratch)
        p_next += scratch
        np.multiply(p_prev, c4, out=scratch)
        p_next -= scratch
        p_next /= c1
        p_prev, p_cur, p_next = p_cur, p_next, p_prev
        np.multiply(w, p_cur, out=scratch)
        s.fill(0.0)
        s[has_pairs] = np.add.reduceat(scratch, starts[has_pairs])
        np.abs(s, out=s)
        s *= C[N - 1]
        better = s > sup
        sup[better] = s[better]
        arg[better] = N
    return GridScan(points, sup, arg, target, N_max)


@dataclass(frozen=True)
class SmoothedMeasure:
    """Polynomial f = S^{delta0+1}_{N1} mu, scaled so that its estimated
    L1 norm is at most one; known spectrally through its coefficient
    multipliers and pointwise through the smoothing kernel."""

    mu: AtomicMeasure
    N1: int
    n: int
    scale: float = 1.0

    @property
    def degree(self):
        return self.N1

    def coefficient(self, k):
        """Multiplier of proj_k mu in f."""
        if k > self.N1:
            return 0.0
        d1 = delta0(self.n) + 1.0
        A = cesaro_numbers(d1, self.N1)
        return self.scale * float(A[self.N1 - k] / A[self.N1])

    def coefficients(self):
        d1 = delta0(self.n) + 1.0
        A = cesaro_numbers(d1, self.N1)
        return self.scale * A[::-1] / A[self.N1]

    def eval(self, x):
        """Pointwise value via the order-(delta0+1) kernel."""
        return float(self.eval_batch(x.vector[None, :])[0])

    def eval_batch(self, points):
        # stream the Gegenbauer recurrence over the degree so memory stays
        # at a few (G, m) buffers regardless of N1
        points = np.atleast_2d(points)
        lam = delta0(self.n)
        t = np.clip(points @ self.mu.points.T, -1.0, 1.0)
        d1 = lam + 1.0
        A = cesaro_numbers(d1, self.N1)
        w = A[::-1] / A[self.N1]
        acc = np.full_like(t, w[0])
        if self.N1 >= 1:
            c_prev = np.ones_like(t)
            c_cur = 2.0 * lam * t
            acc = acc + w[1] * (1.0 + lam) / lam * c_cur
            for k in range(2, self.N1 + 1):
                c_next = (2.0 * (k + lam - 1.0) * t * c_cur
                          - (k + 2.0 * lam - 2.0) * c_prev) / k
                c_prev, c_cur = c_cur, c_next
                acc += w[k] * (k + lam) / lam * c_cur
        return self.scale * acc @ self.mu.weights

    def l1_norm_mc(self, budget=4000, seed=0):
        """Stratified Monte-Carlo L1 norm.

        The smoothing kernel concentrates on a 1/N1 neighborhood of each
        atom, which uniform sampling misses entirely at large N1, so the
        mass near every atom is integrated on seeded log-radial rings and
        only the remainder of the sphere is sampled uniformly.
        """
        from .sphere import ball_measure
        n = self.n
        mu = self.mu
        sep = mu.min_separation()
        rho = min(0.45 * sep, 0.2)
        rings = 40
        nphi = 12
        near = 0.0
        rng = np.random.Generator(np.random.PCG64(seed))
        thetas = np.geomspace(max(1e-7, 0.02 / max(self.N1, 1)), rho,
                              rings + 1)
        shells = np.array([ball_measure(n, t) for t in thetas])
        sin_t = np.sin(thetas)
        cos_t = np.cos(thetas)
        for j in range(mu.size):
            y = mu.points[j]
            # orthonormal tangent pair at y
            g = rng.standard_normal((2, n + 1))
            g -= np.outer(g @ y, y)
            u = g[0] / np.linalg.norm(g[0])
            w = g[1] - np.dot(g[1], u) * u
            w /= np.linalg.norm(w)
            phis = rng.uniform(0.0, 2 * math.pi, nphi)
            circ = (np.cos(phis)[:, None] * u[None, :]
                    + np.sin(phis)[:, None] * w[None, :])
            pts = (cos_t[:, None, None] * y[None, None, :]
                   + sin_t[:, None, None] * circ[None, :, :])
            pts = pts.reshape(-1, n + 1)
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            vals = np.abs(self.eval_batch(pts)).reshape(rings + 1, nphi)
            band_means = vals.mean(axis=1)
            mids = 0.5 * (band_means[1:] + band_means[:-1])
            near += float(np.dot(mids, np.diff(shells)))
            near += band_means[0] * shells[0]  # innermost cap, flat kernel
        far_pts = sample_uniform(n, max(512, budget), seed + 1)
        theta_min = np.min(np.arccos(np.clip(far_pts @ mu.points.T, -1, 1)),
                           axis=1)
        mask = theta_min > rho
        far_measure = 1.0 - mu.size * ball_measure(n, rho)
        far = float(np.mean(np.abs(self.eval_batch(far_pts[mask])))) \
            * far_measure if np.any(mask) else 0.0
        return near + far


def smooth_to_polynomial(mu, N1, n):
    """f = S^{delta0+1}_{N1} mu as a SmoothedMeasure (unscaled)."""
    if N1 < 0:
        raise ValueError("N1 must be >= 0")
    return SmoothedMeasure(mu=mu, N1=int(N1), n=n, scale=1.0)


def proj_table(mu, points, kmax):
    """proj_k mu at each row of `points` for k = 0..kmax; result [G, kmax+1].

    Shares the Gegenbauer recurrence across all (point, atom) pairs.
    """
    n = mu.dim
    lam = delta0(n)
    points = np.atleast_2d(points)
    G = points.shape[0]
    t = np.clip(points @ mu.points.T, -1.0, 1.0)  # [G, m]
    w = mu.weights[None, :]
    out = np.empty((G, kmax + 1))
    c_prev = np.ones_like(t)
    out[:, 0] = np.sum(w * c_prev, axis=1)
    if kmax == 0:
        return out
    c_cur = 2.0 * lam * t
    out[:, 1] = (1.0 + lam) / lam * np.sum(w * c_cur, axis=1)
    for k in range(2, kmax + 1):
        c_next = (2.0 * (k + lam - 1.0) * t * c_cur
                  - (k + 2.0 * lam - 2.0) * c_prev) / k
        c_prev, c_cur = c_cur, c_next
        out[:, k] = (k + lam) / lam * np.sum(w * c_cur, axis=1)
    return out


def cesaro_weight_matrix(n, kmax, Ns):
    """W[k, i] = A^{delta0}_{Ns[i]-k} / A^{delta0}_{Ns[i]} (zero for k > N)."""
    d0 = delta0(n)
    Nmax = int(np.max(Ns))
    A = cesaro_numbers(d0, Nmax)
    W = np.zeros((kmax + 1, len(Ns)))
    for i, N in enumerate(Ns):
        N = int(N)
        top = min(kmax, N)
        W[:top + 1, i] = A[N - np.arange(top + 1)] / A[N]
    return W


def cesaro_conv_profile(mu, points, N_max, smoothing=None, block=512):
    """|K_N * f|(x) for N = 0..N_max at each row of `points`, where f is mu
    itself or its smoothing; returns the running max over N and the argmax,
    plus the profile of the final block if requested elsewhere."""
    n = mu.dim
    kmax = N_max if smoothing is None else min(N_max, smoothing.N1)
    P = proj_table(mu, points, kmax)
    if smoothing is not None:
        coeff = smoothing.coefficients()[:kmax + 1]
        P = P * coeff[None, :]
    G = P.shape[0]
    sup = np.zeros(G)
    arg = np.zeros(G, dtype=int)
    for start in range(0, N_max + 1, block):
        Ns = np.arange(start, min(start + block, N_max + 1))
        W = cesaro_weight_matrix(n, kmax, Ns)
        S = np.abs(P @ W)
        loc = np.argmax(S, axis=1)
        val = S[np.arange(G), loc]
        better = val > sup
        sup[better] = val[better]
        arg[better] = Ns[loc[better]]
    return sup, arg


def kernel_sup_norm(n, N, grid_size=2048):
    """Sup norm of K_N: exact value at theta = 0 plus a refined grid max
    (the two agree for the critical-index kernel)."""
    N = int(N)
    d0 = delta0(n)
    if N == 0:
        return 1.0, 1.0
    A = cesaro_numbers(d0, N)
    dims = harmonic_dims(n, N)
    exact = float(np.dot(A[::-1] / A[N], dims))
    thetas = np.concatenate([
        np.geomspace(1e-4, math.pi / 2.0, grid_size // 2),
        np.linspace(math.pi / 2.0, math.pi, grid_size // 2),
    ])
    grid_max = 0.0
    Z = zonal_profile(n, N, thetas)
    vals = np.abs(np.tensordot(A[::-1] / A[N], Z, axes=(0, 0)))
    grid_max = float(np.max(vals))
    return exact, max(grid_max, abs(exact))


def kernel_sup_norms(n, N_max):
    """Exact theta=0 sup norms for all N = 0..N_max."""
    d0 = delta0(n)
    A = cesaro_numbers(d0, N_max)
    dims = harmonic_dims(n, N_max)
    num = np.convolve(A, dims)[:N_max + 1]
    return num / A


@dataclass
class StageRecord:
    index: int
    eta: float
    r: float
    m: int
    N1: int
    Nj: int
    rhs: float
    fraction: float
    fraction_target: float
    passed: bool
    budget_exhausted: bool
    candidates_tried: int
    quantiles: dict
    achieved_median_total: float
    l1_estimate: float


@dataclass
class StagedFunction:
    """f = sum_j eta_j f_j with f_j = S^{delta0+1}_{N1,j} mu_j / C_j."""

    n: int
    seed: int
    stages: list
    records: list
    grid: np.ndarray

    @property
    def completed(self):
        return all(rec.passed for rec in self.records)


def _rhs_sup(n, stages, grid, extra_points):
    """sup over N and evaluation points of |K_N * (sum eta_i f_i)|."""
    if not stages:
        return 0.0
    pts = grid if len(extra_points) == 0 else np.vstack([grid] + extra_points)
    degmax = max(s[2].N1 for s in stages)
    N_eval = 2 * degmax
    total = np.zeros((pts.shape[0], N_eval + 1))
    limit = np.zeros(pts.shape[0])
    for eta, _, sm, _ in stages:
        kmax = sm.N1
        P = proj_table(sm.mu, pts, kmax) * sm.coefficients()[None, :]
        W = cesaro_weight_matrix(n, kmax, np.arange(N_eval + 1))
        total += eta * (P @ W)
        limit += eta * np.sum(P, axis=1)
    return max(float(np.max(np.abs(total))), float(np.max(np.abs(limit))))


def build_staged(n, stages, grid_points, seed, budget=12,
                 r_schedule=(1.2, 0.8, 0.5, 0.3, 0.2, 0.15, 0.1),
                 N1_schedule=(64, 128, 256, 512),
                 Nj_schedule=(256, 512, 1024, 2048),
                 m_cap=5000, l1_budget=3000):
    """Inductive construction of the staged function.

    At stage j the weight eta_j is the largest value satisfying both
    eta_j <= eta_{j-1}/2 and eta_j * max_{N<=N_{j-1}} ||K_N||_inf <= 1,
    halved once for margin. Candidate witness measures (packings of
    decreasing separation) and smoothing/horizon degrees are then searched
    until the stage inequality

        eta_j * max_{N<=N_j} |K_N*f_j(x)| > sup_N ||K_N*(partial sum)||_inf + j

    holds on a grid fraction >= 1 - 1/j. If the budget is exhausted first,
    the best candidate is kept and the stage is flagged.
    """
    from .sphere import greedy_packing, remove_antipodal_pairs, sphere_grid
    if stages < 1:
        raise ValueError("need at least one stage")
    grid = sphere_grid(n, grid_points, seed)
    chosen = []   # (eta, mu, smoothed, Nj)
    records = []
    eta_prev = 1.0
    N_prev = 0
    for j in range(1, stages + 1):
        norms = kernel_sup_norms(n, max(N_prev, 1))[:N_prev + 1]
        eta = min(eta_prev / 2.0, 1.0 / float(np.max(norms))) / 2.0
        rhs = _rhs_sup(n, chosen, grid,
                       [s[1].points for s in chosen]) + float(j)
        frac_target = 1.0 - 1.0 / j

        best = None
        tried = 0
        done = False
        for r in r_schedule:
            for N1, Nj in zip(N1_schedule, Nj_schedule):
                if tried >= budget:
                    break
                tried += 1
                mu = greedy_packing(n, r, seed + 101 * j + tried)
                if mu.size > m_cap:
                    continue
                mu = remove_antipodal_pairs(mu, min(1e-3, r / 8.0))
                sm = smooth_to_polynomial(mu, N1, n)
                l1 = sm.l1_norm_mc(budget=l1_budget, seed=seed + j)
                sm = SmoothedMeasure(mu=mu, N1=N1, n=n,
                                     scale=1.0 / max(1.0, l1))
                sup, _ = cesaro_conv_profile(mu, grid, Nj, smoothing=sm)
                frac = float(np.mean(eta * sup > rhs))
                cand = (frac, mu, sm, Nj, sup, l1)
                if best is None or frac > best[0]:
                    best = cand
                if frac >= frac_target and (j > 1 or True):
                    done = True
                    break
            if done or tried >= budget:
                break

        frac, mu, sm, Nj, sup, l1 = best
        passed = frac >= frac_target
        chosen.append((eta, mu, sm, Nj))
        # achieved maxima of the full running sum at this stage's horizon
        total_sup = _total_running_max(n, chosen, grid, Nj)
        qs = {q: float(np.quantile(eta * sup, q)) for q in (0.25, 0.5, 0.75, 0.95)}
        records.append(StageRecord(
            index=j, eta=float(eta), r=float(mu.separation or math.nan),
            m=mu.size, N1=sm.N1, Nj=int(Nj), rhs=float(rhs),
            fraction=frac, fraction_target=frac_target, passed=passed,
            budget_exhausted=not passed and tried >= budget,
            candidates_tried=tried, quantiles=qs,
            achieved_median_total=float(np.median(total_sup)),
            l1_estimate=float(l1)))
        eta_prev = eta
        N_prev = Nj
    return StagedFunction(n=n, seed=seed, stages=chosen, records=records,
                          grid=grid)


def _total_running_max(n, stages, grid, N_max):
    """max_{N<=N_max} |K_N * (sum eta_i f_i)| on the grid."""
    kmax = min(N_max, max(s[2].N1 for s in stages))
    G = grid.shape[0]
    P = np.zeros((G, kmax + 1))
    for eta, mu, sm, _ in stages:
        top = min(kmax, sm.N1)
        tab = proj_table(mu, grid, top) * sm.coefficients()[None, :top + 1]
        P[:, :top + 1] += eta * tab
    sup = np.zeros(G)
    block = 512
    for start in range(0, N_max + 1, block):
        Ns = np.arange(start, min(start + block, N_max + 1))
        W = cesaro_weight_matrix(n, kmax, Ns)
        S = np.abs(P @ W)
        np.maximum(sup, np.max(S, axis=1), out=sup)
    return sup
