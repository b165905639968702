"""Acceptance registry: every top-level correctness criterion as a named
check returning pass/fail plus its fitted constants.

The same registry backs `sumlab verify` and tests/test_acceptance.py.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels, summation
from .divergence import (build_staged, cesaro_weight_matrix, proj_table,
                         scan_grid, scan_sup, smooth_to_polynomial)
from .kernels import (cesaro_kernel, error_series, harmonic_dim,
                      jacobi_params, main_profile, main_term_asymptote,
                      szego_coefficient, szego_coefficients, szego_limit,
                      zonal_profile)
from .specfun import cesaro_number, cesaro_numbers, delta0, jacobi_profile
from .sphere import (AtomicMeasure, SpherePoint, greedy_packing,
                     hl_maximal, integer_relation_probe, sample_uniform,
                     sphere_grid)
from .summation import (SummationSpec, apply, bochner_riesz_reduction,
                        cesaro_means_all, delta_lift, ingham_a_polys,
                        ingham_a_residual, ingham_b_coeffs, ingham_b_residual,
                        riesz_running_sup, shifted_riesz_identity_check)

DEFAULT_SEED = 20240 + 817


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str
    fitted: dict = field(default_factory=dict)


def _two_range_upper(base_vals, wide_vals, margin=1.1):
    """Fit C = sup(base); hold on the wide range within the margin."""
    fitted = float(np.max(base_vals))
    wide = float(np.max(wide_vals))
    return fitted, wide, wide <= margin * fitted + 1e-12


def _two_range_lower(base_vals, wide_vals, margin=0.9):
    fitted = float(np.min(base_vals))
    wide = float(np.min(wide_vals))
    return fitted, wide, wide >= margin * fitted - 1e-12


def crit_exact_identities(seed=DEFAULT_SEED):
    """C1: convolution / lift / shift / eigenvalue-completion identities at
    1e-12 relative."""
    t0 = time.time()
    worst = 0.0
    msgs = []
    # Cesaro-number convolution identity
    for delta in (0.0, 0.5, 1.0, 1.5):
        for rho in (1.0, 2.0, 3.0):
            for N in range(0, 65):
                lhs = cesaro_number(delta + rho, N)
                Ar = cesaro_numbers(rho - 1.0, N)
                Ad = cesaro_numbers(delta, N)
                rhs = float(np.dot(Ar, Ad[::-1]))
                worst = max(worst, abs(lhs - rhs) / abs(lhs))
    msgs.append(f"convolution {worst:.2e}")
    ok = worst <= 1e-12

    # delta_lift against the direct mean
    rng = np.random.default_rng(seed)
    w2 = 0.0
    for _ in range(50):
        a = rng.uniform(0.2, 1.0, rng.integers(3, 40))
        delta = rng.uniform(-0.4, 1.5)
        rho = rng.uniform(0.3, 3.0)
        N = int(rng.integers(1, 64))
        v1 = delta_lift(a, delta, rho, N)
        v2 = apply(SummationSpec("Cesaro", delta + rho, N), a)
        w2 = max(w2, abs(v1 - v2) / max(abs(v2), 1e-30))
    msgs.append(f"delta_lift {w2:.2e}")
    ok = ok and w2 <= 1e-12

    # shift identity, 100 random cases
    w3 = 0.0
    for _ in range(100):
        a = rng.uniform(0.2, 1.0, rng.integers(2, 51))
        delta = rng.uniform(0.1, 2.0)
        c = rng.uniform(-2.0, 2.0)
        R = max(c, 0.0) + rng.uniform(0.5, 30.0) + 0.37
        lhs, rhs = shifted_riesz_identity_check(delta, c, R, a)
        w3 = max(w3, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30))
    msgs.append(f"shift {w3:.2e}")
    ok = ok and w3 <= 1e-12

    # Bochner-Riesz reduction, 100 random cases
    w4 = 0.0
    sets_ok = True
    for _ in range(100):
        n = int(rng.integers(2, 5))
        a = rng.uniform(0.2, 1.0, rng.integers(2, 41))
        delta = rng.uniform(0.1, 2.0)
        R = rng.uniform(0.7, 40.0) + 0.123
        lhs, rhs = bochner_riesz_reduction(n, delta, R, a)
        w4 = max(w4, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30))
        c = (n - 1) / 2.0
        kmax = len(a) - 1
        s1 = summation.included_indices(
            SummationSpec("BochnerRiesz", delta, R, n=n), kmax)
        s2 = summation.included_indices(
            SummationSpec("QuadraticRiesz", delta, math.hypot(R, c), c=c), kmax)
        sets_ok = sets_ok and np.array_equal(s1, s2)
    msgs.append(f"bochner-riesz {w4:.2e} sets={'ok' if sets_ok else 'MISMATCH'}")
    ok = ok and w4 <= 1e-12 and sets_ok

    return CheckResult("C1 exact identities", ok, time.time() - t0,
                       "; ".join(msgs),
                       {"conv": worst, "lift": w2, "shift": w3, "br": w4})


def crit_szego_expansion():
    """C2: |K_N - C_N P_N - E_N(trunc=40)| <= 1e-8 (1+|K_N|) on the stated
    (n, N, theta) grid."""
    t0 = time.time()
    rows = []
    ok = True
    for n in (2, 3):
        d0 = delta0(n)
        alpha, beta = jacobi_params(n)
        for N in (5, 20, 100):
            for theta in (0.3, 0.7, 1.2):
                K = cesaro_kernel(n, d0, N, theta)
                P = float(jacobi_profile(alpha, beta, N, math.cos(theta))[N])
                es = error_series(n, N, theta, trunc=40)
                resid = abs(K - szego_coefficient(n, N) * P - es.value)
                bound = 1e-8 * (1.0 + abs(K))
                good = resid <= bound
                ok = ok and good
                rows.append((n, N, theta, resid, bound, good))
    failing = [(n, N, th) for (n, N, th, r, b, g) in rows if not g]
    worst = max(r / b for (_, _, _, r, b, _) in rows)
    detail = (f"max resid/bound = {worst:.3g}; "
              + (f"failing points {failing} (truncation tail at trunc=40)"
                 if failing else "all 18 points pass"))
    return CheckResult("C2 kernel expansion consistency", ok,
                       time.time() - t0, detail, {"max_ratio": worst})


def crit_reproducing_identity():
    """C3: quadrature orthogonality of the zonal kernels plus the exact
    dimension anchor at theta = 0."""
    from scipy.special import roots_gegenbauer
    t0 = time.time()
    ok = True
    worst = 0.0
    for n in (2, 3):
        lam = delta0(n)
        nodes, weights = roots_gegenbauer(128, lam)
        theta = np.arccos(np.clip(nodes, -1, 1))
        Z = zonal_profile(n, 40, theta)          # [k, nodes]
        W = weights / np.sum(weights)
        G = (Z * W[None, :]) @ Z.T               # integrals against prob measure
        dims = np.array([harmonic_dim(n, k) for k in range(41)], dtype=float)
        err = np.max(np.abs(G - np.diag(dims)))
        worst = max(worst, err)
        ok = ok and err <= 1e-9 * max(1.0, np.max(dims))
        # dimension anchor
        Z0 = zonal_profile(n, 100, 0.0)
        for k in range(101):
            if round(float(Z0[k])) != harmonic_dim(n, k):
                ok = False
    return CheckResult("C3 reproducing identity / dimension anchor", ok,
                       time.time() - t0,
                       f"max quadrature defect {worst:.2e}; Z_k(0) integer "
                       f"match k<=100, n in {{2,3}}", {"defect": worst})


def crit_asymptotics():
    """C4: main-coefficient limit at N=4096 and the Jacobi asymptotic
    log-log slope at theta = 1."""
    t0 = time.time()
    ok = True
    details = []
    lims = {}
    for n in (2, 3):
        v = szego_coefficient(n, 4096) / math.sqrt(4096.0)
        gap = abs(v - szego_limit(n))
        lims[n] = gap
        ok = ok and gap <= 0.01
        details.append(f"n={n}: |C_N/sqrt(N) - limit| = {gap:.2e}")
    slopes = {}
    for n in (2, 3):
        alpha, beta = jacobi_params(n)
        P = jacobi_profile(alpha, beta, 1024, math.cos(1.0))
        Ns = np.arange(16, 1025)
        errs = np.array([abs(float(P[N]) - main_term_asymptote(n, N, 1.0))
                         for N in Ns])
        # regress the error envelope: the pointwise error oscillates through
        # zero, so fit the max over dyadic windows
        xs, ys = [], []
        lo = 16
        while lo < 1024:
            hi = min(2 * lo, 1025)
            window = (Ns >= lo) & (Ns < hi)
            xs.append(math.log(math.sqrt(lo * (hi - 1))))
            ys.append(math.log(np.max(errs[window])))
            lo = hi
        slope = np.polyfit(xs, ys, 1)[0]
        slopes[n] = slope
        ok = ok and slope <= -1.4
        details.append(f"n={n}: slope {slope:.3f}")
    return CheckResult("C4 asymptotics", ok, time.time() - t0,
                       "; ".join(details), {"limit_gaps": lims,
                                            "slopes": slopes})


def _kernel_profile_at_angles(n, delta, Nmax, thetas):
    """K_N^delta(theta_i) for all N <= Nmax; result [Nmax+1, len(thetas)]."""
    from scipy.signal import fftconvolve
    Z = zonal_profile(n, Nmax, np.asarray(thetas))   # [k, T]
    A = cesaro_numbers(delta, Nmax)
    num = fftconvolve(Z, A[:, None], axes=0)[:Nmax + 1]
    return num / A[:, None]


def crit_fitted_bounds(seed=DEFAULT_SEED):
    """C5: every fitted-constant bound under the 10% two-range protocol."""
    t0 = time.time()
    parts = {}
    ok = True

    # (a) zonal kernel bound
    for n in (2, 3):
        lam = delta0(n)
        th = np.linspace(0.02, math.pi - 0.02, 200)
        Z = zonal_profile(n, 400, th)
        ks = np.arange(401.0)[:, None]
        ratio = np.abs(Z) * th[None, :] ** lam * (math.pi - th)[None, :] ** lam \
            / (ks + 1.0) ** lam
        f, w, good = _two_range_upper(ratio[:201], ratio)
        parts[f"zonal_bound_n{n}"] = (f, w, good)
        ok = ok and good

    # (b) antipodal part
    for n in (2, 3):
        lam = delta0(n)
        d0 = delta0(n)
        th = np.linspace(math.pi / 2 + 0.01, math.pi - 0.005, 160)
        K = _kernel_profile_at_angles(n, d0, 400, th)
        ratio = np.abs(K) * (math.pi - th)[None, :] ** lam
        f, w, good = _two_range_upper(ratio[:201], ratio)
        parts[f"antipodal_n{n}"] = (f, w, good)
        ok = ok and good

    # (c)+(d) supercritical kernel bounds
    for n in (2, 3):
        d1 = delta0(n) + 1.0
        th = np.geomspace(0.01, math.pi / 2, 160)
        K = _kernel_profile_at_angles(n, d1, 256, th)
        Ns = np.arange(1, 257.0)[:, None]
        r1 = np.abs(K[1:]) * Ns ** (-float(n))
        f, w, good = _two_range_upper(r1[:128], r1)
        parts[f"supercrit_i_n{n}"] = (f, w, good)
        ok = ok and good
        mask = th[None, :] >= 2.0 / Ns
        r2 = np.where(mask, np.abs(K[1:]) * Ns * th[None, :] ** (n + 1.0), 0.0)
        f, w, good = _two_range_upper(r2[:128], r2)
        parts[f"supercrit_ii_n{n}"] = (f, w, good)
        ok = ok and good

    # (e) maximal domination of the non-main part
    rng = np.random.default_rng(seed)
    n = 2
    d0 = delta0(n)
    ratios = {200: [], 400: []}
    for _ in range(20):
        m = int(rng.integers(3, 30))
        pts = sample_uniform(n, m, int(rng.integers(0, 2 ** 31)))
        nu = AtomicMeasure.uniform(pts)
        xs = sample_uniform(n, 100, int(rng.integers(0, 2 ** 31)))
        dots = np.clip(xs @ nu.points.T, -1, 1)
        theta = np.arccos(dots)                     # [100, m]
        flat = theta.ravel()
        Kprof = _kernel_profile_at_angles(n, d0, 400, flat)
        Mprof = np.array([main_profile(n, 400, t) for t in flat]).T
        D = (Kprof - Mprof).reshape(401, 100, m)
        conv = np.tensordot(D, nu.weights, axes=(2, 0))   # [401, 100]
        for i in range(100):
            x = SpherePoint(tuple(xs[i]))
            M = hl_maximal(nu, x)
            kpi = float(np.dot(np.abs(nu.weights),
                               (math.pi - theta[i]) ** (-delta0(n))))
            denom = M + kpi
            ratios[200].append(np.max(np.abs(conv[1:201, i])) / denom)
            ratios[400].append(np.max(np.abs(conv[1:401, i])) / denom)
    f, w, good = _two_range_upper(ratios[200], ratios[400])
    parts["maximal_domination"] = (f, w, good)
    ok = ok and good

    # (f) weak (1,1) for the maximal function
    n = 2
    pts = sample_uniform(n, 50, seed + 5)
    wts = rng.uniform(0.2, 1.0, 50)
    nu = AtomicMeasure(pts, wts / wts.sum())
    samples = sample_uniform(n, 400000, seed + 6)
    dots = np.clip(samples @ nu.points.T, -1.0, 1.0)
    theta = np.arccos(dots)
    order = np.argsort(theta, axis=1)
    dsort = np.take_along_axis(theta, order, axis=1)
    wsort = np.take_along_axis(np.broadcast_to(nu.weights, theta.shape),
                               order, axis=1)
    cum = np.cumsum(wsort, axis=1)
    bm = (1.0 - np.cos(dsort)) / 2.0
    Mv = np.max(cum / np.maximum(bm, 1e-300), axis=1)
    base = [t * np.mean(Mv > t) for t in (10.0, 100.0, 1000.0)]
    wide = base + [t * np.mean(Mv > t) for t in (20.0, 200.0, 2000.0)]
    f, w, good = _two_range_upper(base, wide)
    parts["weak11"] = (f, w, good)
    ok = ok and good

    # (g) packing Riemann-sum lower bound
    grid = sphere_grid(2, 1000, seed + 7)
    vals = {}
    for r in (0.4, 0.2, 0.1, 0.05):
        mu = greedy_packing(2, r, seed + 8)
        theta = np.arccos(np.clip(grid @ mu.points.T, -1, 1))
        vals[r] = float(np.min((theta ** -2.0) @ mu.weights)
                        / math.log(math.pi / r))
    f, w, good = _two_range_lower([vals[r] for r in (0.4, 0.2, 0.1)],
                                  list(vals.values()))
    parts["riemann_sum"] = (f, w, good)
    ok = ok and good

    # (h) comparison constants between Cesaro and Riesz running sups
    d0 = delta0(2)
    corpus = [rng.uniform(-1.0, 1.0, int(rng.integers(4, 33)))
              for _ in range(1000)]
    c1 = {64: [], 128: []}
    c2 = {64: [], 128: []}
    for a in corpus:
        proj = float(np.max(np.abs(a)
                            / (np.arange(len(a)) + 1.0) ** d0))
        for H in (64, 128):
            sc = float(np.max(np.abs(cesaro_means_all(a, d0, H))))
            sr = riesz_running_sup(a, d0, 0.0, float(H))
            c1[H].append(sc / (sr + proj))
            c2[H].append(sr / (sc + proj))
    f1, w1, good1 = _two_range_upper(c1[64], c1[64] + c1[128])
    f2, w2, good2 = _two_range_upper(c2[64], c2[64] + c2[128])
    parts["riesz_cesaro"] = (f1, w1, good1)
    parts["cesaro_riesz"] = (f2, w2, good2)
    ok = ok and good1 and good2

    # (i) quadratic-vs-shifted Riesz residual constant
    cshift = 0.5
    resid_ratio = {0: [], 1: []}
    for half in (0, 1):
        for _ in range(300):
            a = rng.uniform(-1.0, 1.0, int(rng.integers(3, 25)))
            R = rng.uniform(3.0, 60.0) + 0.217
            b = apply(SummationSpec("QuadraticRiesz", d0, R, c=cshift), a)
            s = apply(SummationSpec("ShiftedRiesz", d0, R, c=cshift), a)
            sup1 = riesz_running_sup(a, d0 + 1.0, cshift, R)
            resid_ratio[half].append(abs(b - 2.0 ** d0 * s) / max(sup1, 1e-12))
    f, w, good = _two_range_upper(resid_ratio[0],
                                  resid_ratio[0] + resid_ratio[1])
    parts["br_riesz2"] = (f, w, good)
    ok = ok and good

    detail = "; ".join(f"{k}: C={v[0]:.3g} wide={v[1]:.3g} "
                       f"{'ok' if v[2] else 'UNSTABLE'}"
                       for k, v in parts.items())
    return CheckResult("C5 fitted-bound stability", ok, time.time() - t0,
                       detail, {k: v[0] for k, v in parts.items()})


def crit_ingham(seed=DEFAULT_SEED):
    """C6: Ingham matching coefficients satisfy the O(k^-2) contract."""
    t0 = time.time()
    ok = True
    details = []
    noise_floor = 0.01
    ks = np.arange(10, 10001)
    ks2 = np.arange(10, 20001)
    for d in (0.5, 1.0):
        c = ingham_b_coeffs(d)
        r1 = float(np.max(ingham_b_residual(d, c, ks)))
        r2 = float(np.max(ingham_b_residual(d, c, ks2)))
        stable = (r2 <= 1.1 * r1 + 1e-12) or (r1 < noise_floor and r2 < noise_floor)
        ok = ok and np.isfinite(r1) and stable
        details.append(f"B d={d}: sup={r1:.3g}/{r2:.3g}")
    exact = float(np.max(ingham_b_residual(1.0, [0.0, 0.0, 1.0], ks)))
    ok = ok and exact < 1e-3
    details.append(f"B d=1 exact(0,0,1): {exact:.2g}")
    for d, e in ((0.5, 0.25), (0.5, 1.0)):
        p = ingham_a_polys(d, e)
        r1 = float(np.max(ingham_a_residual(d, e, p, ks)))
        r2 = float(np.max(ingham_a_residual(d, e, p, ks2)))
        stable = (r2 <= 1.1 * r1 + 1e-12) or (r1 < noise_floor and r2 < noise_floor)
        ok = ok and np.isfinite(r1) and stable
        details.append(f"A d={d} e={e}: sup={r1:.3g}/{r2:.3g}")
    return CheckResult("C6 Ingham contracts", ok, time.time() - t0,
                       "; ".join(details))


def crit_majorization(seed=DEFAULT_SEED):
    """C7: the two majorization inequalities on 1000 random sequences."""
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst_a = math.inf
    for _ in range(1000):
        a = rng.uniform(-1.0, 1.0, int(rng.integers(2, 41)))
        delta = rng.uniform(-0.5, 2.0)
        rho = float(rng.choice([0.5, 1.0, 2.0]))
        N = int(rng.integers(1, 48))
        hi = cesaro_means_all(a, delta + rho, N)
        lo = np.abs(cesaro_means_all(a, delta, N))
        slack = float(np.max(lo)) - abs(float(hi[N]))
        worst_a = min(worst_a, slack)
    ok_a = worst_a >= -1e-10

    worst_b = math.inf
    for _ in range(1000):
        a = rng.uniform(-1.0, 1.0, int(rng.integers(2, 31)))
        delta = rng.uniform(0.1, 1.5)
        rho = float(rng.choice([0.5, 1.0, 2.0]))
        c = rng.uniform(0.0, 1.5)
        R = rng.uniform(2.0, 40.0) + 0.39
        val = abs(apply(SummationSpec("ShiftedRiesz", delta + rho, R, c=c), a))
        sup = _fine_running_sup(a, delta, c, R)
        worst_b = min(worst_b, sup - val)
    ok_b = worst_b >= -1e-10
    return CheckResult("C7 majorization", ok_a and ok_b, time.time() - t0,
                       f"major-a slack {worst_a:.2e}; major-b slack {worst_b:.2e}",
                       {"slack_a": worst_a, "slack_b": worst_b})


def _fine_running_sup(a, delta, c, R):
    return riesz_running_sup(a, delta, c, R, per_unit=64)


def crit_kronecker_approach():
    """C8: single-atom running supremum reaches 99% of the equidistribution
    target by N_max = 1e5 at a generic angle.

    The sup over all degrees can exceed the target at small N where the
    main coefficient is still above its limit, so the asymptotic regime
    (N >= 1024, where phase alignment is the only mechanism) is asserted
    separately."""
    t0 = time.time()
    theta = 1.0
    probe = integer_relation_probe([math.pi, theta], 50)
    pole = SpherePoint((0.0, 0.0, 1.0))
    x = SpherePoint((math.sin(theta), 0.0, math.cos(theta)))
    mu = AtomicMeasure.point_mass(pole)
    res = scan_sup(mu, x, 100000, 2)
    ratio = res.sup_abs / res.target

    alpha, beta = jacobi_params(2)
    P = jacobi_profile(alpha, beta, 100000, math.cos(theta))
    Ns = np.arange(1024, 100001)
    vals = szego_coefficients(2, Ns) * np.abs(P[1024:])
    tail_ratio = float(np.max(vals)) / res.target
    ok = probe is None and ratio >= 0.99 and tail_ratio >= 0.99
    return CheckResult("C8 equidistribution approach", ok, time.time() - t0,
                       f"sup/target = {ratio:.4f} (argmax N={res.argmax_N}); "
                       f"sup over N>=1024 / target = {tail_ratio:.4f}; "
                       f"relation probe at height 50: {probe}",
                       {"ratio": ratio, "tail_ratio": tail_ratio})


def crit_divergence_mechanism(seed=DEFAULT_SEED, grid_points=2000,
                              n_max=4096, stages=3):
    """C9: grid-median growth of the running supremum in log(pi/r), plus the
    staged construction meeting its per-stage fractions with increasing
    achieved maxima."""
    t0 = time.time()
    grid = sphere_grid(2, grid_points, seed)
    medians = {}
    for r in (0.4, 0.2, 0.1):
        mu = greedy_packing(2, r, seed)
        gs = scan_grid(mu, grid, n_max, 2)
        medians[r] = float(np.median(gs.sup_abs))
    increasing = medians[0.4] < medians[0.2] < medians[0.1]

    sf = build_staged(2, stages, grid_points, seed, budget=6,
                      r_schedule=(1.0, 0.6, 0.35),
                      N1_schedule=(64, 128, 256),
                      Nj_schedule=(256, 512, 1024))
    fracs = [rec.fraction for rec in sf.records]
    targets = [rec.fraction_target for rec in sf.records]
    fractions_ok = all(f >= t for f, t in zip(fracs, targets))
    meds = [rec.achieved_median_total for rec in sf.records]
    maxima_increasing = all(meds[i] < meds[i + 1] for i in range(len(meds) - 1))

    ok = increasing and fractions_ok and maxima_increasing
    detail = (f"scan medians {medians} increasing={increasing}; "
              f"stage fractions {np.round(fracs, 4).tolist()} vs targets "
              f"{targets} ok={fractions_ok}; stage total-medians "
              f"{np.round(meds, 3).tolist()} increasing={maxima_increasing}")
    return CheckResult("C9 divergence mechanism", ok, time.time() - t0,
                       detail, {"medians": medians, "fractions": fracs,
                                "stage_medians": meds})


def crit_smoothing(seed=DEFAULT_SEED):
    """C10: smoothing approximation bound pointwise plus the uniform L1
    bound of the smoothed measures."""
    t0 = time.time()
    rng = np.random.default_rng(seed)
    n = 2
    d0 = delta0(n)
    ok = True
    worst_slack = math.inf
    for _ in range(50):
        r = float(rng.choice([0.8, 0.5]))
        mu = greedy_packing(n, r, int(rng.integers(0, 2 ** 31)))
        N1 = int(rng.choice([128, 256, 512]))
        N0 = int(rng.integers(4, min(64, N1)))
        N = int(rng.integers(1, N0 + 1))
        x = sample_uniform(n, 1, int(rng.integers(0, 2 ** 31)))
        P = proj_table(mu, x, N)[0]
        W = cesaro_weight_matrix(n, N, np.array([N]))[:, 0]
        k_mu = float(np.dot(W, P))
        sm = smooth_to_polynomial(mu, N1, n)
        coef = sm.coefficients()[:N + 1]
        k_f = float(np.dot(W * coef, P))
        A1 = cesaro_numbers(d0 + 1.0, N1)
        dims = np.array([harmonic_dim(n, k) for k in range(N0 + 1)],
                        dtype=float)
        bound = (1.0 - A1[N1 - N0] / A1[N1]) * float(np.sum(dims))
        slack = bound + 1e-10 - abs(k_mu - k_f)
        worst_slack = min(worst_slack, slack)
        ok = ok and slack >= 0.0

    l1s = []
    for s in (seed + 1, seed + 2):
        mu = greedy_packing(n, 0.4, s)
        for N1 in (128, 512, 2048):
            sm = smooth_to_polynomial(mu, N1, n)
            l1s.append(sm.l1_norm_mc(budget=3000, seed=s))
    fitted = max(l1s[:3])
    wide = max(l1s)
    l1_ok = np.isfinite(fitted) and wide <= 1.1 * fitted
    ok = ok and l1_ok
    return CheckResult("C10 smoothing fidelity", ok, time.time() - t0,
                       f"pointwise slack >= {worst_slack:.2e}; L1 fitted "
                       f"{fitted:.3f}, wide {wide:.3f}",
                       {"l1_fitted": fitted, "l1_wide": wide})


ALL_CRITERIA = (
    crit_exact_identities,
    crit_szego_expansion,
    crit_reproducing_identity,
    crit_asymptotics,
    crit_fitted_bounds,
    crit_ingham,
    crit_majorization,
    crit_kronecker_approach,
    crit_divergence_mechanism,
    crit_smoothing,
)


def run_all(selected=None):
    results = []
    for fn in ALL_CRITERIA:
        name = fn.__name__
        if selected and not any(s in name for s in selected):
            continue
        results.append(fn())
    return results
