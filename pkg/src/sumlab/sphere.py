"""Geometry and measure theory on the n-sphere: distances, ball measures,
greedy maximal packings, atomic measures, the Hardy-Littlewood maximal
function, uniform sampling, quadrature, low-discrepancy grids and a finite
integer-relation probe.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import betainc, betaincinv, roots_gegenbauer

NORM_TOL = 1e-12
ANTIPODAL_TOL = 1e-6


@dataclass(frozen=True)
class SpherePoint:
    """A point of S^n as a unit vector in R^{n+1}."""

    coords: tuple

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.ndim != 1 or c.size < 3:
            raise ValueError("need an ambient vector of length >= 3")
        if abs(np.linalg.norm(c) - 1.0) > NORM_TOL:
            raise ValueError("coordinates must have unit norm")
        object.__setattr__(self, "coords", tuple(float(v) for v in c))

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(tuple(v / norm))

    @property
    def vector(self):
        return np.asarray(self.coords)

    @property
    def dim(self):
        return len(self.coords) - 1


def antipode(x):
    """The diametrically opposite point."""
    return SpherePoint(tuple(-v for v in x.coords))


def geodesic_distance(x, y):
    """Great-circle distance in [0, pi]."""
    if x.dim != y.dim:
        raise ValueError("points live on spheres of different dimension")
    dot = float(np.dot(x.vector, y.vector))
    return math.acos(min(1.0, max(-1.0, dot)))


def angles_between(points, x):
    """Geodesic distances from each row of `points` to the point x."""
    dots = np.clip(points @ x.vector, -1.0, 1.0)
    return np.arccos(dots)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely supported signed measure on S^n: rows of `points` paired
    with `weights`; `separation` records the packing radius when the
    support came from a packing."""

    points: np.ndarray
    weights: np.ndarray
    separation: float = None
    seed: int = None

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if pts.shape[0] != w.shape[0]:
            raise ValueError("points and weights must pair up")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("atoms must be unit vectors")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, points, separation=None, seed=None):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        m = points.shape[0]
        return cls(points, np.full(m, 1.0 / m), separation, seed)

    @classmethod
    def point_mass(cls, x):
        return cls(x.vector[None, :], np.array([1.0]))

    @property
    def dim(self):
        return self.points.shape[1] - 1

    @property
    def size(self):
        return self.points.shape[0]

    @property
    def total_mass(self):
        return float(np.sum(np.abs(self.weights)))

    @property
    def is_probability(self):
        return (np.all(self.weights > 0)
                and abs(self.weights.sum() - 1.0) < 1e-12
                and np.allclose(self.weights, self.weights[0]))

    def __iter__(self):
        for row, w in zip(self.points, self.weights):
            yield SpherePoint(tuple(row)), float(w)

    def angles_to(self, x):
        return angles_between(self.points, x)

    def min_antipodal_gap(self):
        """min over ordered pairs of |x - (-y)| in geodesic distance."""
        if self.size < 2:
            return math.pi
        dots = np.clip(self.points @ self.points.T, -1.0, 1.0)
        np.fill_diagonal(dots, 0.0)
        return float(np.arccos(-np.min(dots)) if np.min(dots) > -1.0 else 0.0)

    def min_separation(self):
        if self.size < 2:
            return math.pi
        tree = cKDTree(self.points)
        d, _ = tree.query(self.points, k=2)
        chord = float(np.min(d[:, 1]))
        return 2.0 * math.asin(min(1.0, chord / 2.0))


def ball_measure(n, r):
    """Normalized measure of a geodesic ball of radius r (whole sphere = 1).

    Closed forms on S^2 and S^3; the regularized incomplete beta integral
    I_{sin^2(r/2)}(n/2, n/2) elsewhere.
    """
    if not 0.0 <= r <= math.pi + 1e-15:
        raise ValueError("radius must lie in [0, pi]")
    r = min(r, math.pi)
    if n == 2:
        return (1.0 - math.cos(r)) / 2.0
    if n == 3:
        return (r - math.sin(r) * math.cos(r)) / math.pi
    return float(betainc(n / 2.0, n / 2.0, math.sin(r / 2.0) ** 2))


def ball_radius(n, measure):
    """Inverse of ball_measure."""
    if not 0.0 <= measure <= 1.0:
        raise ValueError("measure must lie in [0, 1]")
    u = float(betaincinv(n / 2.0, n / 2.0, measure))
    return 2.0 * math.asin(math.sqrt(u))


def sample_uniform(n, count, seed):
    """count i.i.d. uniform points on S^n, deterministic given seed."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((count, n + 1))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _kronecker_alphas(d):
    # R_d sequence: alpha_i = phi^{-i} with phi the root of x^{d+1} = x + 1
    phi = 2.0
    for _ in range(80):
        phi = (1.0 + phi) ** (1.0 / (d + 1))
    return np.array([phi ** -(i + 1) for i in range(d)])


def sphere_grid(n, count, seed):
    """Low-discrepancy grid: Kronecker sequence in the unit cube pushed to
    the sphere by the equal-area (beta inverse CDF) map, with a seeded
    offset. Deterministic given (n, count, seed)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    offset = rng.random(n)
    idx = np.arange(1, count + 1)[:, None]
    u = np.mod(idx * _kronecker_alphas(n)[None, :] + offset[None, :], 1.0)
    # hyperspherical angles: theta_j has density sin^{n-j}, last is uniform
    pts = np.empty((count, n + 1))
    sin_prod = np.ones(count)
    for j in range(n - 1):
        p = n - j  # power of sin in the density, p >= 2 here
        theta = 2.0 * np.arcsin(np.sqrt(betaincinv(p / 2.0 + 0.0,
                                                   p / 2.0 + 0.0,
                                                   u[:, j])))
        # density sin^{p-1}: beta parameters (p/2, p/2)
        pts[:, j] = sin_prod * np.cos(theta)
        sin_prod = sin_prod * np.sin(theta)
    phi = 2.0 * math.pi * u[:, n - 1]
    pts[:, n - 1] = sin_prod * np.cos(phi)
    pts[:, n] = sin_prod * np.sin(phi)
    return pts


def _covering_ok(grid, mesh, n, seed, probes=2048):
    # seeded spot check that every probe point is within `mesh` of the grid
    tree = cKDTree(grid)
    pts = sample_uniform(n, probes, seed ^ 0x5EED)
    d, _ = tree.query(pts)
    geo = 2.0 * np.arcsin(np.clip(d / 2.0, 0.0, 1.0))
    return float(np.max(geo)) <= mesh


def _mesh_grid(n, mesh, seed):
    # grid with empirically certified covering radius <= mesh
    count = max(512, int((3.0 / mesh) ** n))
    for _ in range(8):
        grid = sphere_grid(n, count, seed)
        if _covering_ok(grid, mesh, n, seed):
            return grid
        count *= 2
    raise RuntimeError("could not certify grid mesh")


def greedy_packing(n, r, seed, reject_run=2000, max_points=200000):
    """Uniform probability measure on a maximal r-separated set.

    Points are accepted greedily from a seeded uniform stream until a long
    rejection run, then a deterministic grid sweep (mesh <= r/4) certifies
    maximality, adding any uncovered grid point and re-sweeping.
    """
    if not 0.0 < r <= math.pi:
        raise ValueError("separation must lie in (0, pi]")
    rng = np.random.Generator(np.random.PCG64(seed))
    chord = 2.0 * math.sin(min(r, math.pi) / 2.0)

    accepted = [sample_uniform(n, 1, seed)[0]]
    rejections = 0
    batch = 256
    while rejections < reject_run and len(accepted) < max_points:
        g = rng.standard_normal((batch, n + 1))
        cands = g / np.linalg.norm(g, axis=1, keepdims=True)
        arr = np.asarray(accepted)
        dmin = np.min(np.linalg.norm(cands[:, None, :] - arr[None, :, :],
                                     axis=2), axis=1)
        for i in range(batch):
            if dmin[i] >= chord:
                # re-check against points accepted inside this batch
                arr2 = np.asarray(accepted[len(arr):]) if len(accepted) > len(arr) else None
                if arr2 is None or np.min(np.linalg.norm(arr2 - cands[i], axis=1)) >= chord:
                    accepted.append(cands[i])
                    rejections = 0
                    continue
            rejections += 1

    # maximality sweep: every grid point must be within r of the set
    grid = _mesh_grid(n, r / 4.0, seed)
    while len(accepted) < max_points:
        tree = cKDTree(np.asarray(accepted))
        d, _ = tree.query(grid)
        worst = int(np.argmax(d))
        if d[worst] < chord:
            break
        accepted.append(grid[worst])

    pts = np.asarray(accepted)
    mu = AtomicMeasure.uniform(pts, separation=r, seed=seed)
    if mu.min_separation() < r - 1e-12:
        raise RuntimeError("packing lost its separation invariant")
    return mu


def remove_antipodal_pairs(mu, eps):
    """Perturb one member of each near-antipodal pair by geodesic distance
    eps along a deterministic tangent direction."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if mu.separation is not None and eps >= mu.separation / 2.0:
        raise ValueError("eps must stay below half the separation")
    pts = mu.points.copy()
    m = pts.shape[0]
    moved = set()
    for i in range(m):
        for j in range(i + 1, m):
            gap = math.acos(min(1.0, max(-1.0, -float(np.dot(pts[i], pts[j])))))
            if gap < ANTIPODAL_TOL and j not in moved:
                y = pts[j]
                axis = int(np.argmin(np.abs(y)))
                e = np.zeros_like(y)
                e[axis] = 1.0
                tang = e - np.dot(e, y) * y
                tang /= np.linalg.norm(tang)
                pts[j] = math.cos(eps) * y + math.sin(eps) * tang
                moved.add(j)
    sep = None if mu.separation is None else mu.separation - 2.0 * eps
    return AtomicMeasure(pts, mu.weights.copy(), separation=sep, seed=mu.seed)


def riemann_sum(mu, x):
    """sum_j w_j |x - y_j|^{-n} in geodesic distance; signaled infinity when
    x sits on an atom."""
    theta = mu.angles_to(x)
    if np.any(theta < 1e-12):
        return math.inf
    n = mu.dim
    return float(np.dot(mu.weights, theta ** (-float(n))))


def hl_maximal(nu, x):
    """Exact Hardy-Littlewood maximal function of an atomic measure.

    For atomic nu the supremum over radii is attained in the limit at atom
    distances, so it is the max over distinct distances d of the mass within
    d divided by ball_measure(n, d).
    """
    theta = nu.angles_to(x)
    if np.any(theta < 1e-12):
        return math.inf
    n = nu.dim
    order = np.argsort(theta)
    d_sorted = theta[order]
    w_sorted = np.abs(nu.weights)[order]
    cum = np.cumsum(w_sorted)
    # group equal distances: use the last index of each run
    best = 0.0
    m = len(d_sorted)
    for i in range(m):
        if i + 1 < m and d_sorted[i + 1] - d_sorted[i] < 1e-15:
            continue
        best = max(best, cum[i] / ball_measure(n, d_sorted[i]))
    return float(best)


def _lll_reduce(basis, delta=0.75):
    """Plain floating-point LLL on the rows of `basis`."""
    b = [row.astype(float).copy() for row in basis]
    n = len(b)

    def gso(b):
        bstar = []
        mu = np.zeros((n, n))
        for i in range(n):
            v = b[i].copy()
            for j in range(i):
                denom = np.dot(bstar[j], bstar[j])
                mu[i, j] = np.dot(b[i], bstar[j]) / denom if denom > 0 else 0.0
                v -= mu[i, j] * bstar[j]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gso(b)
    k = 1
    guard = 0
    while k < n and guard < 10000:
        guard += 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q != 0:
                b[k] = b[k] - q * b[j]
                bstar, mu = gso(b)
        lhs = np.dot(bstar[k], bstar[k])
        rhs = (delta - mu[k, k - 1] ** 2) * np.dot(bstar[k - 1], bstar[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1].copy(), b[k].copy()
            bstar, mu = gso(b)
            k = max(k - 1, 1)
    return np.array(b)


def _canonical_relation(q):
    q = np.asarray(q, dtype=int)
    g = int(np.gcd.reduce(np.abs(q[q != 0])))
    if g > 1:
        q = q // g
    lead = q[np.nonzero(q)[0][0]]
    if lead < 0:
        q = -q
    return tuple(int(c) for c in q)


def integer_relation_probe(values, height):
    """Search integer vectors q, max|q_i| <= height, with
    |sum q_i v_i| < 1e-9 * height.

    Exhaustive (meet in the middle) up to 4 values, LLL-based above. A None
    result is heuristic evidence of rational independence, never a proof.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    v = np.asarray(values, dtype=float)
    m = len(v)
    tol = 1e-9 * height
    if m == 0:
        return None
    if m <= 4:
        half = m // 2
        rng = np.arange(-height, height + 1)
        left = rng.copy().reshape(-1, 1)
        for i in range(1, half):
            left = np.hstack([np.repeat(left, 2 * height + 1, axis=0),
                              np.tile(rng, left.shape[0]).reshape(-1, 1)])
        right = rng.copy().reshape(-1, 1)
        for i in range(1, m - half):
            right = np.hstack([np.repeat(right, 2 * height + 1, axis=0),
                               np.tile(rng, right.shape[0]).reshape(-1, 1)])
        if half == 0:
            left = np.zeros((1, 0), dtype=int)
        sums_l = left @ v[:half] if half else np.zeros(1)
        sums_r = right @ v[half:]
        order = np.argsort(sums_r)
        sr = sums_r[order]
        for i, s in enumerate(np.atleast_1d(sums_l)):
            lo = np.searchsorted(sr, -s - tol)
            hi = np.searchsorted(sr, -s + tol)
            for idx in range(lo, hi):
                q = np.concatenate([np.atleast_2d(left)[i],
                                    right[order[idx]]]).astype(int)
                if np.any(q != 0) and abs(float(np.dot(q, v))) < tol:
                    return _canonical_relation(q)
        return None
    # lattice route
    for scale in (1e6, 1e9, 1e12):
        rows = np.hstack([np.eye(m), np.round(scale * v).reshape(-1, 1)])
        reduced = _lll_reduce(rows)
        for row in reduced:
            q = np.round(row[:m]).astype(int)
            if np.all(np.abs(q) <= height) and np.any(q != 0):
                if abs(float(np.dot(q, v))) < tol:
                    return _canonical_relation(q)
    return None


def sphere_quadrature(n, f, budget, zonal=False, seed=0):
    """Integral of f against the uniform probability measure.

    zonal=True: f is a function of the polar angle; Gauss nodes for the
    weight sin^{n-1} make this exact (1e-10) for polynomial integrands of
    degree <= budget. Otherwise plain Monte Carlo with a standard-error
    estimate.
    """
    if budget < 100:
        raise ValueError("budget must be >= 100")
    if zonal:
        m = min(max(budget // 2 + 1, 32), 16384)
        nodes, weights = roots_gegenbauer(m, (n - 1) / 2.0)
        theta = np.arccos(np.clip(nodes, -1.0, 1.0))
        vals = np.asarray(f(theta), dtype=float)
        est = float(np.dot(weights, vals) / np.sum(weights))
        return est, 0.0
    pts = sample_uniform(n, budget, seed)
    vals = np.asarray(f(pts), dtype=float)
    est = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(budget))
    return est, stderr


def save_packing_csv(mu, path, extra_header=()):
    """Packing CSV: `# dim=<n> sep=<r> seed=<s>` header then one row per
    atom, n+1 coordinate columns plus the weight, 17 significant digits."""
    sep = "nan" if mu.separation is None else repr(float(mu.separation))
    seed = "none" if mu.seed is None else str(mu.seed)
    lines = list(extra_header)
    lines.append(f"# dim={mu.dim} sep={sep} seed={seed}")
    for row, w in zip(mu.points, mu.weights):
        cells = [format(v, ".17g") for v in row] + [format(w, ".17g")]
        lines.append(",".join(cells))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_packing_csv(path):
    points, weights = [], []
    sep = None
    seed = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if "dim=" in line:
                    for tok in line[1:].split():
                        if tok.startswith("sep="):
                            sep = None if tok[4:] == "nan" else float(tok[4:])
                        elif tok.startswith("seed="):
                            seed = None if tok[5:] == "none" else int(tok[5:])
                continue
            cells = [float(c) for c in line.split(",")]
            points.append(cells[:-1])
            weights.append(cells[-1])
    return AtomicMeasure(np.asarray(points), np.asarray(weights),
                         separation=sep, seed=seed)
