"""Distance from points to convex hulls of finite point sets.

Two routes with different shapes:

* `wolfe_distance` -- the min-norm-point active-set method (Wolfe, 1976),
  a support-based descent over convex combinations.  Works in any
  dimension, one query point at a time, exact up to the duality-gap stop.
* `batch_distance` -- vectorized exact distances for many query points at
  once, used by hit-or-miss volume sampling.  Specialized closed forms for
  segments, planar polygons and 3D polytopes (triangulated facets via
  Qhull); falls back to per-point `wolfe_distance` in higher dimensions.

The two routes are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import numpy as np

__all__ = ["NonconvergenceError", "wolfe_distance", "batch_distance"]

MAX_ITER = 100_000


class NonconvergenceError(RuntimeError):
    """Hull-distance iteration cap exceeded; carries the best bracket found."""

    def __init__(self, message, distance_upper=None, distance_lower=None):
        super().__init__(message)
        self.distance_upper = distance_upper
        self.distance_lower = distance_lower


def _affine_minimizer(z):
    """Min-norm point of the affine hull of rows of z, as barycentric weights."""
    m = z.shape[0]
    kkt = np.zeros((m + 1, m + 1))
    kkt[:m, :m] = z @ z.T
    kkt[:m, m] = 1.0
    kkt[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return sol[:m]


def wolfe_distance(points, q, tol, max_iter=MAX_ITER):
    """Distance from q to conv(points) with nearest-point witness.

    Parameters
    ----------
    points : array (N, n)
        Generators of the hull.
    q : array (n,)
        Query point.
    tol : float
        Duality-gap stop: iteration ends once the gap drops below
        tol * (1 + |q|).

    Returns
    -------
    (distance, witness) : (float, array (n,))
        witness is the nearest point of the hull, a convex combination of
        the inputs.

    Raises
    ------
    NonconvergenceError
        If the iteration cap is hit before the gap closes.  The error
        carries the best upper/lower distance bracket; it is never turned
        into a silent wrong answer.
    """
    pts = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float)
    z = pts - q
    scale = tol * (1.0 + np.linalg.norm(q))

    norms2 = np.einsum("ij,ij->i", z, z)
    start = int(np.argmin(norms2))
    corral = [start]
    lam = np.array([1.0])
    x = z[start].copy()

    best_lower = 0.0
    for _ in range(max_iter):
        xn = np.linalg.norm(x)
        if xn <= scale:
            return xn, q + x
        scores = z @ x
        j = int(np.argmin(scores))
        lower = scores[j] / xn
        best_lower = max(best_lower, lower)
        if xn - max(lower, 0.0) <= scale:
            return xn, q + x
        if j in corral:
            # support point already in the corral: no further progress possible
            return xn, q + x
        corral.append(j)
        lam = np.append(lam, 0.0)

        while True:
            sub = z[corral]
            alpha = _affine_minimizer(sub)
            if np.all(alpha > -1e-14):
                lam = np.clip(alpha, 0.0, None)
                lam /= lam.sum()
                break
            neg = alpha < lam
            with np.errstate(divide="ignore", invalid="ignore"):
                steps = np.where(neg & (alpha < 0), lam / (lam - alpha), np.inf)
            theta = min(1.0, float(np.min(steps)))
            lam = (1.0 - theta) * lam + theta * alpha
            keep = lam > 1e-14
            if keep.all():
                keep[int(np.argmin(lam))] = False
            corral = [c for c, k in zip(corral, keep) if k]
            lam = lam[keep]
            s = lam.sum()
            if s <= 0:
                corral = [j]
                lam = np.array([1.0])
                break
            lam /= s
        x = lam @ z[corral]

    xn = float(np.linalg.norm(x))
    raise NonconvergenceError(
        f"hull distance did not converge in {max_iter} iterations "
        f"(bracket [{max(best_lower, 0.0):.3e}, {xn:.3e}])",
        distance_upper=xn,
        distance_lower=max(best_lower, 0.0),
    )


# ---------------------------------------------------------------------------
# vectorized exact distances


def _seg_distance(a, b, x):
    """Distances from rows of x to segment [a, b]."""
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        return np.linalg.norm(x - a, axis=1)
    t = np.clip((x - a) @ d / dd, 0.0, 1.0)
    proj = a + t[:, None] * d
    return np.linalg.norm(x - proj, axis=1)


def _polygon_distance_2d(hull, x):
    """Distances from rows of x (S, 2) to a CCW convex polygon (V, 2)."""
    nv = hull.shape[0]
    if nv == 1:
        return np.linalg.norm(x - hull[0], axis=1)
    if nv == 2:
        return _seg_distance(hull[0], hull[1], x)
    edges = np.roll(hull, -1, axis=0) - hull                     # (V, 2)
    rel = x[:, None, :] - hull[None, :, :]                       # (S, V, 2)
    cross = edges[None, :, 0] * rel[:, :, 1] - edges[None, :, 1] * rel[:, :, 0]
    inside = np.all(cross >= 0.0, axis=1)
    dist = np.zeros(x.shape[0])
    out = ~inside
    if np.any(out):
        xo = x[out]
        d = np.full(xo.shape[0], np.inf)
        for i in range(nv):
            d = np.minimum(d, _seg_distance(hull[i], hull[(i + 1) % nv], xo))
        dist[out] = d
    return dist


def _triangle_distance(tri, x):
    """Distances from rows of x (S, 3) to a single 3D triangle (3, 3)."""
    a, b, c = tri
    ab, ac = b - a, c - a
    ap = x - a
    d1 = ap @ ab
    d2 = ap @ ac
    bp = x - b
    d3 = bp @ ab
    d4 = bp @ ac
    cp = x - c
    d5 = cp @ ab
    d6 = cp @ ac

    closest = np.empty_like(x)
    done = np.zeros(x.shape[0], dtype=bool)

    def settle(mask, pts):
        m = mask & ~done
        closest[m] = pts if pts.ndim == 1 else pts[m]
        done[m] = True

    settle((d1 <= 0) & (d2 <= 0), a)                          # vertex a
    settle((d3 >= 0) & (d4 <= d3), b)                          # vertex b
    settle((d6 >= 0) & (d5 <= d6), c)                          # vertex c

    vc = d1 * d4 - d3 * d2
    mask = (vc <= 0) & (d1 >= 0) & (d3 <= 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(d1 - d3 != 0, d1 / (d1 - d3), 0.0)
    settle(mask, a + np.clip(t, 0, 1)[:, None] * ab)           # edge ab

    vb = d5 * d2 - d1 * d6
    mask = (vb <= 0) & (d2 >= 0) & (d6 <= 0)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(d2 - d6 != 0, d2 / (d2 - d6), 0.0)
    settle(mask, a + np.clip(t, 0, 1)[:, None] * ac)           # edge ac

    va = d3 * d6 - d5 * d4
    mask = (va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0)
    denom = (d4 - d3) + (d5 - d6)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(denom != 0, (d4 - d3) / denom, 0.0)
    settle(mask, b + np.clip(t, 0, 1)[:, None] * (c - b))      # edge bc

    if not done.all():                                          # interior: project to plane
        n = np.cross(ab, ac)
        nn = n @ n
        rem = ~done
        if nn < 1e-300:  # degenerate triangle, interior region is empty
            closest[rem] = a
        else:
            t = (x[rem] - a) @ n / nn
            closest[rem] = x[rem] - t[:, None] * n
    return np.linalg.norm(x - closest, axis=1)


def _polytope_distance_3d(vertices, x):
    from scipy.spatial import ConvexHull, QhullError

    try:
        hull = ConvexHull(vertices)
    except QhullError:
        return None  # degenerate (flat/collinear); caller falls back
    a_eq = hull.equations[:, :3]
    b_eq = hull.equations[:, 3]
    inside = np.all(x @ a_eq.T + b_eq <= 1e-12, axis=1)
    dist = np.zeros(x.shape[0])
    out = ~inside
    if np.any(out):
        xo = x[out]
        d = np.full(xo.shape[0], np.inf)
        for simplex in hull.simplices:
            d = np.minimum(d, _triangle_distance(vertices[simplex], xo))
        dist[out] = d
    return dist


def batch_distance(vertices, x, tol=1e-9):
    """Exact distances from each row of x to conv(vertices).

    Dispatches on shape: point/segment closed forms in any dimension,
    polygon edges in 2D, triangulated facets in 3D, per-point Wolfe
    iteration otherwise (slow path, documented).
    """
    v = np.asarray(vertices, dtype=float)
    x = np.asarray(x, dtype=float)
    if v.shape[0] == 1:
        return np.linalg.norm(x - v[0], axis=1)
    if v.shape[0] == 2:
        return _seg_distance(v[0], v[1], x)
    dim = v.shape[1]
    if dim == 2:
        from .curves import hull_2d

        return _polygon_distance_2d(hull_2d(v), x)
    if dim == 3:
        d = _polytope_distance_3d(v, x)
        if d is not None:
            return d
        # flat in 3D: split into in-plane polygon distance + off-plane offset
        centered = v - v.mean(axis=0)
        _, svals, vt = np.linalg.svd(centered, full_matrices=True)
        if svals[0] < 1e-14:
            return np.linalg.norm(x - v[0], axis=1)
        if svals[1] < 1e-12 * svals[0]:
            # collinear: plain segment between extreme points
            axis = vt[0]
            proj = (v - v[0]) @ axis
            lo, hi = proj.min(), proj.max()
            a = v[0] + lo * axis
            b = v[0] + hi * axis
            return _seg_distance(a, b, x)
        from .curves import hull_2d

        plane = vt[:2]
        v2 = (v - v[0]) @ plane.T
        x2 = (x - v[0]) @ plane.T
        off = (x - v[0]) @ vt[2]
        in_plane = _polygon_distance_2d(hull_2d(v2), x2)
        return np.hypot(in_plane, off)
    return np.array([wolfe_distance(v, xi, tol)[0] for xi in x])
