"""Polyline curves, hull membership, covering tests, and planar hull utilities.

A curve is an ordered point sequence; its length realizes the broken-line
length supremum exactly.  Hull containment queries go through a
support-based min-norm-point descent rather than facet enumeration, so
they work in any ambient dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._grids import direction_grid
from ._mindist import NonconvergenceError, wolfe_distance
from .bodies import ConvexBody, Polytope

__all__ = [
    "Polyline",
    "HullMembershipResult",
    "NonconvergenceError",
    "length",
    "hull_distance",
    "covers",
    "covering_report",
    "hull_2d",
    "perimeter_2d",
    "project_curve",
    "curve_to_json",
    "curve_from_json",
]


class Polyline:
    """Ordered point sequence in R^n; consecutive duplicates are allowed
    (zero-length edges contribute nothing)."""

    def __init__(self, points):
        p = np.asarray(points, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1:
            raise ValueError(f"polyline needs a non-empty (m, n) point array, got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("polyline points must be finite")
        p.setflags(write=False)
        self.points = p
        self.dimension = p.shape[1]

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class HullMembershipResult:
    inside: bool
    distance: float
    witness: np.ndarray


def length(curve: Polyline) -> float:
    """Sum of Euclidean edge lengths."""
    if len(curve) < 2:
        return 0.0
    return float(np.sum(np.linalg.norm(np.diff(curve.points, axis=0), axis=1)))


def hull_distance(q, curve: Polyline, tol: float) -> HullMembershipResult:
    """Distance from q to conv(curve points) by min-norm-point descent.

    Terminates when the duality gap drops below tol * (1 + |q|); raises
    NonconvergenceError (with the best bracket) if the iteration cap is
    exceeded, never returning a silent wrong answer.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = np.asarray(q, dtype=float)
    if q.shape != (curve.dimension,):
        raise ValueError(f"query has shape {q.shape}, curve dimension is {curve.dimension}")
    dist, witness = wolfe_distance(curve.points, q, tol)
    return HullMembershipResult(inside=dist <= tol, distance=float(dist), witness=witness)


@dataclass(frozen=True)
class CoveringReport:
    covered: bool
    worst_gap: float
    witness: np.ndarray      # vertex (polytope) or direction (grid test)
    grid_resolution: float | None = None


def covering_report(body: ConvexBody, curve: Polyline, tol: float,
                    grid_size: int | None = None) -> CoveringReport:
    """Does conv(curve) contain the body, up to tol?

    Polytopes are decided by vertex membership (necessary and sufficient).
    Balls and oracles get a support-dominance test h(K, u) <= h(conv c, u) + tol
    on a direction grid; the answer is certified only up to the reported
    grid resolution.
    """
    if body.dimension != curve.dimension:
        raise ValueError("body and curve dimensions differ")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(body, Polytope):
        worst = -np.inf
        worst_v = body.vertices[0]
        for v in body.vertices:
            res = hull_distance(v, curve, tol)
            if res.distance > worst:
                worst, worst_v = res.distance, v
        return CoveringReport(covered=worst <= tol, worst_gap=float(worst),
                              witness=np.asarray(worst_v))
    dirs, res = direction_grid(body.dimension, grid_size)
    gap = body.support_batch(dirs) - np.max(dirs @ curve.points.T, axis=1)
    i = int(np.argmax(gap))
    return CoveringReport(covered=gap[i] <= tol, worst_gap=float(gap[i]),
                          witness=dirs[i], grid_resolution=res)


def covers(body: ConvexBody, curve: Polyline, tol: float) -> bool:
    """True when conv(curve) contains the body up to tol (grid-certified
    for non-polytopes)."""
    return covering_report(body, curve, tol).covered


def hull_2d(points) -> np.ndarray:
    """Convex hull of planar points, counterclockwise, collinear interior
    points removed.  Degenerate inputs give 1 or 2 points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise ValueError("hull_2d expects a non-empty (m, 2) array")
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) == 1:
        return np.array(uniq)
    if len(uniq) == 2:
        return np.array(uniq)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all collinear: keep the two extremes
        return np.array([uniq[0], uniq[-1]])
    return np.array(hull)


def perimeter_2d(points) -> float:
    """Perimeter of the convex hull of planar points.

    Degenerate conventions match the thin limit of convex figures:
    a single point has perimeter 0, a segment is traversed both ways.
    """
    hull = hull_2d(points)
    if hull.shape[0] == 1:
        return 0.0
    if hull.shape[0] == 2:
        return 2.0 * float(np.linalg.norm(hull[1] - hull[0]))
    closed = np.vstack([hull, hull[:1]])
    return float(np.sum(np.linalg.norm(np.diff(closed, axis=0), axis=1)))


def project_curve(curve: Polyline, frame) -> Polyline:
    """Pointwise orthogonal projection onto a 2-plane, in frame coordinates."""
    from .bodies import _frame_basis

    basis = _frame_basis(frame, curve.dimension)
    return Polyline(curve.points @ basis)


def curve_to_json(curve: Polyline) -> dict:
    return {"dimension": curve.dimension, "points": curve.points.tolist()}


def curve_from_json(data: dict) -> Polyline:
    c = Polyline(data["points"])
    if "dimension" in data and int(data["dimension"]) != c.dimension:
        raise ValueError("declared dimension does not match the point data")
    return c
