"""Convex bodies and their basic functionals.

A body is one of three variants: a vertex polytope, a ball, or a support
oracle (a callable giving h(K, u) directly; the constant-width families
live here).  All evaluation goes through the support function, so the
functionals -- width, mean width, norm, diameter, planar projection --
share one code path across variants.

Bodies are immutable after construction and safe to evaluate from any
number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._grids import direction_grid
from ._rng import substream
from .constants import sphere_area

__all__ = [
    "ConvexBody",
    "Polytope",
    "Ball",
    "SupportOracle",
    "ReuleauxPolygon",
    "RevolvedReuleaux",
    "SphereQuadrature",
    "DiameterEstimate",
    "support",
    "width",
    "mean_width",
    "norm",
    "diameter",
    "diameter_report",
    "project_body",
    "translate",
    "check_sublinearity",
    "check_constant_width",
    "body_to_json",
    "body_from_json",
]


def _as_matrix(points, name="points") -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


class ConvexBody:
    """Base for the body variants; evaluation is via the support function."""

    dimension: int

    def support_single(self, u: np.ndarray) -> float:
        raise NotImplementedError

    def support_batch(self, dirs: np.ndarray) -> np.ndarray:
        """h(K, u) for each row of dirs; default loops over support_single."""
        return np.array([self.support_single(u) for u in dirs])

    @property
    def declared_width(self) -> Optional[float]:
        return None


class Polytope(ConvexBody):
    """Convex hull of a finite vertex set (hull is implicit, never built)."""

    def __init__(self, vertices):
        v = _as_matrix(vertices, "vertices")
        if v.shape[0] < 1:
            raise ValueError("polytope needs at least one vertex")
        if v.shape[1] < 2:
            raise ValueError(f"ambient dimension must be >= 2, got {v.shape[1]}")
        v.setflags(write=False)
        self.vertices = v
        self.dimension = v.shape[1]

    def support_single(self, u):
        return float(np.max(self.vertices @ u))

    def support_batch(self, dirs):
        return np.max(dirs @ self.vertices.T, axis=1)


class Ball(ConvexBody):
    def __init__(self, center, radius):
        c = np.asarray(center, dtype=float)
        if c.ndim != 1 or c.shape[0] < 2:
            raise ValueError("ball center must be an n-vector, n >= 2")
        if not np.all(np.isfinite(c)):
            raise ValueError("ball center must be finite")
        r = float(radius)
        if not (r >= 0.0) or not math.isfinite(r):
            raise ValueError(f"ball radius must be >= 0, got {radius}")
        c.setflags(write=False)
        self.center = c
        self.radius = r
        self.dimension = c.shape[0]

    def support_single(self, u):
        return float(self.center @ u + self.radius * np.linalg.norm(u))

    def support_batch(self, dirs):
        return dirs @ self.center + self.radius * np.linalg.norm(dirs, axis=1)

    @property
    def declared_width(self):
        return 2.0 * self.radius


class SupportOracle(ConvexBody):
    """Body given by its support function.

    evaluator must be positively homogeneous and sublinear; this is not
    enforceable at construction, but `check_sublinearity` certifies it on
    sampled pairs.  An optional vectorized evaluator speeds up quadrature.
    """

    def __init__(self, dimension, evaluator: Callable, declared_width=None,
                 batch_evaluator: Callable | None = None):
        if dimension < 2:
            raise ValueError(f"ambient dimension must be >= 2, got {dimension}")
        self.dimension = int(dimension)
        self._evaluator = evaluator
        self._batch = batch_evaluator
        self._declared_width = None if declared_width is None else float(declared_width)

    def support_single(self, u):
        return float(self._evaluator(np.asarray(u, dtype=float)))

    def support_batch(self, dirs):
        if self._batch is not None:
            return np.asarray(self._batch(np.asarray(dirs, dtype=float)), dtype=float)
        return super().support_batch(dirs)

    @property
    def declared_width(self):
        return self._declared_width


class ReuleauxPolygon(SupportOracle):
    """Regular Reuleaux polygon of constant width in the plane.

    Built on a regular polygon with an odd number of vertices; each
    boundary arc has radius equal to the width and is centered at the
    opposite vertex.  The support function is evaluated in closed form
    from the arc normal intervals.
    """

    def __init__(self, width, sides=3, center=(0.0, 0.0)):
        k = int(sides)
        if k < 3 or k % 2 == 0:
            raise ValueError(f"Reuleaux polygon needs an odd vertex count >= 3, got {sides}")
        theta = float(width)
        if theta <= 0:
            raise ValueError(f"width must be positive, got {width}")
        self.width_value = theta
        self.sides = k
        self.center = np.asarray(center, dtype=float)
        m = (k - 1) // 2
        circum = theta / (2.0 * math.sin(math.pi * m / k))
        ang = math.pi + 2.0 * math.pi * np.arange(k) / k  # vertex 0 on the -x axis
        verts = self.center + circum * np.column_stack([np.cos(ang), np.sin(ang)])
        self._verts = verts
        # normal interval of the arc centered at vertex j: chord directions to
        # the two opposite vertices
        starts = np.empty(k)
        for j in range(k):
            a = verts[(j + m) % k] - verts[j]
            starts[j] = math.atan2(a[1], a[0])
        self._arc_start = starts % (2.0 * math.pi)
        self._arc_span = math.pi / k
        super().__init__(2, self._eval_single, declared_width=theta,
                         batch_evaluator=self._eval_batch)

    def _eval_batch(self, dirs):
        vals = dirs @ self._verts.T                      # (M, k)
        best = np.max(vals, axis=1)
        scale = np.linalg.norm(dirs, axis=1)
        ang = np.arctan2(dirs[:, 1], dirs[:, 0]) % (2.0 * math.pi)
        for j in range(self.sides):
            rel = (ang - self._arc_start[j]) % (2.0 * math.pi)
            in_arc = rel <= self._arc_span
            cand = vals[:, j] + self.width_value * scale
            best = np.where(in_arc, np.maximum(best, cand), best)
        return best

    def _eval_single(self, u):
        return self._eval_batch(u[None, :])[0]

    def boundary_points(self, count, closed=True):
        """Sample the boundary (counterclockwise) as an array of 2-vectors."""
        k, m = self.sides, (self.sides - 1) // 2
        order = np.argsort(self._arc_start)
        per_arc = np.full(k, count // k)
        per_arc[: count % k] += 1
        pts = []
        for idx, j in enumerate(order):
            t = self._arc_start[j] + self._arc_span * np.arange(per_arc[idx]) / per_arc[idx]
            pts.append(self._verts[j] + self.width_value
                       * np.column_stack([np.cos(t), np.sin(t)]))
        pts = np.vstack(pts)
        if closed:
            pts = np.vstack([pts, pts[:1]])
        return pts


class RevolvedReuleaux(SupportOracle):
    """Reuleaux triangle revolved about its symmetry axis: a 3D body of
    constant width.

    The axis passes through one vertex and the midpoint of the opposite
    arc (the x-axis here).  The 3D support function reduces to the planar
    support of the meridian profile evaluated at (u_axis, |u_perp|).
    """

    def __init__(self, width):
        self._profile = ReuleauxPolygon(width, sides=3)
        self.width_value = float(width)
        super().__init__(3, self._eval_single, declared_width=width,
                         batch_evaluator=self._eval_batch)

    def _eval_batch(self, dirs):
        meridian = np.column_stack([dirs[:, 0], np.hypot(dirs[:, 1], dirs[:, 2])])
        return self._profile.support_batch(meridian)

    def _eval_single(self, u):
        return self._eval_batch(u[None, :])[0]


@dataclass(frozen=True)
class SphereQuadrature:
    """Monte Carlo spec for sphere averages.

    antithetic_monte_carlo evaluates the width h(u) + h(-u) on sample_count/2
    direction pairs; monte_carlo evaluates 2 h(u) on sample_count directions.
    """

    sample_count: int
    seed: int
    method: str = "antithetic_monte_carlo"

    def __post_init__(self):
        if self.method not in ("monte_carlo", "antithetic_monte_carlo"):
            raise ValueError(f"unknown quadrature method {self.method!r}")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")
        if self.method == "antithetic_monte_carlo" and self.sample_count % 2:
            raise ValueError("antithetic quadrature needs an even sample_count")


@dataclass(frozen=True)
class DiameterEstimate:
    value: float
    exact: bool
    grid_resolution: Optional[float] = None


def support(body: ConvexBody, u) -> float:
    """Support value h(K, u) = sup over K of <x, u>; u must be nonzero."""
    u = np.asarray(u, dtype=float)
    if u.shape != (body.dimension,):
        raise ValueError(f"direction has shape {u.shape}, body dimension is {body.dimension}")
    if np.linalg.norm(u) == 0.0:
        raise ValueError("support direction must be nonzero")
    return body.support_single(u)


def width(body: ConvexBody, u) -> float:
    """Width h(K, u) + h(K, -u) for a unit direction u."""
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("width requires a unit direction")
    return support(body, u) + support(body, -u)


def _width_samples(body: ConvexBody, quad: SphereQuadrature) -> np.ndarray:
    rng = substream(quad.seed)
    n = body.dimension
    if quad.method == "antithetic_monte_carlo":
        dirs = rng.standard_normal((quad.sample_count // 2, n))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        return body.support_batch(dirs) + body.support_batch(-dirs)
    dirs = rng.standard_normal((quad.sample_count, n))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return 2.0 * body.support_batch(dirs)


def mean_width(body: ConvexBody, quad: SphereQuadrature) -> tuple[float, float]:
    """Monte Carlo estimate of the mean width with its standard error."""
    vals = _width_samples(body, quad)
    est = float(np.mean(vals))
    if vals.size < 2:
        return est, 0.0
    se = float(np.std(vals, ddof=1) / math.sqrt(vals.size))
    return est, se


def norm(body: ConvexBody, quad: SphereQuadrature) -> tuple[float, float]:
    """Estimate of N(K) = (sigma_{n-1}/2) * mean width, same stream as mean_width."""
    est, se = mean_width(body, quad)
    half_area = sphere_area(body.dimension) / 2.0
    return half_area * est, half_area * se


def diameter_report(body: ConvexBody, grid_size: int | None = None,
                    refine: bool = True) -> DiameterEstimate:
    """Diameter; exact for polytopes and balls, grid + local search for oracles.

    The oracle value is a lower-bound estimate: max of the width function
    over a direction grid, polished by a local derivative-free search.
    """
    if isinstance(body, Ball):
        return DiameterEstimate(2.0 * body.radius, exact=True)
    if isinstance(body, Polytope):
        v = body.vertices
        if v.shape[0] == 1:
            return DiameterEstimate(0.0, exact=True)
        best = 0.0
        chunk = max(1, int(2e7) // max(1, v.shape[0]))
        for lo in range(0, v.shape[0], chunk):
            diff = v[lo:lo + chunk, None, :] - v[None, :, :]
            best = max(best, float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diff, diff)))))
        return DiameterEstimate(best, exact=True)

    dirs, res = direction_grid(body.dimension, grid_size)
    widths = body.support_batch(dirs) + body.support_batch(-dirs)
    i = int(np.argmax(widths))
    value = float(widths[i])
    if refine:
        from scipy.optimize import minimize

        u0 = dirs[i]
        tangent = np.linalg.svd(np.eye(body.dimension) - np.outer(u0, u0))[0][:, :-1]

        def negw(t):
            u = u0 + tangent @ t
            u /= np.linalg.norm(u)
            return -(body.support_single(u) + body.support_single(-u))

        opt = minimize(negw, np.zeros(body.dimension - 1), method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
        value = max(value, float(-opt.fun))
    return DiameterEstimate(value, exact=False, grid_resolution=res)


def diameter(body: ConvexBody) -> float:
    return diameter_report(body).value


def _frame_basis(frame, dimension):
    if hasattr(frame, "e") and hasattr(frame, "f"):
        basis = np.column_stack([np.asarray(frame.e, float), np.asarray(frame.f, float)])
    else:
        basis = np.asarray(frame, dtype=float)
    if basis.shape != (dimension, 2):
        raise ValueError(f"frame basis has shape {basis.shape}, expected ({dimension}, 2)")
    gram = basis.T @ basis
    if np.max(np.abs(gram - np.eye(2))) > 1e-10:
        raise ValueError("degenerate frame: basis is not orthonormal")
    return basis


def project_body(body: ConvexBody, frame) -> ConvexBody:
    """Orthogonal projection onto the 2-plane spanned by the frame.

    Returns a 2D body in the frame's coordinates.  Constant width carries
    over: the projection of a constant-width body has the same width.
    """
    basis = _frame_basis(frame, body.dimension)
    if isinstance(body, Polytope):
        return Polytope(body.vertices @ basis)
    if isinstance(body, Ball):
        return Ball(basis.T @ body.center, body.radius)

    def lifted_batch(dirs2, _b=body, _basis=basis):
        return _b.support_batch(np.asarray(dirs2, float) @ _basis.T)

    return SupportOracle(2, lambda u2: float(lifted_batch(np.asarray(u2, float)[None, :])[0]),
                         declared_width=body.declared_width,
                         batch_evaluator=lifted_batch)


def translate(body: ConvexBody, shift) -> ConvexBody:
    """Translated copy of the body."""
    t = np.asarray(shift, dtype=float)
    if t.shape != (body.dimension,):
        raise ValueError("shift dimension mismatch")
    if isinstance(body, Polytope):
        return Polytope(body.vertices + t)
    if isinstance(body, Ball):
        return Ball(body.center + t, body.radius)

    def shifted_batch(dirs, _b=body, _t=t):
        return _b.support_batch(dirs) + np.asarray(dirs, float) @ _t

    return SupportOracle(body.dimension,
                         lambda u: float(shifted_batch(np.asarray(u, float)[None, :])[0]),
                         declared_width=body.declared_width,
                         batch_evaluator=shifted_batch)


def check_sublinearity(body: ConvexBody, pairs=10_000, seed=0, scale=1.0):
    """Max violation of h(u+v) <= h(u) + h(v) over sampled pairs (convexity
    certificate for oracles); <= ~1e-9 for a genuine support function."""
    rng = substream(seed, 0xC0)
    u = rng.standard_normal((pairs, body.dimension)) * scale
    v = rng.standard_normal((pairs, body.dimension)) * scale
    viol = body.support_batch(u + v) - body.support_batch(u) - body.support_batch(v)
    return float(np.max(viol))


def check_constant_width(body: ConvexBody, samples=10_000, seed=0):
    """Worst deviation |w(K, u) - declared width| over sampled unit u.

    Returns (max_deviation, worst_direction).  Raises if the body does not
    declare a width.
    """
    theta = body.declared_width
    if theta is None:
        raise ValueError("body declares no constant width")
    rng = substream(seed, 0xC1)
    dirs = rng.standard_normal((samples, body.dimension))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    w = body.support_batch(dirs) + body.support_batch(-dirs)
    dev = np.abs(w - theta)
    i = int(np.argmax(dev))
    return float(dev[i]), dirs[i]


def body_to_json(body: ConvexBody) -> dict:
    if isinstance(body, ReuleauxPolygon):
        return {"dimension": 2, "kind": "reuleaux_polygon",
                "width": body.width_value, "arcs": body.sides,
                "center": body.center.tolist()}
    if isinstance(body, RevolvedReuleaux):
        return {"dimension": 3, "kind": "revolved_reuleaux", "width": body.width_value}
    if isinstance(body, Polytope):
        return {"dimension": body.dimension, "kind": "polytope",
                "vertices": body.vertices.tolist()}
    if isinstance(body, Ball):
        return {"dimension": body.dimension, "kind": "ball",
                "center": body.center.tolist(), "radius": body.radius}
    raise ValueError("generic support oracles have no JSON form")


def body_from_json(data: dict) -> ConvexBody:
    kind = data.get("kind")
    if kind == "polytope":
        return Polytope(data["vertices"])
    if kind == "ball":
        return Ball(data["center"], data["radius"])
    if kind == "reuleaux_polygon":
        return ReuleauxPolygon(data["width"], data.get("arcs", 3),
                               data.get("center", (0.0, 0.0)))
    if kind == "revolved_reuleaux":
        return RevolvedReuleaux(data["width"])
    raise ValueError(f"unknown body kind {kind!r}")
