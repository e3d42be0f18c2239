"""Deterministic direction grids on spheres.

Used by grid-certified tests (covering, support dominance, width
certificates).  Planar grids are uniform in angle; 3D uses a Fibonacci
lattice; higher dimensions fall back to a fixed-key pseudo-grid.  Each
grid reports a nominal angular resolution so downstream claims can carry
their certification granularity.
"""

from __future__ import annotations

import math

import numpy as np

from ._rng import substream

__all__ = ["direction_grid", "default_grid_size"]

_PSEUDO_GRID_KEY = 0x9E3779B97F4A7C15  # fixed; grids are data, not randomness


def default_grid_size(dim: int) -> int:
    if dim == 2:
        return 2048
    if dim == 3:
        return 4096
    return 8192


def direction_grid(dim: int, count: int | None = None):
    """Unit directions covering S^{dim-1} plus a nominal resolution (radians).

    2D: exact uniform angles, resolution = 2*pi/count.
    3D: Fibonacci sphere, resolution ~ 2.4/sqrt(count).
    dim >= 4: fixed-key isotropic pseudo-grid with antipodes, nominal
    resolution pi * count**(-1/(dim-1)).
    """
    if dim < 2:
        raise ValueError(f"direction grids need dim >= 2, got {dim}")
    m = default_grid_size(dim) if count is None else int(count)
    if m < 2:
        raise ValueError("grid needs at least 2 directions")
    if dim == 2:
        theta = np.arange(m) * (2.0 * math.pi / m)
        return np.column_stack([np.cos(theta), np.sin(theta)]), 2.0 * math.pi / m
    if dim == 3:
        i = np.arange(m)
        z = 1.0 - (2.0 * i + 1.0) / m
        phi = i * math.pi * (3.0 - math.sqrt(5.0))
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        dirs = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
        return dirs, 2.4 / math.sqrt(m)
    half = (m + 1) // 2
    rng = substream(_PSEUDO_GRID_KEY, dim, half)
    g = rng.standard_normal((half, dim))
    g /= np.linalg.norm(g, axis=1)[:, None]
    dirs = np.concatenate([g, -g])[:m]
    return dirs, math.pi * m ** (-1.0 / (dim - 1))
