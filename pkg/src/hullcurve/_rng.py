"""Deterministic random streams.

Every randomized routine in the package derives its generator from a
64-bit user seed plus a tuple of integer subkeys (restart index, instance
index, stage name hash, ...).  Substreams built this way are independent
of each other and of evaluation order, so results for a fixed seed are
bitwise reproducible no matter how work is scheduled.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream", "unit_directions", "antithetic_directions"]


def substream(seed: int, *subkeys: int) -> np.random.Generator:
    """Counter-based generator for (seed, subkeys).

    Uses Philox keyed through a SeedSequence so distinct subkey tuples
    give statistically independent streams.
    """
    ss = np.random.SeedSequence(entropy=int(seed) & 0xFFFFFFFFFFFFFFFF,
                                spawn_key=tuple(int(k) for k in subkeys))
    return np.random.Generator(np.random.Philox(ss))


def unit_directions(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform points on S^{dim-1}, shape (count, dim).

    Isotropic Gaussian vectors normalized to unit length; rows with
    pathologically small norm are redrawn (probability ~ 0 in double
    precision, but keeps the map total).
    """
    g = rng.standard_normal((count, dim))
    norms = np.linalg.norm(g, axis=1)
    bad = norms < 1e-12
    while np.any(bad):
        g[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms[bad] = np.linalg.norm(g[bad], axis=1)
        bad = norms < 1e-12
    return g / norms[:, None]


def antithetic_directions(rng: np.random.Generator, pairs: int, dim: int) -> np.ndarray:
    """`pairs` uniform directions u; callers pair each with -u."""
    return unit_directions(rng, pairs, dim)
