"""Closed-form constants: gamma at half-integers, sphere areas, ball volumes,
and the coefficients appearing in the covering-curve inequalities.

Everything here is evaluated exactly in double precision via the gamma
recurrence from the base cases Gamma(1/2) = sqrt(pi) and Gamma(1) = 1; no
general-purpose gamma approximation is involved.  Dimensions are capped at
MAX_DIMENSION to rule out silent overflow of pi**(n/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MAX_DIMENSION",
    "HalfInteger",
    "gamma_half",
    "sphere_area",
    "ball_volume",
    "theorem2_coefficients",
    "theorem3_constant",
    "corollary_lower_bound",
    "gautschi_bounds",
]

MAX_DIMENSION = 200


@dataclass(frozen=True)
class HalfInteger:
    """A positive half-integer m/2, stored as twice its value."""

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int):
            raise TypeError(f"twice_value must be int, got {type(self.twice_value).__name__}")
        if self.twice_value < 1:
            raise ValueError(f"half-integer must be >= 1/2, got {self.twice_value}/2")

    @classmethod
    def from_value(cls, value: float) -> "HalfInteger":
        twice = round(2 * value)
        if abs(2 * value - twice) > 1e-12:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(twice))

    @property
    def value(self) -> float:
        return self.twice_value / 2.0


def _check_dim(n: int, minimum: int = 1) -> int:
    if not isinstance(n, (int,)) or isinstance(n, bool):
        raise TypeError(f"dimension must be int, got {type(n).__name__}")
    if n < minimum:
        raise ValueError(f"dimension must be >= {minimum}, got {n}")
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds supported cap {MAX_DIMENSION}")
    return n


def gamma_half(x: HalfInteger | int) -> float:
    """Gamma(m/2) by the recurrence Gamma(x+1) = x*Gamma(x).

    Accepts a HalfInteger or the raw twice-value integer m >= 1.  The pole
    at 0 is excluded by construction.
    """
    m = x.twice_value if isinstance(x, HalfInteger) else int(x)
    if m < 1:
        raise ValueError(f"gamma argument must be >= 1/2, got {m}/2")
    if m > 2 * MAX_DIMENSION + 2:
        raise ValueError(f"gamma argument {m}/2 exceeds supported range")
    if m % 2 == 0:
        result = 1.0          # Gamma(1)
        k = 2                 # current argument is k/2
    else:
        result = math.sqrt(math.pi)  # Gamma(1/2)
        k = 1
    while k < m:
        result *= k / 2.0
        k += 2
    return result


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere S^{n-1}: 2*pi^{n/2} / Gamma(n/2)."""
    _check_dim(n)
    return 2.0 * math.pi ** (n / 2.0) / gamma_half(n)


def ball_volume(n: int) -> float:
    """Volume of the unit ball B^n: sphere_area(n) / n."""
    _check_dim(n)
    return sphere_area(n) / n


def theorem2_coefficients(n: int) -> tuple[float, float]:
    """Coefficients (A, B) of the bound N(K) <= A*length + B*diam in R^n.

    A(n) = pi^{(n-1)/2} / (2 Gamma((n+1)/2)),
    B(n) = pi^{n/2-1} / Gamma(n/2).
    The bound fails in general for n = 1, so n >= 2 is required.
    """
    _check_dim(n, minimum=2)
    a = math.pi ** ((n - 1) / 2.0) / (2.0 * gamma_half(n + 1))
    b = math.pi ** (n / 2.0 - 1.0) / gamma_half(n)
    return a, b


def theorem3_constant(n: int) -> float:
    """Constant-width length floor: 2(pi-1) Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2))."""
    _check_dim(n, minimum=2)
    return 2.0 * (math.pi - 1.0) * gamma_half(n + 1) / (math.sqrt(math.pi) * gamma_half(n))


def corollary_lower_bound(n: int) -> float:
    """Explicit floor 2(pi-1) sqrt((n-1)/(2 pi)); never exceeds theorem3_constant(n)."""
    _check_dim(n, minimum=2)
    return 2.0 * (math.pi - 1.0) * math.sqrt((n - 1) / (2.0 * math.pi))


def gautschi_bounds(n: int) -> tuple[float, float, float]:
    """(sqrt((n-1)/2), Gamma((n+1)/2)/Gamma(n/2), sqrt((n+1)/2)).

    The two-sided Gautschi sandwich on the gamma ratio; lower <= ratio <= upper
    for every n >= 1.
    """
    _check_dim(n)
    lower = math.sqrt((n - 1) / 2.0)
    ratio = gamma_half(n + 1) / gamma_half(n)
    upper = math.sqrt((n + 1) / 2.0)
    return lower, ratio, upper
