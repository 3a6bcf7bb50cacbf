"""Radial test functions and their dyadic pieces f_j = f * chi_{A_j}.

Every family is smooth inside each dyadic annulus; jumps only occur at
radii 2^k.  The quadrature in ``geometry`` and ``operators`` relies on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RadialFunction",
    "CharAnnulus",
    "CharBall",
    "Power",
    "GaussBump",
    "Combination",
    "Restricted",
    "ZERO",
    "evaluate_fn",
    "restrict_to_annulus",
]


def _annulus_mask(r, j):
    lo, hi = math.ldexp(1.0, j - 1), math.ldexp(1.0, j)
    return (r > lo) & (r <= hi)


class RadialFunction:
    """A function of |x| only.  Calling it evaluates at an array of radii."""

    def __call__(self, r) -> np.ndarray:
        raise NotImplementedError

    def support(self) -> tuple[float, float]:
        """Radii (lo, hi) outside of which the function vanishes."""
        return 0.0, math.inf

    @property
    def label(self) -> str:
        return type(self).__name__

    def __add__(self, other):
        return Combination(((1.0, self), (1.0, other)))

    def __rmul__(self, c):
        return Combination(((float(c), self),))

    def is_zero(self) -> bool:
        return False


@dataclass(frozen=True)
class CharAnnulus(RadialFunction):
    """Indicator of A_j, i.e. of 2^(j-1) < |x| <= 2^j."""

    j: int

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return _annulus_mask(r, self.j).astype(float)

    def support(self):
        return math.ldexp(1.0, self.j - 1), math.ldexp(1.0, self.j)

    @property
    def label(self):
        return f"char-annulus:{self.j}"


@dataclass(frozen=True)
class CharBall(RadialFunction):
    """Indicator of the closed ball B_k = {|x| <= 2^k}."""

    k: int

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return (r <= math.ldexp(1.0, self.k)).astype(float)

    def support(self):
        return 0.0, math.ldexp(1.0, self.k)

    @property
    def label(self):
        return f"char-ball:{self.k}"


@dataclass(frozen=True)
class Power(RadialFunction):
    """|x|^exponent on the annuli k_lo..k_hi, zero elsewhere."""

    exponent: float
    k_lo: int
    k_hi: int

    def __post_init__(self):
        if self.k_lo > self.k_hi:
            raise ValueError("Power: k_lo must not exceed k_hi")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        inside = (r > math.ldexp(1.0, self.k_lo - 1)) & (r <= math.ldexp(1.0, self.k_hi))
        safe = np.where(inside, r, 1.0)
        return np.where(inside, safe**self.exponent, 0.0)

    def support(self):
        return math.ldexp(1.0, self.k_lo - 1), math.ldexp(1.0, self.k_hi)

    @property
    def label(self):
        return f"power:{self.exponent:g}:{self.k_lo}:{self.k_hi}"


@dataclass(frozen=True)
class GaussBump(RadialFunction):
    """exp(-((|x| - center) / width)^2)."""

    center: float
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("GaussBump: width must be positive")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.exp(-(((r - self.center) / self.width) ** 2))

    def support(self):
        # numerically zero beyond 40 widths (exp(-1600) underflows)
        return max(0.0, self.center - 40.0 * self.width), self.center + 40.0 * self.width

    @property
    def label(self):
        return f"gauss:{self.center:g}:{self.width:g}"


@dataclass(frozen=True)
class Combination(RadialFunction):
    """Finite linear combination sum c_i f_i."""

    terms: tuple = ()

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape)
        for c, f in self.terms:
            out = out + c * f(r)
        return out

    def support(self):
        parts = [f.support() for c, f in self.terms if c != 0 and not f.is_zero()]
        if not parts:
            return 0.0, 0.0
        return min(p[0] for p in parts), max(p[1] for p in parts)

    def is_zero(self):
        return all(c == 0 or f.is_zero() for c, f in self.terms)

    @property
    def label(self):
        if not self.terms:
            return "zero"
        return "+".join(f"{c:g}*{f.label}" for c, f in self.terms)


@dataclass(frozen=True)
class Restricted(RadialFunction):
    """base * chi_{A_j} for bases with no simpler restricted form."""

    base: RadialFunction
    j: int

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(_annulus_mask(r, self.j), self.base(r), 0.0)

    def support(self):
        lo, hi = self.base.support()
        return max(lo, math.ldexp(1.0, self.j - 1)), min(hi, math.ldexp(1.0, self.j))

    @property
    def label(self):
        return f"({self.base.label})|A{self.j}"


ZERO = Combination(())


def evaluate_fn(f: RadialFunction, r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    out = f(r)
    return float(out) if np.ndim(out) == 0 else out


def restrict_to_annulus(f: RadialFunction, j: int) -> RadialFunction:
    """f * chi_j, simplified where the family allows it."""
    if isinstance(f, CharAnnulus):
        return f if f.j == j else ZERO
    if isinstance(f, CharBall):
        return CharAnnulus(j) if j <= f.k else ZERO
    if isinstance(f, Power):
        return Power(f.exponent, j, j) if f.k_lo <= j <= f.k_hi else ZERO
    if isinstance(f, Combination):
        parts = tuple((c, restrict_to_annulus(g, j)) for c, g in f.terms)
        parts = tuple((c, g) for c, g in parts if not g.is_zero())
        return Combination(parts)
    if isinstance(f, Restricted):
        return f if f.j == j else ZERO
    lo, hi = f.support()
    if hi <= math.ldexp(1.0, j - 1) or lo > math.ldexp(1.0, j):
        return ZERO
    return Restricted(f, j)
