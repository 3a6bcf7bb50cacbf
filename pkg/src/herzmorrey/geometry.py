"""Dyadic annuli A_k = B_k minus B_{k-1} with B_k = {|x| <= 2^k}, and radial quadrature.

A radial integrand on R^n integrates as sigma_n * int g(r) r^(n-1) dr.  Each
annulus carries Gauss-Legendre nodes in log-radius; the stored weights
already include sigma_n r^(n-1) and the Jacobian of r = e^u, so an integral
is just ``sum(weights * g(radii))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import InvalidGrid, NonFiniteIntegrand

__all__ = [
    "SphereConstants",
    "sphere_constants",
    "DyadicGrid",
    "build_grid",
    "integrate_radial",
    "gauss_unit",
    "log_segment_rule",
    "DEFAULT_NODES",
]

DEFAULT_NODES = 32
LN2 = math.log(2.0)


@dataclass(frozen=True)
class SphereConstants:
    v_n: float
    sigma_n: float


def sphere_constants(n: int) -> SphereConstants:
    if n < 1:
        raise InvalidGrid(f"dimension must be >= 1, got {n}")
    v = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    return SphereConstants(v_n=v, sigma_n=n * v)


@lru_cache(maxsize=None)
def gauss_unit(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = leggauss(order)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def log_segment_rule(a, b, order: int):
    """Nodes and dr-weights of Gauss-Legendre in log r on [a, b] (0 < a <= b).

    ``a`` and ``b`` may be arrays of equal shape; the result then has one
    extra trailing axis of length ``order``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    t, w = gauss_unit(order)
    la = np.log(a)[..., None]
    span = (np.log(b) - np.log(a))[..., None]
    r = np.exp(la + span * t)
    return r, span * w * r


@dataclass(frozen=True, eq=False)
class DyadicGrid:
    n: int
    k_min: int
    k_max: int
    nodes_per_annulus: int
    radii: np.ndarray  # shape (annuli, nodes)
    weights: np.ndarray
    sphere: SphereConstants

    @property
    def ks(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    @property
    def shape(self):
        return self.radii.shape

    @property
    def inner_radius(self) -> float:
        return math.ldexp(1.0, self.k_min - 1)

    @property
    def outer_radius(self) -> float:
        return math.ldexp(1.0, self.k_max)

    def index(self, k: int) -> int:
        if not self.k_min <= k <= self.k_max:
            raise InvalidGrid(f"annulus {k} outside grid [{self.k_min}, {self.k_max}]")
        return k - self.k_min

    def annulus_of(self, r) -> np.ndarray:
        """Index k of the annulus (2^(k-1), 2^k] containing each radius."""
        r = np.asarray(r, dtype=float)
        m, e = np.frexp(r)  # r = m 2^e with m in [0.5, 1)
        return np.where(m == 0.5, e - 1, e).astype(int)

    def annulus_measures(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def ball_measure(self, k: int) -> float:
        """|B_k| as seen by the grid (the ball truncated at 2^(k_min - 1))."""
        return float(self.annulus_measures()[: self.index(k) + 1].sum())

    def ball_mask(self, k: int) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        mask[: self.index(k) + 1] = True
        return mask

    def refined(self, factor: int = 2) -> "DyadicGrid":
        return build_grid(self.n, self.k_min, self.k_max, self.nodes_per_annulus * factor)


def build_grid(n: int, k_min: int, k_max: int, nodes_per_annulus: int = DEFAULT_NODES) -> DyadicGrid:
    if n < 1:
        raise InvalidGrid(f"dimension must be >= 1, got {n}")
    if not k_min < k_max:
        raise InvalidGrid(f"need k_min < k_max, got {k_min} >= {k_max}")
    if nodes_per_annulus < 4:
        raise InvalidGrid(f"nodes_per_annulus must be >= 4, got {nodes_per_annulus}")
    sph = sphere_constants(n)
    t, w = gauss_unit(nodes_per_annulus)
    ks = np.arange(k_min, k_max + 1, dtype=float)
    # r = 2^(k-1) * 2^t keeps every node strictly inside its annulus
    radii = np.exp2(ks[:, None] - 1.0 + t[None, :])
    weights = sph.sigma_n * radii**n * LN2 * w[None, :]
    radii.flags.writeable = False
    weights.flags.writeable = False
    return DyadicGrid(n, int(k_min), int(k_max), int(nodes_per_annulus), radii, weights, sph)


def integrate_radial(grid: DyadicGrid, g, k_range: tuple[int, int] | None = None) -> float:
    """Integral of a radial integrand over the selected annuli (inclusive range).

    ``g`` is a vectorised callable of the radius or an array of node values.
    """
    vals = g(grid.radii) if callable(g) else np.asarray(g, dtype=float)
    vals = np.broadcast_to(np.asarray(vals, dtype=float), grid.shape)
    lo, hi = (grid.k_min, grid.k_max) if k_range is None else k_range
    sl = slice(grid.index(lo), grid.index(hi) + 1)
    block = vals[sl]
    if not np.all(np.isfinite(block)):
        raise NonFiniteIntegrand("integrand is not finite at some grid node")
    return float(np.sum(grid.weights[sl] * block))
