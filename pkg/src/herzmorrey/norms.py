"""Modulars, Luxemburg norms, weighted norms and the Herz-Morrey norm.

All norms act on node values over a ``DyadicGrid``.  Inputs may be a
``RadialFunction`` (evaluated at the nodes), any object with a ``values``
array of the grid's shape (operator outputs), or a plain array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InsufficientData, NonFiniteIntegrand
from .exponents import ExponentField, conjugate
from .geometry import DyadicGrid

__all__ = [
    "Status",
    "NormResult",
    "HerzMorreyResult",
    "SpaceParams",
    "PowerWeight",
    "HolderCheck",
    "DeltaEstimate",
    "node_values",
    "modular",
    "luxemburg_norm",
    "annulus_norms",
    "weighted_norm",
    "herz_morrey_norm",
    "holder_pairing_check",
    "holder_constant",
    "ball_norm_product",
    "ball_norms",
    "delta_estimate",
    "BISECTION_RTOL",
]

BISECTION_RTOL = 1e-10
ZERO_THRESHOLD = 1e-300
MODULAR_TOL = 1e-8
HERZ_TAIL_RTOL = 1e-6


class Status(str, Enum):
    CONVERGED = "converged"
    ZERO = "zero-function"
    TAIL = "tail-warning"


@dataclass(frozen=True)
class NormResult:
    value: float
    modular_at_value: float
    bisection_iterations: int
    bracket: tuple[float, float]
    status: Status
    tail_estimate: float | None = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def warning(self) -> str | None:
        if self.status is Status.TAIL:
            return f"tail({self.tail_estimate:.3g})"
        return None


@dataclass(frozen=True)
class HerzMorreyResult(NormResult):
    annulus_norms: np.ndarray = field(default=None, repr=False)
    argmax_k0: int | None = None


@dataclass(frozen=True)
class SpaceParams:
    alpha: float
    lam: float
    p: float
    exponent: ExponentField

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if self.p <= 0:
            raise ValueError(f"p must be > 0, got {self.p}")


@dataclass(frozen=True)
class PowerWeight:
    """(1 + r)^(-gamma(r)); ``gamma`` is a number or a callable of r."""

    gamma: object = 0.0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        g = self.gamma(r) if callable(self.gamma) else self.gamma
        return (1.0 + r) ** (-np.asarray(g, dtype=float))


def node_values(f, grid: DyadicGrid) -> np.ndarray:
    if hasattr(f, "values") and not callable(f):
        vals = np.asarray(f.values, dtype=float)
    elif callable(f):
        vals = np.asarray(f(grid.radii), dtype=float)
    else:
        vals = np.asarray(f, dtype=float)
    vals = np.broadcast_to(vals, grid.shape)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrand("function is not finite at some grid node")
    return vals


def _extends_beyond(f, grid: DyadicGrid, vals: np.ndarray) -> bool:
    """Does f carry mass past the outer boundary 2^k_max?"""
    if callable(f) and not hasattr(f, "values"):
        probe = grid.outer_radius * np.exp2(np.linspace(1e-9, 1.0, 17))
        return bool(np.any(np.abs(f(probe)) > ZERO_THRESHOLD))
    return bool(abs(vals[-1, -1]) > ZERO_THRESHOLD)


def _modular_rows(a, q, w, eta):
    """sum_j w (a/eta)^q along the last axis, one eta per row."""
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        terms = np.where(a > 0, (a / eta[..., None]) ** q, 0.0)
    return np.sum(w * terms, axis=-1)


def _luxemburg_rows(a, q, w, rtol=BISECTION_RTOL, max_expand=200):
    """Vectorised bracketing plus geometric bisection, one norm per row.

    Returns (eta, modular at eta, iterations, lo, hi).  Rows that vanish get
    eta = 0.  ``eta`` is the upper bracket end, so its modular is <= 1.
    """
    a = np.abs(a)
    zero = ~np.any(a > ZERO_THRESHOLD, axis=-1)
    a = np.where(a > ZERO_THRESHOLD, a, 0.0)
    rows = a.shape[0]
    # constant-exponent estimates with q- and q+ of each row seed the bracket
    qmask = np.where(a > 0, q, np.nan)
    with np.errstate(all="ignore"):
        q_lo = np.where(zero, 1.0, np.nanmin(np.where(zero[:, None], 1.0, qmask), axis=-1))
        q_hi = np.where(zero, 1.0, np.nanmax(np.where(zero[:, None], 1.0, qmask), axis=-1))
        scale = np.where(zero, 1.0, np.max(a, axis=-1))
        s = a / scale[:, None]
        est_lo = scale * np.sum(w * s ** q_lo[:, None], axis=-1) ** (1.0 / q_lo)
        est_hi = scale * np.sum(w * s ** q_hi[:, None], axis=-1) ** (1.0 / q_hi)
    lo = np.where(zero, 1.0, 0.5 * np.minimum(est_lo, est_hi))
    hi = np.where(zero, 1.0, 2.0 * np.maximum(est_lo, est_hi))
    lo = np.where(lo > 0, lo, scale * 1e-300)
    iterations = np.zeros(rows, dtype=int)
    for _ in range(max_expand):
        f_lo = _modular_rows(a, q, w, lo)
        f_hi = _modular_rows(a, q, w, hi)
        bad_lo = (f_lo < 1.0) & ~zero
        bad_hi = (f_hi > 1.0) & ~zero
        if not (bad_lo.any() or bad_hi.any()):
            break
        lo = np.where(bad_lo, 0.5 * lo, lo)
        hi = np.where(bad_hi, 2.0 * hi, hi)
        iterations += bad_lo | bad_hi
    else:
        raise RuntimeError("Luxemburg bracket not found")
    while True:
        active = ((hi - lo) > rtol * hi) & ~zero
        if not active.any():
            break
        mid = np.sqrt(lo * hi)
        f_mid = _modular_rows(a, q, w, mid)
        go_hi = active & (f_mid <= 1.0)
        go_lo = active & (f_mid > 1.0)
        hi = np.where(go_hi, mid, hi)
        lo = np.where(go_lo, mid, lo)
        iterations += active
    eta = np.where(zero, 0.0, hi)
    mod = np.where(zero, 0.0, _modular_rows(a, q, w, np.where(zero, 1.0, hi)))
    return eta, mod, iterations, np.where(zero, 0.0, lo), eta


def modular(f, q: ExponentField, grid: DyadicGrid, eta: float) -> float:
    if eta <= 0:
        raise ValueError("eta must be positive")
    a = np.abs(node_values(f, grid)).ravel()
    qv = q.at_radius(grid.radii).ravel()
    return float(_modular_rows(a[None, :], qv[None, :], grid.weights.ravel()[None, :], np.array([eta]))[0])


def luxemburg_norm(f, q: ExponentField, grid: DyadicGrid, rtol: float = BISECTION_RTOL) -> NormResult:
    """inf{eta > 0 : F_q(f/eta) <= 1} over the whole grid."""
    vals = node_values(f, grid)
    a = np.abs(vals).ravel()[None, :]
    qv = q.at_radius(grid.radii).ravel()[None, :]
    w = grid.weights.ravel()[None, :]
    eta, mod, its, lo, hi = _luxemburg_rows(a, qv, w, rtol)
    if eta[0] == 0.0:
        return NormResult(0.0, 0.0, 0, (0.0, 0.0), Status.ZERO)
    status, tail = Status.CONVERGED, None
    if _extends_beyond(f, grid, vals):
        outer = np.abs(vals[-1]) / eta[0]
        share = float(np.sum(grid.weights[-1] * outer ** q.at_radius(grid.radii[-1])))
        status, tail = Status.TAIL, share
    return NormResult(float(eta[0]), float(mod[0]), int(its[0]), (float(lo[0]), float(hi[0])), status, tail)


def weighted_norm(f, q: ExponentField, grid: DyadicGrid, weight, rtol: float = BISECTION_RTOL) -> NormResult:
    """Luxemburg norm of weight * f."""
    wv = node_values(weight, grid)
    if np.any(wv <= 0):
        raise ValueError("weight must be positive at every node")
    vals = node_values(f, grid) * wv
    res = luxemburg_norm(vals, q, grid, rtol)
    if res.status is not Status.ZERO and callable(f) and not hasattr(f, "values") and _extends_beyond(f, grid, vals):
        outer = np.abs(vals[-1]) / res.value
        share = float(np.sum(grid.weights[-1] * outer ** q.at_radius(grid.radii[-1])))
        res = NormResult(res.value, res.modular_at_value, res.bisection_iterations, res.bracket, Status.TAIL, share)
    return res


def annulus_norms(f, q: ExponentField, grid: DyadicGrid, rtol: float = BISECTION_RTOL):
    """||f chi_k||_{L^q} for every annulus k of the grid, batched."""
    a = np.abs(node_values(f, grid))
    return _luxemburg_rows(a, q.at_radius(grid.radii), grid.weights, rtol)


def _herz_combine(norms, ks, alpha, lam, p):
    """sup_{k0} 2^(-k0 lam) (sum_{k<=k0} 2^(k alpha p) N_k^p)^(1/p), in logs."""
    with np.errstate(divide="ignore"):
        log_terms = p * (ks * alpha * math.log(2.0) + np.log(norms))
    log_partial = np.logaddexp.accumulate(log_terms) / p
    log_vals = log_partial - ks * lam * math.log(2.0)
    return log_vals, log_partial


def herz_morrey_norm(f, params: SpaceParams, grid: DyadicGrid, rtol: float = BISECTION_RTOL) -> HerzMorreyResult:
    """Herz-Morrey norm with the sup over k0 restricted to the grid range.

    The result carries a tail warning when the sup sits on the outer
    boundary while the partial sums are still growing there, since then the
    truncated sup may miss larger values beyond the grid.
    """
    eta, mod, its, lo, hi = annulus_norms(f, params.exponent, grid, rtol)
    ks = grid.ks.astype(float)
    nonzero = eta > 0
    if not nonzero.any():
        return HerzMorreyResult(0.0, 0.0, 0, (0.0, 0.0), Status.ZERO, None, eta, None)
    log_vals, log_partial = _herz_combine(eta, ks, params.alpha, params.lam, params.p)
    i = int(np.argmax(log_vals))
    value = float(np.exp(log_vals[i]))
    lo_vals, _ = _herz_combine(lo, ks, params.alpha, params.lam, params.p)
    bracket = (float(np.exp(np.max(lo_vals))), value)
    # the modular farthest from 1 among populated annuli
    dev = np.abs(mod[nonzero] - 1.0)
    worst = float(mod[nonzero][np.argmax(dev)])
    status, tail = Status.CONVERGED, None
    if i == len(ks) - 1 and len(ks) > 1:
        growth = math.expm1(log_partial[-1] - log_partial[-2])
        if growth > HERZ_TAIL_RTOL:
            status, tail = Status.TAIL, float(growth)
    if status is Status.CONVERGED and _extends_beyond(f, grid, node_values(f, grid)) and i == len(ks) - 1:
        status, tail = Status.TAIL, 0.0
    return HerzMorreyResult(value, worst, int(its.max()), bracket, status, tail, eta, int(grid.ks[i]))


def holder_constant(q: ExponentField) -> float:
    lo, hi = q.bounds()
    return 1.0 + 1.0 / lo - 1.0 / hi


@dataclass(frozen=True)
class HolderCheck:
    lhs: float
    rhs: float
    constant: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-12)


def holder_pairing_check(f, g, q: ExponentField, grid: DyadicGrid) -> HolderCheck:
    """int |fg| against C_q ||f||_q ||g||_q' with C_q = 1 + 1/q- - 1/q+."""
    qc = conjugate(q)  # raises NonConjugable outside the class P
    fv = node_values(f, grid)
    gv = node_values(g, grid)
    lhs = float(np.sum(grid.weights * np.abs(fv * gv)))
    c = holder_constant(q)
    rhs = c * luxemburg_norm(fv, q, grid).value * luxemburg_norm(gv, qc, grid).value
    return HolderCheck(lhs, rhs, c)


def ball_norms(q: ExponentField, grid: DyadicGrid, ks=None, rtol: float = BISECTION_RTOL):
    """(|B_k|, ||chi_{B_k}||_q) for each requested k, batched over balls."""
    ks = grid.ks if ks is None else np.asarray(ks, dtype=int)
    idx = np.array([grid.index(int(k)) for k in ks])
    annulus = np.arange(grid.shape[0])
    mask = (annulus[None, :] <= idx[:, None]).astype(float)  # (balls, annuli)
    a = np.repeat(mask, grid.shape[1], axis=1)
    qv = np.broadcast_to(q.at_radius(grid.radii).ravel(), a.shape)
    w = np.broadcast_to(grid.weights.ravel(), a.shape)
    eta, *_ = _luxemburg_rows(a, qv, w, rtol)
    measures = np.cumsum(grid.annulus_measures())[idx]
    return measures, eta


def ball_norm_product(q: ExponentField, grid: DyadicGrid, k: int) -> float:
    """(1/|B_k|) ||chi_{B_k}||_q ||chi_{B_k}||_q'."""
    meas, nq = ball_norms(q, grid, [k])
    _, nqc = ball_norms(conjugate(q), grid, [k])
    return float(nq[0] * nqc[0] / meas[0])


@dataclass(frozen=True)
class DeltaEstimate:
    delta: float
    slope: float
    residual: float
    upper_bound: float
    ratio_constant: float
    ball_count: int


def delta_estimate(q: ExponentField, grid: DyadicGrid, which: str = "q", ks=None) -> DeltaEstimate:
    """Regression estimate of the exponent in ||chi_S||/||chi_B|| <= C (|S|/|B|)^delta.

    ``which`` is "q" to use q itself or "conjugate" to use q'.  The slope is
    fitted through the origin over all nested pairs B_j inside B_k, then
    clamped to (0, 1/target+].  ``ratio_constant`` is the smallest C making
    the bound hold on every sampled pair with the clamped delta.
    """
    if which not in ("q", "conjugate"):
        raise ValueError("which must be 'q' or 'conjugate'")
    target = q if which == "q" else conjugate(q)
    ks = grid.ks if ks is None else np.asarray(ks, dtype=int)
    if len(ks) < 4:
        raise InsufficientData(f"need at least 4 nested balls, got {len(ks)}")
    meas, norms = ball_norms(target, grid, ks)
    j, k = np.triu_indices(len(ks), k=1)
    x = np.log(meas[j] / meas[k])
    y = np.log(norms[j] / norms[k])
    slope = float(np.dot(x, y) / np.dot(x, x))
    residual = float(np.sqrt(np.mean((y - slope * x) ** 2)))
    upper = 1.0 / target.bounds()[1]
    delta = min(max(slope, np.finfo(float).tiny), upper)
    constant = float(np.exp(np.max(y - delta * x)))
    return DeltaEstimate(delta, slope, residual, upper, constant, int(len(ks)))
