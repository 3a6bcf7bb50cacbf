"""Fractional Hardy-type operators, the Riesz-type potential and the
fractional maximal operator of variable order, sampled on a dyadic grid.

The order beta is always evaluated at the output point x and held fixed
inside the integral.  Inputs are radial, so all operators reduce to
one-dimensional integrals in |t|.

Riesz potential
---------------
For |x| = rho and radial f,

    I f(rho) = sigma_n int_0^inf s^(n-1) f(s) K(rho, s) ds,

where K(rho, s) is the mean of |x - y|^(beta - n) over the sphere |y| = s.
K has the closed form  max^(-g) 2F1(g/2, g/2 - n/2 + 1; n/2; (min/max)^2)
with g = n - beta, and an integrable singularity at s = rho of order
|s - rho|^(beta - 1) (logarithmic when beta = 1).  The s-integral is split at
rho; each half is graded geometrically toward rho and the innermost shell
is integrated after the substitution s = rho +- h v^m, which removes the
leading singularity.  ``spherical_mean`` gives an independent route to K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import betainc, hyp2f1
from scipy.special import digamma
from scipy.special import gamma as scipy_gamma

from .errors import SingularityBudgetExceeded
from .exponents import ExponentField, gamma_at_radius
from .functions import CharBall, RadialFunction
from .geometry import DyadicGrid, gauss_unit, log_segment_rule, sphere_constants

__all__ = [
    "SampledOperatorOutput",
    "spherical_mean",
    "shell_kernel",
    "shell_kernel_quadrature",
    "hardy",
    "hardy_star",
    "riesz_radial",
    "riesz_at",
    "fractional_maximal",
    "fractional_maximal_at",
    "apply_weight",
    "riesz_lower_bound_check",
    "riesz_lower_bound_profile",
    "cap_fraction",
]

SHELL_BUDGET = 0.1
GRADED_ORDER = 10
# finest grading level is chosen so the shell [0, h] carries ~ (h/L)^beta <= e^-14
SHELL_LEVELS_MIN, SHELL_LEVELS_MAX = 30, 200
_ZERO = 1e-300


@dataclass(frozen=True, eq=False)
class SampledOperatorOutput:
    radii: np.ndarray
    values: np.ndarray
    operator: str
    params: dict = field(default_factory=dict)
    source: str = ""
    warnings: tuple = ()

    def as_rows(self):
        return list(zip(self.radii.ravel().tolist(), self.values.ravel().tolist()))


def _extends_beyond(f, outer: float) -> bool:
    lo, hi = f.support() if isinstance(f, RadialFunction) else (0.0, math.inf)
    if hi <= outer:
        return False
    probe = outer * np.exp2(np.linspace(1e-9, 1.0, 17))
    return bool(np.any(np.abs(f(probe)) > _ZERO))


def _tail_warnings(f, grid):
    return ("tail: input extends beyond the outer grid radius",) if _extends_beyond(f, grid.outer_radius) else ()


# ---------------------------------------------------------------- spherical means


def spherical_mean(f, center_radius: float, shell_radius: float, n: int, angular_nodes: int = 32) -> float:
    """Mean of radial f over the sphere |y - c| = s with |c| = rho.

    Gauss-Legendre in the polar angle with weight sin^(n-2); for n = 1 the
    "sphere" is the two points c +- s.
    """
    if center_radius < 0 or shell_radius < 0:
        raise ValueError("radii must be nonnegative")
    if angular_nodes < 8:
        raise ValueError("angular_nodes must be >= 8")
    rho, s = float(center_radius), float(shell_radius)
    if n == 1:
        return float(0.5 * (f(np.array(rho + s)) + f(np.array(abs(rho - s)))))
    t, w = gauss_unit(angular_nodes)
    theta = math.pi * t
    wt = w * np.sin(theta) ** (n - 2)
    r = np.sqrt(np.maximum(rho * rho + s * s + 2.0 * rho * s * np.cos(theta), 0.0))
    return float(np.sum(wt * f(r)) / np.sum(wt))


def shell_kernel(rho, s, beta, n: int, offset=None):
    """Mean of |x - y|^(beta - n) over |y| = s, with |x| = rho (closed form).

    ``offset`` = s - rho, when known exactly, avoids cancellation in 1 - z
    close to the diagonal.
    """
    rho = np.asarray(rho, dtype=float)
    s = np.asarray(s, dtype=float)
    beta = np.asarray(beta, dtype=float)
    u = np.abs(s - rho if offset is None else np.asarray(offset, dtype=float))
    g = n - beta
    if n == 1:
        with np.errstate(divide="ignore"):
            return 0.5 * (u ** (-g) + (rho + s) ** (-g))
    big = np.maximum(rho, s)
    with np.errstate(divide="ignore", invalid="ignore"):
        safe = np.where(big > 0, big, 1.0)
        w = np.where(big > 0, u * (2.0 * safe - u) / safe**2, 1.0)
        out = big ** (-g) * _hyp2f1_complement(0.5 * g, 0.5 * g - 0.5 * n + 1.0, 0.5 * n, w)
    return out


# below this, 2F1 is taken from the expansion about z = 1; scipy's direct
# evaluation there is slow, loses ~1e-8 by 1 - z = 1e-9 and overflows near 1e-14
_W_SWITCH = 0.1


def _hyp2f1_complement(a, b, c, w):
    """2F1(a, b; c; 1 - w), accurate as w -> 0."""
    a, b, w = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float), np.asarray(w, float))
    shape = w.shape
    a, b, w = a.ravel(), b.ravel(), w.ravel()
    e = c - a - b
    near = w < _W_SWITCH
    conn = near & (np.abs(e - np.round(e)) > 1e-8)
    log_case = near & (np.abs(e) <= 1e-8)
    direct = ~(conn | log_case)
    out = np.empty(w.shape)
    out[direct] = hyp2f1(a[direct], b[direct], c, 1.0 - w[direct])
    if conn.any():
        a_, b_, w_, e_ = a[conn], b[conn], w[conn], e[conn]
        g = scipy_gamma
        first = g(c) * g(e_) / (g(c - a_) * g(c - b_)) * hyp2f1(a_, b_, 1.0 - e_, w_)
        second = w_**e_ * g(c) * g(-e_) / (g(a_) * g(b_)) * hyp2f1(c - a_, c - b_, 1.0 + e_, w_)
        out[conn] = first + second
    if log_case.any():
        out[log_case] = _hyp2f1_log(a[log_case], b[log_case], w[log_case])
    # remaining near points have c - a - b a positive integer: 2F1 is finite at z = 1
    return out.reshape(shape)


def _hyp2f1_log(a, b, w, terms: int = 12):
    """2F1(a, b; a + b; 1 - w) from its logarithmic expansion about z = 1."""
    total = np.zeros_like(w)
    coef = np.ones_like(w)
    lw = np.log(w)
    for k in range(terms):
        total += coef * (2.0 * digamma(k + 1.0) - digamma(a + k) - digamma(b + k) - lw)
        coef = coef * (a + k) * (b + k) / (k + 1.0) ** 2 * w
    return scipy_gamma(a + b) / (scipy_gamma(a) * scipy_gamma(b)) * total


# fixed geometric panels in the angle, fine near theta = 0 where |x - y| is smallest
_THETA_BREAKS = np.concatenate([[0.0], math.pi * np.exp2(-np.arange(40, -1, -1, dtype=float))])


def shell_kernel_quadrature(rho, s, beta, n: int, angular_nodes: int = 16):
    """Same kernel as ``shell_kernel`` by composite Gauss-Legendre in the angle."""
    rho = np.asarray(rho, dtype=float)
    s = np.asarray(s, dtype=float)
    beta = np.broadcast_to(np.asarray(beta, dtype=float), np.broadcast(rho, s).shape)
    if n == 1:
        return shell_kernel(rho, s, beta, 1)
    t, w = gauss_unit(angular_nodes)
    a, b = _THETA_BREAKS[:-1], _THETA_BREAKS[1:]
    theta = (a[:, None] + (b - a)[:, None] * t[None, :]).ravel()
    wt = ((b - a)[:, None] * w[None, :]).ravel() * np.sin(theta) ** (n - 2)
    norm = math.sqrt(math.pi) * math.gamma((n - 1) / 2) / math.gamma(n / 2)
    rho_, s_, beta_ = np.broadcast_arrays(rho, s, beta)
    out = np.empty(rho_.shape)
    flat = out.reshape(-1)
    for i, (r0, s0, b0) in enumerate(zip(rho_.ravel(), s_.ravel(), beta_.ravel())):
        # (rho - s)^2 + 2 rho s (1 - cos) avoids cancellation near s = rho
        d2 = (r0 - s0) ** 2 + 4.0 * r0 * s0 * np.sin(0.5 * theta) ** 2
        flat[i] = np.sum(wt * d2 ** (0.5 * (b0 - n))) / norm
    return out


# ---------------------------------------------------------------- Hardy operators


def _cumulative_integral(f, grid: DyadicGrid, order: int):
    """int_{|t| < r} f(t) dt at every node, plus annulus totals."""
    sigma = grid.sphere.sigma_n
    fv = f(grid.radii)
    totals = np.sum(grid.weights * fv, axis=1)
    prefix = np.concatenate([[0.0], np.cumsum(totals)[:-1]])
    a = np.exp2(grid.ks - 1.0)[:, None] * np.ones(grid.shape)
    t, dw = log_segment_rule(a, grid.radii, order)
    partial = np.sum(sigma * t ** (grid.n - 1) * f(t) * dw, axis=-1)
    return prefix[:, None] + partial, totals


def hardy(f: RadialFunction, beta: ExponentField, grid: DyadicGrid, order: int | None = None) -> SampledOperatorOutput:
    """|x|^(beta(x) - n) int_{|t| < |x|} f(t) dt at every node."""
    order = order or grid.nodes_per_annulus
    cum, _ = _cumulative_integral(f, grid, order)
    b = beta.at_radius(grid.radii)
    vals = grid.radii ** (b - grid.n) * cum
    return SampledOperatorOutput(grid.radii, vals, "hardy", {"beta": beta.label}, getattr(f, "label", ""))


def hardy_star(f: RadialFunction, beta: ExponentField, grid: DyadicGrid, order: int | None = None,
               chunk: int = 256) -> SampledOperatorOutput:
    """int_{|t| >= |x|} f(t) |t|^(beta(x) - n) dt at every node."""
    order = order or grid.nodes_per_annulus
    n, sigma = grid.n, grid.sphere.sigma_n
    K, N = grid.shape
    b = beta.at_radius(grid.radii)
    # rest of the node's own annulus
    top = np.exp2(grid.ks.astype(float))[:, None] * np.ones(grid.shape)
    t, dw = log_segment_rule(grid.radii, top, order)
    partial = np.sum(sigma * f(t) * t ** (b[..., None] - 1.0) * dw, axis=-1)
    # whole annuli further out
    wf = (grid.weights * f(grid.radii)).ravel()
    r_flat = grid.radii.ravel()
    if beta.is_constant:
        per = np.sum((wf * r_flat ** (float(b.flat[0]) - n)).reshape(K, N), axis=1)
        suffix = np.concatenate([np.cumsum(per[::-1])[::-1][1:], [0.0]])
        outer = np.repeat(suffix, N).reshape(K, N)
    else:
        cols = np.nonzero(wf)[0]
        log_r = np.log(r_flat[cols])
        annulus_col = cols // N
        b_flat = b.ravel()
        annulus_row = np.repeat(np.arange(K), N)
        outer = np.empty(K * N)
        for start in range(0, K * N, chunk):
            sl = slice(start, min(start + chunk, K * N))
            expo = np.exp((b_flat[sl, None] - n) * log_r[None, :])
            mask = annulus_col[None, :] > annulus_row[sl, None]
            outer[sl] = np.sum(np.where(mask, expo * wf[cols][None, :], 0.0), axis=1)
        outer = outer.reshape(K, N)
    vals = partial + outer
    return SampledOperatorOutput(grid.radii, vals, "hardy_star", {"beta": beta.label},
                                 getattr(f, "label", ""), _tail_warnings(f, grid))


# ---------------------------------------------------------------- Riesz potential


def _sub_power(beta: float) -> int:
    return max(2, math.ceil(1.0 / beta)) if beta < 1.0 else 2


def _graded(edge, direction, length, levels: int, singular, beta, order: int = GRADED_ORDER):
    """Nodes on [edge, edge + direction * length] graded toward ``edge``.

    All arguments but ``levels``/``order`` are 1-D arrays over rows.  Level m
    covers offsets [L 2^-(m+1), L 2^-m]; the innermost piece [0, L 2^-levels]
    uses the power substitution where ``singular`` is set and plain
    Gauss-Legendre otherwise.  Returns (signed offsets from edge, ds-weights,
    shell-mask).
    """
    t, w = gauss_unit(order)
    lo = length[:, None] * np.exp2(-np.arange(1, levels + 1, dtype=float))[None, :]
    width = lo  # each level spans [lo, 2 lo]
    off = (lo[..., None] + width[..., None] * t).reshape(len(edge), -1)
    wts = (width[..., None] * w).reshape(len(edge), -1)
    h = length * 2.0 ** (-levels)
    m = np.array([_sub_power(float(bb)) for bb in beta], dtype=float)[:, None]
    sub_off = h[:, None] * t[None, :] ** m
    sub_w = h[:, None] * m * t[None, :] ** (m - 1.0) * w[None, :]
    plain_off = h[:, None] * t[None, :]
    plain_w = h[:, None] * w[None, :]
    sing = np.asarray(singular, dtype=bool)[:, None]
    first_off = np.where(sing, sub_off, plain_off)
    first_w = np.where(sing, sub_w, plain_w)
    off = np.concatenate([first_off, off], axis=1)
    wts = np.concatenate([first_w, wts], axis=1)
    shell = np.zeros(off.shape, dtype=bool)
    shell[:, :order] = sing
    return direction[:, None] * off, wts, shell


def _support_annuli(f, r_inner: float, r_outer: float):
    lo, hi = f.support() if isinstance(f, RadialFunction) else (0.0, math.inf)
    lo, hi = max(lo, r_inner), min(hi, r_outer)
    if hi <= lo:
        return None
    j_lo = int(np.frexp(lo)[1])  # annulus just above lo
    m_hi, e_hi = np.frexp(hi)
    return j_lo, int(e_hi) - (1 if m_hi == 0.5 else 0)


def riesz_at(f, beta: ExponentField, n: int, points, r_inner: float, r_outer: float,
             order: int = 16, shell_budget: float = SHELL_BUDGET, kernel: str = "closed",
             angular_nodes: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Riesz potential of radial f at the given radii, integrating over r_inner < |y| <= r_outer.

    Returns (values, shell shares).  ``kernel`` selects the closed form or the
    angular quadrature for K.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    sigma = sphere_constants(n).sigma_n
    out = np.zeros(pts.shape)
    shares = np.zeros(pts.shape)
    ann = _support_annuli(f, r_inner, r_outer)
    if ann is None:
        return out, shares
    j_lo, j_hi = ann
    js = np.arange(j_lo, j_hi + 1)
    seg_a, seg_b = np.exp2(js - 1.0), np.exp2(js.astype(float))
    bvals = beta.at_radius(pts)
    kern = shell_kernel if kernel == "closed" else (
        lambda r, s, b, nn, u: shell_kernel_quadrature(r, s, b, nn, angular_nodes))

    origin = pts == 0
    if origin.any():
        s, ds = log_segment_rule(seg_a, seg_b, order)
        s, ds = s.ravel(), ds.ravel()
        base = sigma * s ** (n - 1) * f(s) * ds
        for i in np.nonzero(origin)[0]:
            out[i] = np.sum(base * s ** (bvals[i] - n))

    m_arr, e_arr = np.frexp(pts)
    k_of = np.where(m_arr == 0.5, e_arr - 1, e_arr)
    for k in np.unique(k_of[~origin]):
        rows = np.nonzero((k_of == k) & ~origin)[0]
        rho, b = pts[rows], bvals[rows]
        B = len(rows)
        u_parts, w_parts, sh_parts = [], [], []
        far = (js <= k - 2) | (js >= k + 2)
        if far.any():
            s, ds = log_segment_rule(seg_a[far], seg_b[far], order)
            u_parts.append(s.ravel()[None, :] - rho[:, None])
            w_parts.append(np.broadcast_to(ds.ravel(), (B, s.size)))
            sh_parts.append(np.zeros((B, s.size), dtype=bool))
        a_k, b_k = math.ldexp(1.0, int(k) - 1), math.ldexp(1.0, int(k))
        beta_min = min(float(np.min(b)), 1.0)
        levels_sing = int(min(SHELL_LEVELS_MAX, max(SHELL_LEVELS_MIN, math.ceil(20.0 / beta_min))))
        if j_lo <= k <= j_hi:
            for direction, length in ((-1.0, rho - a_k), (1.0, b_k - rho)):
                u, ds, sh = _graded(rho, np.full(B, direction), length, levels_sing, np.ones(B, bool), b)
                u_parts.append(u), w_parts.append(ds), sh_parts.append(sh)
        for j, edge, direction, dist in ((k - 1, a_k, -1.0, rho - a_k), (k + 1, b_k, 1.0, b_k - rho)):
            if not j_lo <= j <= j_hi:
                continue
            length = math.ldexp(1.0, int(j) - 1)
            dmin = float(np.min(dist))
            floor = length * 2.0**-levels_sing
            levels = 1 if dmin >= length else min(levels_sing, math.ceil(math.log2(length / max(dmin, floor))) + 1)
            u, ds, sh = _graded(np.full(B, edge), np.full(B, direction), np.full(B, length), levels,
                                dist <= 0, b)
            u_parts.append((edge - rho)[:, None] + u), w_parts.append(ds), sh_parts.append(sh)
        if not u_parts:
            continue
        u = np.concatenate(u_parts, axis=1)
        s = rho[:, None] + u
        ds = np.concatenate(w_parts, axis=1)
        sh = np.concatenate(sh_parts, axis=1)
        fv = f(s)
        live = ds * fv != 0
        contrib = np.zeros(s.shape)
        if live.any():
            rr = np.broadcast_to(rho[:, None], s.shape)[live]
            bb = np.broadcast_to(b[:, None], s.shape)[live]
            contrib[live] = sigma * s[live] ** (n - 1) * fv[live] * ds[live] * kern(rr, s[live], bb, n, u[live])
        total = contrib.sum(axis=1)
        shell = np.where(sh, contrib, 0.0).sum(axis=1)
        out[rows] = total
        with np.errstate(divide="ignore", invalid="ignore"):
            shares[rows] = np.where(total != 0, np.abs(shell / total), 0.0)
    if np.any(shares > shell_budget):
        worst = float(pts[np.argmax(shares)])
        raise SingularityBudgetExceeded(
            f"singular shell carries {shares.max():.3g} of the Riesz integral at |x| = {worst:.6g}"
        )
    return out, shares


def riesz_radial(f, beta: ExponentField, grid: DyadicGrid, angular_nodes: int = 16,
                 shell_budget: float = SHELL_BUDGET, kernel: str = "closed", order: int | None = None) -> SampledOperatorOutput:
    """Riesz potential with kernel |x - y|^(beta(x) - n) at every grid node."""
    order = order or max(16, grid.nodes_per_annulus // 2)
    vals, shares = riesz_at(f, beta, grid.n, grid.radii.ravel(), grid.inner_radius, grid.outer_radius,
                            order=order, shell_budget=shell_budget, kernel=kernel, angular_nodes=angular_nodes)
    return SampledOperatorOutput(
        grid.radii, vals.reshape(grid.shape), "riesz",
        {"beta": beta.label, "kernel": kernel, "max_shell_share": float(shares.max(initial=0.0))},
        getattr(f, "label", ""), _tail_warnings(f, grid),
    )


# ---------------------------------------------------------------- fractional maximal operator


def cap_fraction(rho, t, r, n: int):
    """Fraction of the sphere |y| = t lying in the open ball B(x, r), |x| = rho."""
    rho, t, r = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (rho, t, r)))
    if n == 1:
        return 0.5 * ((np.abs(rho - t) < r).astype(float) + (rho + t < r).astype(float))
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (rho * rho + t * t - r * r) / (2.0 * rho * t)
    c = np.clip(np.where(np.isfinite(c), c, np.where(t < r, -1.0, 1.0)), -1.0, 1.0)
    half = 0.5 * betainc(0.5 * (n - 1), 0.5, 1.0 - c * c)
    frac = np.where(c >= 0, half, 1.0 - half)
    return np.where(rho == 0, (t < r).astype(float), frac)


def fractional_maximal_at(f, beta: ExponentField, n: int, points, radii_scan, r_inner: float,
                          r_outer: float, order: int = 20) -> np.ndarray:
    """max over scanned r of |B(x, r)|^(beta(x)/n - 1) int_{B(x, r)} |f| at the given radii.

    f is taken to vanish outside r_inner < |y| <= r_outer.  The ball integral
    is assembled shell by shell around the origin, weighting each sphere
    |y| = t by the exact fraction of it inside B(x, r).
    """
    scan = np.asarray(radii_scan, dtype=float)
    if scan.size == 0 or np.any(scan <= 0):
        raise ValueError("radii_scan must be a nonempty list of positive radii")
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    sph = sphere_constants(n)
    t_unit, w_unit = gauss_unit(order)
    # cosine map clusters nodes at both ends, absorbing sqrt-type kinks of the cap fraction
    v = 0.5 * (1.0 - np.cos(math.pi * t_unit))
    dv = 0.5 * math.pi * np.sin(math.pi * t_unit) * w_unit
    k_lo, k_hi = int(np.frexp(r_inner)[1]) - 1, int(np.frexp(r_outer)[1])
    dyadic = np.exp2(np.arange(k_lo, k_hi + 1, dtype=float))
    dyadic = np.concatenate([[r_inner, r_outer], dyadic[(dyadic > r_inner) & (dyadic < r_outer)]])
    b = beta.at_radius(pts)
    vol = sph.v_n * scan**n
    out = np.empty(pts.size)
    for i, rho in enumerate(pts):
        extra = np.concatenate([np.abs(rho - scan), rho + scan])
        extra = extra[(extra > r_inner) & (extra < r_outer)]
        bp = np.unique(np.concatenate([dyadic, extra]))
        a, c = bp[:-1], bp[1:]
        t = (a[:, None] + (c - a)[:, None] * v).ravel()
        dt = ((c - a)[:, None] * dv).ravel()
        g = sph.sigma_n * t ** (n - 1) * np.abs(f(t)) * dt
        live = g != 0
        caps = cap_fraction(rho, t[live][None, :], scan[:, None], n)
        ball = caps @ g[live]
        out[i] = np.max(vol ** (b[i] / n - 1.0) * ball)
    return out


def fractional_maximal(f, beta: ExponentField, grid: DyadicGrid, radii_scan, order: int = 20) -> SampledOperatorOutput:
    """Fractional maximal function of variable order at every grid node."""
    vals = fractional_maximal_at(f, beta, grid.n, grid.radii.ravel(), radii_scan,
                                 grid.inner_radius, grid.outer_radius, order)
    return SampledOperatorOutput(grid.radii, vals.reshape(grid.shape), "fractional_maximal",
                                 {"beta": beta.label, "scan": len(np.atleast_1d(radii_scan))},
                                 getattr(f, "label", ""))


# ---------------------------------------------------------------- weights and lower bounds


def apply_weight(out: SampledOperatorOutput, beta: ExponentField, c_infinity: float, n: int) -> SampledOperatorOutput:
    """Multiply node values by (1 + r)^(-gamma(r)), gamma = C_inf beta (1 - beta/n)."""
    gamma = gamma_at_radius(beta, c_infinity, n, out.radii)
    params = dict(out.params, weight_c_infinity=c_infinity)
    return replace(out, values=out.values * (1.0 + out.radii) ** (-gamma), params=params)


def _annulus_samples(k: int, count: int):
    return math.ldexp(1.0, k - 1) * np.exp2((np.arange(count) + 0.5) / count)


def riesz_lower_bound_check(beta: ExponentField, grid: DyadicGrid, k: int, sample_count: int = 16, **kw) -> float:
    """min over sampled x in A_k of I(chi_{B_k})(x) / |x|^beta(x)."""
    grid.index(k)
    x = _annulus_samples(k, sample_count)
    vals, _ = riesz_at(CharBall(k), beta, grid.n, x, grid.inner_radius, grid.outer_radius, **kw)
    return float(np.min(vals / x ** beta.at_radius(x)))


def riesz_lower_bound_profile(beta: ExponentField, grid: DyadicGrid, ks, sample_count: int = 16, **kw) -> dict:
    return {int(k): riesz_lower_bound_check(beta, grid, int(k), sample_count, **kw) for k in ks}
