"""Variable exponents q(x) and variable orders beta(x) on R^n.

Every family here is radial, so a field is really a function of |x|.  The
families are symbolic rather than tabulated: the limit at infinity and, for
most forms, the infimum and supremum are known in closed form, which keeps
the condition checks honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import qmc

from .errors import DivergentConstant, InvalidSobolev, NonConjugable

__all__ = [
    "Role",
    "ExponentField",
    "Constant",
    "LogDecay",
    "LogDecayShifted",
    "Conjugate",
    "Sobolev",
    "ExponentStats",
    "Check",
    "ConditionReport",
    "evaluate",
    "conjugate",
    "conjugate_evaluate",
    "estimate_stats",
    "validate_pair",
    "sobolev_exponent",
    "gamma_weight",
    "gamma_at_radius",
    "default_sample_radii",
]

# tolerance for "q(inf) <= q(x)"; log-decay families reach the bound only in the limit
INFINITY_SLACK = 1e-12


class Role(str, Enum):
    LEBESGUE = "lebesgue"
    ORDER = "order"


@dataclass(frozen=True)
class ExponentField:
    """Base class for radial exponent families.

    Subclasses implement ``at_radius`` (vectorised over radii), the limit
    ``at_infinity`` and ``bounds`` (infimum and supremum over all of R^n).
    """

    role: Role = field(default=Role.LEBESGUE, kw_only=True)
    dimension: int | None = field(default=None, kw_only=True)

    def __post_init__(self):
        lo, hi = self.bounds()
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"{self.label}: exponent must be bounded, got [{lo}, {hi}]")
        if self.role is Role.LEBESGUE and lo < 1.0:
            raise ValueError(f"{self.label}: a Lebesgue exponent needs q >= 1, got inf q = {lo}")
        if self.role is Role.ORDER and lo < 0.0:
            raise ValueError(f"{self.label}: an order needs beta >= 0, got inf beta = {lo}")

    def at_radius(self, r):
        raise NotImplementedError

    @property
    def at_infinity(self) -> float:
        raise NotImplementedError

    def bounds(self) -> tuple[float, float]:
        return _scan_bounds(self)

    @property
    def label(self) -> str:
        return type(self).__name__

    @property
    def is_constant(self) -> bool:
        return False

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class Constant(ExponentField):
    value: float = 2.0

    def at_radius(self, r):
        return np.full(np.shape(r), float(self.value))

    @property
    def at_infinity(self):
        return float(self.value)

    def bounds(self):
        return float(self.value), float(self.value)

    @property
    def label(self):
        return f"const:{self.value:g}"

    @property
    def is_constant(self):
        return True


@dataclass(frozen=True)
class LogDecay(ExponentField):
    """q(x) = base + amplitude / ln(e + |x|)."""

    base: float = 1.2
    amplitude: float = 0.3

    def at_radius(self, r):
        r = np.asarray(r, dtype=float)
        return self.base + self.amplitude / np.log(math.e + r)

    @property
    def at_infinity(self):
        return float(self.base)

    def bounds(self):
        # monotone in |x|: the value at the origin is base + amplitude
        ends = (self.base, self.base + self.amplitude)
        return min(ends), max(ends)

    @property
    def label(self):
        return f"logdecay:{self.base:g}:{self.amplitude:g}"


@dataclass(frozen=True)
class LogDecayShifted(ExponentField):
    """LogDecay plus ``bump * cos^2(pi |x| / 2 radius)`` on ``|x| <= radius``.

    The bump is C^1, hence Lipschitz, hence locally log-Holder.
    """

    base: float = 1.2
    amplitude: float = 0.3
    bump: float = 0.2
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("LogDecayShifted: radius must be positive")
        super().__post_init__()

    def at_radius(self, r):
        r = np.asarray(r, dtype=float)
        inside = r <= self.radius
        profile = np.where(inside, np.cos(0.5 * np.pi * np.minimum(r, self.radius) / self.radius) ** 2, 0.0)
        return self.base + self.amplitude / np.log(math.e + r) + self.bump * profile

    @property
    def at_infinity(self):
        return float(self.base)

    @property
    def label(self):
        return f"logdecay-shifted:{self.base:g}:{self.amplitude:g}:{self.bump:g}:{self.radius:g}"


@dataclass(frozen=True)
class Conjugate(ExponentField):
    """The conjugate exponent q'(x) = q(x) / (q(x) - 1)."""

    of: ExponentField = None

    def __post_init__(self):
        if self.of is None:
            raise ValueError("Conjugate needs a base field")
        lo, _ = self.of.bounds()
        if lo <= 1.0:
            raise NonConjugable(f"{self.of.label}: inf q = {lo} <= 1 has no conjugate")
        super().__post_init__()

    def at_radius(self, r):
        q = self.of.at_radius(r)
        return q / (q - 1.0)

    @property
    def at_infinity(self):
        q = self.of.at_infinity
        return q / (q - 1.0)

    def bounds(self):
        # t -> t/(t-1) is decreasing, so the extremes swap
        lo, hi = self.of.bounds()
        return hi / (hi - 1.0), lo / (lo - 1.0)

    @property
    def label(self):
        return f"conj({self.of.label})"

    @property
    def is_constant(self):
        return self.of.is_constant


@dataclass(frozen=True)
class Sobolev(ExponentField):
    """q2 defined pointwise by 1/q2 = 1/q1 - beta/n."""

    q1: ExponentField = None
    beta: ExponentField = None
    n: int = 2

    def __post_init__(self):
        if self.q1 is None or self.beta is None:
            raise ValueError("Sobolev needs q1 and beta")
        inv_inf = 1.0 / self.q1.at_infinity - self.beta.at_infinity / self.n
        if inv_inf <= 0:
            raise InvalidSobolev(f"1/q1 - beta/n = {inv_inf} <= 0 at infinity")
        super().__post_init__()

    def at_radius(self, r):
        inv = 1.0 / self.q1.at_radius(r) - self.beta.at_radius(r) / self.n
        return 1.0 / inv

    @property
    def at_infinity(self):
        return 1.0 / (1.0 / self.q1.at_infinity - self.beta.at_infinity / self.n)

    def bounds(self):
        if self.beta.is_constant:
            b = self.beta.at_infinity
            lo, hi = self.q1.bounds()
            inv_hi = 1.0 / lo - b / self.n
            inv_lo = 1.0 / hi - b / self.n
            if inv_lo <= 0:
                raise InvalidSobolev(f"1/q1 - beta/n = {inv_lo} <= 0 where q1 = {hi}")
            return 1.0 / inv_hi, 1.0 / inv_lo
        return _scan_bounds(self)

    @property
    def label(self):
        return f"sobolev({self.q1.label},{self.beta.label},n={self.n})"

    @property
    def is_constant(self):
        return self.q1.is_constant and self.beta.is_constant


_SCAN_LOG2 = np.linspace(-40.0, 60.0, 4001)


def _scan_bounds(fld: ExponentField) -> tuple[float, float]:
    """Numerical inf/sup for families without closed-form extremes.

    Dense log-radius scan plus the origin and the limit at infinity, then a
    bounded 1-D refinement around the best sample.
    """
    radii = np.concatenate([[0.0], np.exp2(_SCAN_LOG2)])
    vals = np.asarray(fld.at_radius(radii), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"{fld.label}: non-finite values while scanning bounds")
    lim = float(fld.at_infinity)

    def refine(sign):
        i = int(np.argmin(sign * vals))
        best = sign * vals[i]
        if 0 < i < len(radii) - 1:
            lo_u, hi_u = np.log2(radii[i - 1]) if i > 1 else -60.0, np.log2(radii[i + 1])
            res = minimize_scalar(
                lambda u: sign * float(fld.at_radius(2.0 ** u)),
                bounds=(lo_u, hi_u),
                method="bounded",
                options={"xatol": 1e-12},
            )
            best = min(best, float(res.fun))
        return sign * min(best, sign * lim)

    return refine(1.0), refine(-1.0)


def evaluate(fld: ExponentField, x) -> np.ndarray | float:
    """Value of the field at a point (or an array of points) of R^n.

    ``x`` is either a scalar (treated as a point of R^1) or an array whose
    last axis holds coordinates.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        r = np.abs(x)
    else:
        if fld.dimension is not None and x.shape[-1] != fld.dimension:
            raise ValueError(f"expected points of R^{fld.dimension}, got shape {x.shape}")
        r = np.linalg.norm(x, axis=-1)
    val = fld.at_radius(r)
    return float(val) if np.ndim(val) == 0 else val


def conjugate(fld: ExponentField) -> Conjugate:
    if fld.role is not Role.LEBESGUE:
        raise NonConjugable(f"{fld.label} is an order, not a Lebesgue exponent")
    if isinstance(fld, Conjugate):
        return fld.of  # involution
    return Conjugate(of=fld, dimension=fld.dimension)


def conjugate_evaluate(fld: ExponentField, x):
    if fld.role is not Role.LEBESGUE:
        raise NonConjugable(f"{fld.label} is an order, not a Lebesgue exponent")
    q = np.asarray(evaluate(fld, x), dtype=float)
    if np.any(q <= 1.0):
        raise NonConjugable(f"{fld.label}: q(x) <= 1 at some point")
    out = q / (q - 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ExponentStats:
    q_minus: float
    q_plus: float
    q_infinity: float
    c_infinity: float
    c_local: float
    sample_count: int


def default_sample_radii(count: int = 1024, k_min: int = -20, k_max: int = 20, seed: int | None = None):
    """Dyadically spread sample radii in [2^k_min, 2^k_max] plus the origin.

    With ``seed=None`` the log-radii are equispaced; otherwise a scrambled
    Halton sequence with that seed is used.
    """
    if seed is None:
        u = np.linspace(0.0, 1.0, count)
    else:
        u = np.sort(qmc.Halton(d=1, scramble=True, seed=seed).random(count)[:, 0])
    return np.concatenate([[0.0], np.exp2(k_min + (k_max - k_min) * u)])


_LOCAL_STEPS = np.exp2(-np.arange(1, 41, dtype=float))


def _holder_constants(fld: ExponentField, radii: np.ndarray) -> tuple[float, float]:
    q = fld.at_radius(radii)
    qinf = fld.at_infinity
    c_inf = float(np.max(np.abs(q - qinf) * np.log(math.e + radii)))
    # pair each sample with neighbours at distances 2^-m <= 1/2 along the same ray
    shifted = fld.at_radius(radii[:, None] + _LOCAL_STEPS[None, :])
    c_loc = float(np.max(np.abs(shifted - q[:, None]) * (-np.log(_LOCAL_STEPS))[None, :]))
    return c_inf, c_loc


def estimate_stats(fld: ExponentField, sample_radii=None, n: int | None = None) -> ExponentStats:
    """q-, q+, q(inf) and empirical log-Holder constants of a field.

    ``c_infinity`` is the sup of |q(x) - q(inf)| ln(e + |x|) over the samples;
    ``c_local`` is the sup of |q(x) - q(y)| (-ln|x - y|) over sampled pairs at
    distance at most 1/2.  Raises DivergentConstant when either constant more
    than doubles between the half-density and full-density sample sets.
    """
    radii = default_sample_radii() if sample_radii is None else np.asarray(sample_radii, dtype=float)
    if radii.size < 2:
        raise ValueError("estimate_stats needs at least two sample radii")
    if np.any(radii < 0):
        raise ValueError("sample radii must be nonnegative")
    radii = np.sort(radii)
    lo, hi = fld.bounds()
    c_inf, c_loc = _holder_constants(fld, radii)
    c_inf_coarse, c_loc_coarse = _holder_constants(fld, radii[::2])
    for name, fine, coarse in (("c_infinity", c_inf, c_inf_coarse), ("c_local", c_loc, c_loc_coarse)):
        if fine > 2.0 * coarse + 1e-12:
            raise DivergentConstant(f"{fld.label}: {name} grew from {coarse:.6g} to {fine:.6g} under refinement")
    return ExponentStats(
        q_minus=lo,
        q_plus=hi,
        q_infinity=float(fld.at_infinity),
        c_infinity=c_inf,
        c_local=c_loc,
        sample_count=int(radii.size),
    )


@dataclass(frozen=True)
class Check:
    passed: bool
    value: float
    detail: str


@dataclass(frozen=True)
class ConditionReport:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self):
        return {k: {"passed": c.passed, "value": c.value, "detail": c.detail} for k, c in self.checks.items()}


def validate_pair(q1: ExponentField, beta: ExponentField, n: int, sample_radii=None) -> ConditionReport:
    """Audit the conditions a (q1, beta) pair must satisfy.

    Failures are reported, never raised.
    """
    radii = default_sample_radii() if sample_radii is None else np.asarray(sample_radii, dtype=float)
    q_vals = q1.at_radius(radii)
    b_vals = beta.at_radius(radii)
    q_lo, q_hi = q1.bounds()
    b_lo, b_hi = beta.bounds()
    q_inf = q1.at_infinity

    if beta.is_constant:
        sup_prod = q_hi * beta.at_infinity
    else:
        sup_prod = max(float(np.max(q_vals * b_vals)), q_inf * beta.at_infinity)
    sup_inf_prod = q_inf * b_hi
    gap = min(float(np.min(q_vals - q_inf)), q_lo - q_inf)

    checks = {
        "beta_min_positive": Check(b_lo > 0, b_lo, f"inf beta = {b_lo:.6g} must be > 0"),
        "sup_q1_beta_below_n": Check(sup_prod < n, sup_prod, f"sup q1*beta = {sup_prod:.6g} must be < n = {n}"),
        "sup_q1inf_beta_below_n": Check(
            sup_inf_prod < n, sup_inf_prod, f"q1(inf) * sup beta = {sup_inf_prod:.6g} must be < n = {n}"
        ),
        "q1_minimal_at_infinity": Check(
            gap >= -INFINITY_SLACK, gap, f"min q1(x) - q1(inf) = {gap:.3g} must be >= 0"
        ),
        "q1_in_class_P": Check(
            1.0 < q_lo and math.isfinite(q_hi), q_lo, f"1 < q1- = {q_lo:.6g} and q1+ = {q_hi:.6g} < inf"
        ),
    }
    return ConditionReport(checks)


def sobolev_exponent(q1: ExponentField, beta: ExponentField, n: int, sample_radii=None) -> Sobolev:
    radii = default_sample_radii() if sample_radii is None else np.asarray(sample_radii, dtype=float)
    inv = 1.0 / q1.at_radius(radii) - beta.at_radius(radii) / n
    if np.any(inv <= 0):
        r_bad = float(radii[np.argmin(inv)])
        raise InvalidSobolev(f"1/q1 - beta/n <= 0 at |x| = {r_bad:.6g}")
    return Sobolev(q1=q1, beta=beta, n=n, dimension=q1.dimension)


def gamma_weight(beta: ExponentField, c_infinity: float, n: int, x):
    """Weight exponent C_inf * beta(x) * (1 - beta(x)/n); never above n C_inf / 4."""
    if c_infinity < 0:
        raise ValueError("c_infinity must be nonnegative")
    b = np.asarray(evaluate(beta, x), dtype=float)
    g = c_infinity * b * (1.0 - b / n)
    return float(g) if g.ndim == 0 else g


def gamma_at_radius(beta: ExponentField, c_infinity: float, n: int, r):
    b = beta.at_radius(r)
    return c_infinity * b * (1.0 - b / n)
