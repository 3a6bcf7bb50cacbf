"""End-to-end verification runs: per-function ratio rows, hypothesis audits
and deterministic JSON/CSV reports.

Each run evaluates numerator / denominator for every declared test function:

    thm1   ||w H f||_{MK(p2, q2)}   / ||f||_{MK(p1, q1)}
    thm2   ||w H* f||_{MK(p2, q2)}  / ||f||_{MK(p1, q1)}
    prop2  ||w I f||_{L^q2}         / ||f||_{L^q1}
    lemma1 int |f g|                / (C_q ||f||_q ||g||_q')   over pairs
    lemma2 ||chi_B||_q ||chi_B||_q' / |B|                      over balls

with w = (1 + |x|)^(-gamma(x)), gamma = C_inf beta (1 - beta/n) where C_inf
is the decay constant of q1, and q2 the Sobolev exponent of (q1, beta).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .errors import HerzError
from .exponents import conjugate, default_sample_radii, estimate_stats, sobolev_exponent, validate_pair
from .geometry import build_grid
from .norms import (
    SpaceParams,
    Status,
    ball_norms,
    delta_estimate,
    herz_morrey_norm,
    holder_pairing_check,
    luxemburg_norm,
)
from .operators import apply_weight, hardy, hardy_star, riesz_radial

__all__ = [
    "Row",
    "TheoremReport",
    "ExperimentContext",
    "audit",
    "verify_theorem1",
    "verify_theorem2",
    "verify_proposition2",
    "verify_lemma1",
    "verify_lemma2",
    "run",
    "sweep",
    "THEOREMS",
]

ZERO_MARKER = "zero-function"
CSV_HEADER = ("function_id", "numerator", "denominator", "ratio", "warnings")
# balls used for the delta regressions, clipped to the grid
DELTA_KS = (-20, 20)


@dataclass(frozen=True)
class Row:
    function_id: str
    numerator: float | None
    denominator: float | None
    ratio: float | None
    warnings: tuple = ()
    status: str = "ok"

    def to_dict(self):
        return {
            "function_id": self.function_id,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "ratio": self.ratio,
            "warnings": list(self.warnings),
            "status": self.status,
        }


@dataclass
class TheoremReport:
    theorem: str
    rows: list
    audit: dict
    metadata: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def ratios(self) -> list[float]:
        return [r.ratio for r in self.rows if r.ratio is not None]

    @property
    def sup_ratio(self) -> float | None:
        return max(self.ratios) if self.ratios else None

    @property
    def audit_passed(self) -> bool:
        return all(c["passed"] for c in self.audit.values())

    @property
    def warnings(self) -> list[str]:
        return sorted({f"{r.function_id}: {w}" for r in self.rows for w in r.warnings})

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "sup_ratio": self.sup_ratio,
            "audit_passed": self.audit_passed,
            "audit": self.audit,
            "rows": [r.to_dict() for r in self.rows],
            "warnings": self.warnings,
            "diagnostics": self.diagnostics,
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.function_id, _fmt(r.numerator), _fmt(r.denominator), _fmt(r.ratio), ";".join(r.warnings)])
        return buf.getvalue()

    def write(self, out_dir, report_name: str = "report.json", csv_name: str = "rows.csv") -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        rp, cp = out / report_name, out / csv_name
        rp.write_text(self.to_json(), encoding="utf-8")
        cp.write_text(self.to_csv(), encoding="utf-8")
        return rp, cp


def _fmt(x):
    return "" if x is None else repr(float(x))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


class ExperimentContext:
    """Grid, exponents and derived constants shared by every row of a run."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        g = config.grid
        self.n = g.dimension
        self.grid = build_grid(g.dimension, g.k_min, g.k_max, g.nodes_per_annulus)
        self.q1 = config.q1_field()
        self.beta = config.beta_field()
        self.sample_radii = default_sample_radii(seed=g.seed)

    @cached_property
    def pair_report(self):
        return validate_pair(self.q1, self.beta, self.n, self.sample_radii)

    @cached_property
    def stats(self):
        return estimate_stats(self.q1, self.sample_radii, self.n)

    @cached_property
    def q2(self):
        return sobolev_exponent(self.q1, self.beta, self.n, self.sample_radii)

    @property
    def c_infinity(self) -> float:
        return self.stats.c_infinity

    def delta_ks(self):
        lo = max(DELTA_KS[0], self.grid.k_min + 4)
        hi = min(DELTA_KS[1], self.grid.k_max)
        return np.arange(lo, hi + 1)

    @cached_property
    def delta1(self):
        return delta_estimate(self.q1, self.grid, "conjugate", self.delta_ks())

    @cached_property
    def delta2(self):
        return delta_estimate(self.q2, self.grid, "q", self.delta_ks())


def _check(passed, value, detail, **extra):
    d = {"passed": bool(passed), "value": value, "detail": detail}
    d.update(extra)
    return d


def audit(ctx: ExperimentContext, theorem: str) -> dict:
    """Every hypothesis of the invoked statement, each listed once."""
    pr = ctx.pair_report.checks
    out = {}
    if theorem in ("thm1", "thm2", "prop2"):
        parts = [pr["beta_min_positive"], pr["sup_q1_beta_below_n"], pr["sup_q1inf_beta_below_n"]]
        out["order_bounds"] = _check(
            all(c.passed for c in parts), parts[0].value, "; ".join(c.detail for c in parts),
            sup_q1_beta=parts[1].value, sup_q1inf_beta=parts[2].value,
        )
        mi, cp = pr["q1_minimal_at_infinity"], pr["q1_in_class_P"]
        q_inf = ctx.q1.at_infinity
        out["minimal_at_infinity"] = _check(
            mi.passed and cp.passed and q_inf > 1.0, mi.value,
            f"1 < q1(inf) = {q_inf:.6g} <= q1(x) <= q1+ < inf; {mi.detail}",
        )
    if theorem in ("thm1", "thm2", "prop2", "lemma2"):
        try:
            st = ctx.stats
            out["log_holder"] = _check(
                math.isfinite(st.c_infinity) and math.isfinite(st.c_local), st.c_infinity,
                f"C_inf = {st.c_infinity:.6g}, local constant = {st.c_local:.6g} over {st.sample_count} samples",
                c_local=st.c_local,
            )
        except HerzError as exc:
            out["log_holder"] = _check(False, None, str(exc))
    if theorem in ("lemma1", "lemma2"):
        lo, hi = ctx.q1.bounds()
        out["q_in_class_P"] = _check(lo > 1.0 and math.isfinite(hi), lo, f"1 < q- = {lo:.6g}, q+ = {hi:.6g} < inf")
    if theorem in ("thm1", "thm2"):
        sp = ctx.config.space
        out["p1_le_p2"] = _check(0 < sp.p1 <= sp.p2, sp.p2 - sp.p1, f"0 < p1 = {sp.p1:g} <= p2 = {sp.p2:g}")
        out["lambda_nonnegative"] = _check(sp.lam >= 0, sp.lam, f"lambda = {sp.lam:g} >= 0")
        n = ctx.n
        try:
            if theorem == "thm1":
                d = ctx.delta1
                margin = sp.lam + n * d.delta - sp.alpha
                out["alpha_below_lambda_plus_n_delta1"] = _check(
                    margin > 0, margin,
                    f"alpha = {sp.alpha:g} < lambda + n delta1 = {sp.lam + n * d.delta:.6g} holds for the estimated delta1",
                    **_delta_fields(d, ctx.c_infinity),
                )
            else:
                d = ctx.delta2
                margin = sp.alpha - (sp.lam - n * d.delta)
                out["alpha_above_lambda_minus_n_delta2"] = _check(
                    margin > 0, margin,
                    f"alpha = {sp.alpha:g} > lambda - n delta2 = {sp.lam - n * d.delta:.6g} holds for the estimated delta2",
                    **_delta_fields(d, ctx.c_infinity),
                )
        except HerzError as exc:
            key = "alpha_below_lambda_plus_n_delta1" if theorem == "thm1" else "alpha_above_lambda_minus_n_delta2"
            out[key] = _check(False, None, f"delta estimate unavailable: {exc}")
    return out


def _delta_fields(d, c_inf):
    return {"delta": d.delta, "delta_slope": d.slope, "delta_residual": d.residual,
            "delta_upper_bound": d.upper_bound, "c_infinity_used": c_inf}


def _diagnostics(rows, growth_flag):
    ratios = [r.ratio for r in rows if r.ratio is not None and r.ratio > 0]
    if len(ratios) < 2:
        return {"ratio_spread": None, "ratio_growth_flag": False}
    spread = max(ratios) / min(ratios)
    first, last = ratios[0], ratios[-1]
    return {
        "ratio_spread": spread,
        "ratio_end_to_start": last / first,
        "ratio_growth_flag": bool(spread > growth_flag),
    }


def _row(fid, num, den, warnings=()) -> Row:
    if den.status is Status.ZERO:
        return Row(fid, None, None, None, (ZERO_MARKER,), ZERO_MARKER)
    w = list(warnings)
    for tag, res in (("numerator", num), ("denominator", den)):
        if res.warning():
            w.append(f"{tag} {res.warning()}")
    return Row(fid, num.value, den.value, num.value / den.value, tuple(w))


def _error_row(fid, exc) -> Row:
    return Row(fid, None, None, None, (f"{type(exc).__name__}: {exc}",), "error")


def _metadata(ctx: ExperimentContext, theorem: str, extra=None) -> dict:
    md = {
        "theorem": theorem,
        "package_version": __version__,
        "config": ctx.config.to_dict(),
        "q1": ctx.q1.label,
        "beta": ctx.beta.label,
        "grid": {
            "n": ctx.n, "k_min": ctx.grid.k_min, "k_max": ctx.grid.k_max,
            "nodes_per_annulus": ctx.grid.nodes_per_annulus,
            "inner_radius": ctx.grid.inner_radius, "outer_radius": ctx.grid.outer_radius,
        },
    }
    try:
        md["c_infinity"] = ctx.c_infinity
    except HerzError:
        md["c_infinity"] = None
    if extra:
        md.update(extra)
    return md


def _map_rows(fn, items) -> list[Row]:
    """Evaluate independent rows concurrently; results keep the declared order."""
    items = list(items)
    workers = min(len(items), os.cpu_count() or 1, 8)
    if workers <= 1:
        return [fn(*it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda it: fn(*it), items))


def _warm(ctx: ExperimentContext):
    """Compute shared cached constants once, before rows run in parallel."""
    for name in ("stats", "q2"):
        try:
            getattr(ctx, name)
        except HerzError:
            pass


def _hardy_rows(ctx: ExperimentContext, op) -> list[Row]:
    sp, n = ctx.config.space, ctx.n
    rtol = ctx.config.tolerances.bisection_rtol
    _warm(ctx)

    def one(fid, f):
        try:
            den = herz_morrey_norm(f, SpaceParams(sp.alpha, sp.lam, sp.p1, ctx.q1), ctx.grid, rtol)
            if den.status is Status.ZERO:
                return _row(fid, None, den)
            out = apply_weight(op(f, ctx.beta, ctx.grid), ctx.beta, ctx.c_infinity, n)
            num = herz_morrey_norm(out, SpaceParams(sp.alpha, sp.lam, sp.p2, ctx.q2), ctx.grid, rtol)
            return _row(fid, num, den, out.warnings)
        except (HerzError, ValueError, ArithmeticError) as exc:
            return _error_row(fid, exc)

    return _map_rows(one, ctx.config.functions())


def _finish(ctx, theorem, rows, extra=None) -> TheoremReport:
    return TheoremReport(theorem, rows, audit(ctx, theorem), _metadata(ctx, theorem, extra),
                         _diagnostics(rows, ctx.config.tolerances.growth_flag))


def verify_theorem1(config: ExperimentConfig) -> TheoremReport:
    """Weighted Hardy operator from MK(p1, q1) into MK(p2, q2)."""
    ctx = ExperimentContext(config)
    return _finish(ctx, "thm1", _hardy_rows(ctx, hardy))


def verify_theorem2(config: ExperimentConfig) -> TheoremReport:
    """Weighted adjoint Hardy operator from MK(p1, q1) into MK(p2, q2)."""
    ctx = ExperimentContext(config)
    return _finish(ctx, "thm2", _hardy_rows(ctx, hardy_star))


def verify_proposition2(config: ExperimentConfig) -> TheoremReport:
    """Weighted Sobolev-type bound for the Riesz potential, L^q1 into L^q2."""
    ctx = ExperimentContext(config)
    tol = config.tolerances
    _warm(ctx)

    def one(fid, f):
        try:
            den = luxemburg_norm(f, ctx.q1, ctx.grid, tol.bisection_rtol)
            if den.status is Status.ZERO:
                return _row(fid, None, den)
            out = riesz_radial(f, ctx.beta, ctx.grid, config.grid.angular_nodes, tol.shell_budget)
            out = apply_weight(out, ctx.beta, ctx.c_infinity, ctx.n)
            num = luxemburg_norm(out, ctx.q2, ctx.grid, tol.bisection_rtol)
            warn = list(out.warnings)
            share = out.params.get("max_shell_share", 0.0)
            if share > 0.01:
                warn.append(f"singularity: shell share {share:.3g}")
            return _row(fid, num, den, warn)
        except (HerzError, ValueError, ArithmeticError) as exc:
            return _error_row(fid, exc)

    return _finish(ctx, "prop2", _map_rows(one, config.functions()))


def verify_lemma1(config: ExperimentConfig) -> TheoremReport:
    """Generalized Holder inequality over all ordered pairs of the family."""
    ctx = ExperimentContext(config)
    fns = config.functions()
    rows = []
    for fid, f in fns:
        for gid, g in fns:
            pid = f"{fid}|{gid}"
            try:
                hc = holder_pairing_check(f, g, ctx.q1, ctx.grid)
                if hc.rhs == 0:
                    rows.append(Row(pid, None, None, None, (ZERO_MARKER,), ZERO_MARKER))
                    continue
                w = () if hc.holds else ("inequality violated",)
                rows.append(Row(pid, hc.lhs, hc.rhs, hc.lhs / hc.rhs, w))
            except (HerzError, ValueError, ArithmeticError) as exc:
                rows.append(_error_row(pid, exc))
    c = None
    try:
        c = 1.0 + 1.0 / ctx.q1.bounds()[0] - 1.0 / ctx.q1.bounds()[1]
    except ZeroDivisionError:
        pass
    return _finish(ctx, "lemma1", rows, {"holder_constant": c})


def verify_lemma2(config: ExperimentConfig) -> TheoremReport:
    """Ball products ||chi_B||_q ||chi_B||_q' / |B| on every grid ball."""
    ctx = ExperimentContext(config)
    rows = []
    extra = {}
    try:
        ks = ctx.grid.ks
        meas, nq = ball_norms(ctx.q1, ctx.grid, ks)
        _, nqc = ball_norms(conjugate(ctx.q1), ctx.grid, ks)
        for k, m, a, b in zip(ks, meas, nq, nqc):
            rows.append(Row(f"ball:{int(k)}", float(a * b), float(m), float(a * b / m)))
        prods = np.array([r.ratio for r in rows])
        extra["product_constant"] = float(max(prods.max(), 1.0 / prods.min()))
        d1 = delta_estimate(ctx.q1, ctx.grid, "q", ctx.delta_ks())
        d2 = delta_estimate(ctx.q1, ctx.grid, "conjugate", ctx.delta_ks())
        extra["delta_q"] = _delta_fields(d1, None)
        extra["delta_conjugate"] = _delta_fields(d2, None)
    except (HerzError, ValueError, ArithmeticError) as exc:
        rows.append(_error_row("balls", exc))
    return _finish(ctx, "lemma2", rows, extra)


THEOREMS = {
    "thm1": verify_theorem1,
    "thm2": verify_theorem2,
    "prop2": verify_proposition2,
    "lemma1": verify_lemma1,
    "lemma2": verify_lemma2,
}


def run(theorem: str, config: ExperimentConfig) -> TheoremReport:
    try:
        fn = THEOREMS[theorem]
    except KeyError:
        raise ValueError(f"unknown statement {theorem!r}; choose from {sorted(THEOREMS)}") from None
    return fn(config)


def sweep(config: ExperimentConfig, theorem: str, alphas, lambdas) -> list[dict]:
    """Sup ratio and audit verdict over a grid of (alpha, lambda)."""
    out = []
    for a in alphas:
        for lam in lambdas:
            rep = run(theorem, config.with_overrides(alpha=float(a), lam=float(lam)))
            out.append({
                "alpha": float(a),
                "lambda": float(lam),
                "sup_ratio": rep.sup_ratio,
                "audit_passed": rep.audit_passed,
                "failed": sorted(k for k, c in rep.audit.items() if not c["passed"]),
                "ratio_growth_flag": rep.diagnostics.get("ratio_growth_flag", False),
            })
    return out
