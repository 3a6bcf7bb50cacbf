"""Command-line interface.

Exit codes: 0 success, 1 fatal error (bad config, numerical failure),
2 hypothesis-audit failure under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .config import ExperimentConfig, load_config, parse_exponent, parse_function
from .errors import ConfigError, HerzError
from .exponents import Role, estimate_stats, validate_pair
from .geometry import build_grid
from .harness import THEOREMS, run, sweep
from .norms import SpaceParams, herz_morrey_norm, luxemburg_norm
from .operators import fractional_maximal, hardy, hardy_star, riesz_radial

EXIT_OK, EXIT_ERROR, EXIT_AUDIT = 0, 1, 2

OPERATORS = {
    "hardy": lambda f, b, g, a: hardy(f, b, g),
    "hardy-star": lambda f, b, g, a: hardy_star(f, b, g),
    "riesz": lambda f, b, g, a: riesz_radial(f, b, g, a.angular_nodes),
    "maximal": lambda f, b, g, a: fractional_maximal(
        f, b, g, np.exp2(np.arange(g.k_min - 1, g.k_max + 1, 0.25))
    ),
}


def _add_common(p, config_required=False):
    p.add_argument("--config", required=config_required, help="experiment config (INI)")
    p.add_argument("--strict", action="store_true", help="exit 2 when any audited hypothesis fails")
    p.add_argument("--nodes", type=int, help="override grid.nodes_per_annulus")
    p.add_argument("--out", help="override output.dir")
    p.add_argument("--seed", type=int, help="override grid.seed")


def _add_grid(p):
    p.add_argument("--n", type=int, default=2, help="dimension")
    p.add_argument("--k-min", type=int, default=-40)
    p.add_argument("--k-max", type=int, default=40)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="herzmorrey", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-exponent", help="exponent statistics and condition audit")
    p.add_argument("--q", required=True, help="exponent descriptor, e.g. logdecay:1.2:0.3")
    p.add_argument("--beta", help="order descriptor; adds the (q, beta) pair audit")
    _add_common(p)
    p.add_argument("--n", type=int, default=2)

    p = sub.add_parser("norm", help="one Luxemburg or Herz-Morrey norm")
    p.add_argument("--f", required=True, help="function descriptor, e.g. char-annulus:0")
    p.add_argument("--q", required=True, help="exponent descriptor")
    p.add_argument("--herz", action="store_true", help="Herz-Morrey norm instead of Luxemburg")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=32)
    _add_grid(p)

    p = sub.add_parser("apply-op", help="tabulate an operator on the grid as CSV")
    p.add_argument("--op", required=True, choices=sorted(OPERATORS))
    p.add_argument("--f", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--angular-nodes", type=int, default=16)
    p.add_argument("--out", help="CSV path (default: stdout)")
    _add_grid(p)

    p = sub.add_parser("verify", help="end-to-end verification report")
    p.add_argument("statement", choices=sorted(THEOREMS))
    _add_common(p, config_required=True)

    p = sub.add_parser("sweep", help="sup ratio over a grid of (alpha, lambda)")
    p.add_argument("statement", choices=["thm1", "thm2"])
    p.add_argument("--alpha", required=True, help="comma-separated values")
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated values")
    _add_common(p, config_required=True)
    return ap


def _floats(text, what):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"--{what}: expected comma-separated numbers, got {text!r}") from None


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else ExperimentConfig()
    return cfg.with_overrides(nodes=args.nodes, seed=args.seed, out=args.out)


def _cmd_check_exponent(args, out) -> int:
    cfg = _load(args) if args.config else None
    n = cfg.grid.dimension if cfg else args.n
    seed = (cfg.grid.seed if cfg else None) if args.seed is None else args.seed
    from .exponents import default_sample_radii

    radii = default_sample_radii(seed=seed)
    q = parse_exponent(args.q, Role.LEBESGUE, n)
    st = estimate_stats(q, radii, n)
    print(f"q_minus={st.q_minus:.6g}", file=out)
    print(f"q_plus={st.q_plus:.6g}", file=out)
    print(f"q_infinity={st.q_infinity:.6g}", file=out)
    print(f"c_infinity={st.c_infinity:.6g}", file=out)
    print(f"c_local={st.c_local:.6g}", file=out)
    passed = True
    if args.beta:
        rep = validate_pair(q, parse_exponent(args.beta, Role.ORDER, n), n, radii)
        for name, c in rep.checks.items():
            print(f"{name}: {'pass' if c.passed else 'FAIL'} ({c.detail})", file=out)
        passed = rep.passed
    return EXIT_AUDIT if (args.strict and not passed) else EXIT_OK


def _cmd_norm(args, out) -> int:
    grid = build_grid(args.n, args.k_min, args.k_max, args.nodes)
    f = parse_function(args.f)
    q = parse_exponent(args.q, Role.LEBESGUE, args.n)
    if args.herz:
        res = herz_morrey_norm(f, SpaceParams(args.alpha, args.lam, args.p, q), grid)
    else:
        res = luxemburg_norm(f, q, grid)
    print(f"{res.value:.6g}", file=out)
    if res.warning():
        print(f"warning: {res.warning()}", file=sys.stderr)
    return EXIT_OK


def _cmd_apply_op(args, out) -> int:
    grid = build_grid(args.n, args.k_min, args.k_max, args.nodes)
    f = parse_function(args.f)
    beta = parse_exponent(args.beta, Role.ORDER, args.n)
    res = OPERATORS[args.op](f, beta, grid, args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["radius", "value"])
    for r, v in res.as_rows():
        w.writerow([repr(r), repr(v)])
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
        print(f"wrote {args.out}", file=out)
    else:
        out.write(buf.getvalue())
    for wmsg in res.warnings:
        print(f"warning: {wmsg}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    cfg = _load(args)
    rep = run(args.statement, cfg)
    rp, cp = rep.write(cfg.output.dir, cfg.output.report, cfg.output.csv)
    sup = rep.sup_ratio
    print(f"{args.statement}: sup_ratio={'n/a' if sup is None else f'{sup:.6g}'} "
          f"audit={'pass' if rep.audit_passed else 'FAIL'} rows={len(rep.rows)}", file=out)
    for name, c in rep.audit.items():
        print(f"  {name}: {'pass' if c['passed'] else 'FAIL'} ({c['detail']})", file=out)
    for wmsg in rep.warnings:
        print(f"  warning: {wmsg}", file=out)
    print(f"report: {rp}\ncsv: {cp}", file=out)
    return EXIT_AUDIT if (args.strict and not rep.audit_passed) else EXIT_OK


def _cmd_sweep(args, out) -> int:
    cfg = _load(args)
    rows = sweep(cfg, args.statement, _floats(args.alpha, "alpha"), _floats(args.lam, "lambda"))
    d = Path(cfg.output.dir)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"sweep_{args.statement}.json"
    path.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print("alpha,lambda,sup_ratio,audit_passed,failed", file=out)
    for r in rows:
        sup = "" if r["sup_ratio"] is None else f"{r['sup_ratio']:.6g}"
        print(f"{r['alpha']:g},{r['lambda']:g},{sup},{r['audit_passed']},{';'.join(r['failed'])}", file=out)
    print(f"report: {path}", file=out)
    failed = any(not r["audit_passed"] for r in rows)
    return EXIT_AUDIT if (args.strict and failed) else EXIT_OK


COMMANDS = {
    "check-exponent": _cmd_check_exponent,
    "norm": _cmd_norm,
    "apply-op": _cmd_apply_op,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def run_cli(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return COMMANDS[args.command](args, out)
    except (HerzError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())
