"""Sup ratio of the Hardy-operator bounds over a grid of (alpha, lambda).

Points where the audited alpha condition fails are marked; growth there is
a diagnostic, since the bounds are sufficient conditions only.
"""

import argparse
import json
from pathlib import Path

import numpy as np

from herzmorrey.config import load_config
from herzmorrey.harness import sweep

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("statement", choices=["thm1", "thm2"])
    ap.add_argument("--config", default=str(ROOT / "configs" / "canonical.cfg"))
    ap.add_argument("--alpha", default="-2:2:9", help="lo:hi:count; write --alpha=-1:1:5 for negative lo")
    ap.add_argument("--lambda", dest="lam", default="0:0.6:4", help="lo:hi:count")
    ap.add_argument("--nodes", type=int, default=16)
    ap.add_argument("--json", help="write the rows here as JSON")
    args = ap.parse_args()

    def span(text):
        lo, hi, count = text.split(":")
        return np.linspace(float(lo), float(hi), int(count))

    cfg = load_config(args.config).with_overrides(nodes=args.nodes)
    rows = sweep(cfg, args.statement, span(args.alpha), span(args.lam))
    print(f"{'alpha':>7} {'lambda':>7} {'sup ratio':>12}  hypotheses")
    for r in rows:
        sup = "n/a" if r["sup_ratio"] is None else f"{r['sup_ratio']:.5g}"
        tag = "ok" if r["audit_passed"] else "violated: " + ",".join(r["failed"])
        if r["ratio_growth_flag"]:
            tag += " (ratio growth)"
        print(f"{r['alpha']:>7.3f} {r['lambda']:>7.3f} {sup:>12}  {tag}")
    if args.json:
        Path(args.json).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
