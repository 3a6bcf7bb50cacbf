"""Run every verification on the shipped configs and print a summary table.

Reports land in each config's output directory (default under out/).
"""

import argparse
import time
from pathlib import Path

from herzmorrey.config import load_config
from herzmorrey.harness import run

ROOT = Path(__file__).resolve().parents[1]
RUNS = [
    ("thm1", "canonical.cfg"),
    ("thm2", "thm2.cfg"),
    ("prop2", "prop2.cfg"),
    ("prop2", "prop2_constant.cfg"),
    ("lemma1", "lemmas.cfg"),
    ("lemma2", "lemmas.cfg"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, help="override nodes_per_annulus")
    ap.add_argument("--out", default=str(ROOT / "out"), help="parent directory for reports")
    args = ap.parse_args()
    print(f"{'statement':<8} {'config':<20} {'rows':>5} {'sup ratio':>12} {'audit':>6} {'seconds':>8}")
    for statement, name in RUNS:
        cfg = load_config(ROOT / "configs" / name)
        out = Path(args.out) / f"{statement}_{Path(name).stem}"
        cfg = cfg.with_overrides(nodes=args.nodes, out=str(out))
        t = time.perf_counter()
        rep = run(statement, cfg)
        dt = time.perf_counter() - t
        rep.write(cfg.output.dir, cfg.output.report, cfg.output.csv)
        sup = "n/a" if rep.sup_ratio is None else f"{rep.sup_ratio:.6g}"
        print(f"{statement:<8} {name:<20} {len(rep.rows):>5} {sup:>12} "
              f"{'pass' if rep.audit_passed else 'FAIL':>6} {dt:>8.2f}")


if __name__ == "__main__":
    main()
