import json
import math

import numpy as np
import pytest

from herzmorrey import harness
from herzmorrey.config import ExperimentConfig, GridConfig, SpaceConfig
from herzmorrey.exponents import Constant, Role
from herzmorrey.geometry import build_grid
from herzmorrey.harness import CSV_HEADER, ZERO_MARKER, run, sweep
from herzmorrey.norms import SpaceParams, herz_morrey_norm

import oracles

SMALL = GridConfig(dimension=2, k_min=-20, k_max=20, nodes_per_annulus=16, seed=7)

THM1_KEYS = {"order_bounds", "minimal_at_infinity", "log_holder", "p1_le_p2", "lambda_nonnegative",
             "alpha_below_lambda_plus_n_delta1"}
THM2_KEYS = THM1_KEYS - {"alpha_below_lambda_plus_n_delta1"} | {"alpha_above_lambda_minus_n_delta2"}


def cfg(**kw):
    base = dict(grid=SMALL, space=SpaceConfig(0.0, 0.1, 1.0, 1.0), family=("char-annulus:-3..3",))
    base.update(kw)
    return ExperimentConfig(**base)


@pytest.fixture(scope="module")
def thm1_report():
    return run("thm1", cfg(family=("char-annulus:-3..3", "zero")))


def test_thm1_rows_and_audit(thm1_report):
    rep = thm1_report
    assert set(rep.audit) == THM1_KEYS
    assert rep.audit_passed
    d = rep.audit["alpha_below_lambda_plus_n_delta1"]
    assert d["delta"] == pytest.approx(1 / 6) and d["c_infinity_used"] == pytest.approx(0.3, rel=1e-6)
    assert [r.function_id for r in rep.rows] == [f"char-annulus:{j}" for j in range(-3, 4)] + ["zero"]
    assert rep.rows[-1].status == ZERO_MARKER and rep.rows[-1].ratio is None
    assert rep.sup_ratio == max(r.ratio for r in rep.rows[:-1])
    assert all(math.isfinite(r) and r > 0 for r in rep.ratios)


def test_report_serialisation(thm1_report, tmp_path):
    rep = thm1_report
    doc = json.loads(rep.to_json())
    assert doc["sup_ratio"] == rep.sup_ratio and doc["audit_passed"] is True
    assert "runtime" not in json.dumps(doc["metadata"])
    lines = rep.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == len(rep.rows) + 1
    rp, cp = rep.write(tmp_path, "r.json", "r.csv")
    assert rp.read_text() == rep.to_json() and cp.read_text() == rep.to_csv()


def test_thm2_audit_keys():
    rep = run("thm2", cfg(space=SpaceConfig(0.0, 0.0, 1.0, 1.0)))
    assert set(rep.audit) == THM2_KEYS and rep.audit_passed
    assert rep.audit["alpha_above_lambda_minus_n_delta2"]["value"] > 0


def test_violations_are_reported_not_fatal():
    rep = run("thm1", cfg(space=SpaceConfig(3.0, -0.1, 2.0, 1.0)))
    failed = {k for k, c in rep.audit.items() if not c["passed"]}
    assert failed == {"p1_le_p2", "lambda_nonnegative", "alpha_below_lambda_plus_n_delta1"}
    # lambda < 0 cannot form a Herz-Morrey norm, so rows carry errors instead of aborting
    assert all(r.status == "error" for r in rep.rows)
    assert rep.sup_ratio is None


def test_violation_probe_flags_growth_as_diagnostic():
    rep = run("thm2", cfg(space=SpaceConfig(-3.0, 0.0, 1.0, 1.0), family=("char-annulus:-6..6",)))
    assert not rep.audit["alpha_above_lambda_minus_n_delta2"]["passed"]
    assert rep.diagnostics["ratio_growth_flag"] is True
    assert all(r.status == "ok" for r in rep.rows)


def test_thm1_constant_degeneration_matches_direct_closed_form():
    # constant q1 and beta: C_inf = 0, no weight; H(chi_{A_j})(r) = r^(beta - n) |A_j cap B_r|
    q0, b, n = 2.0, 0.5, 2
    c = cfg(q1="const:2", beta="const:0.5", space=SpaceConfig(0.0, 0.0, 1.0, 1.0))
    rep = run("thm1", c)
    grid = build_grid(n, SMALL.k_min, SMALL.k_max, SMALL.nodes_per_annulus)
    q2 = Constant(1 / (1 / q0 - b / n))
    r = grid.radii
    for row, j in zip(rep.rows, range(-3, 4)):
        lo, hi = 2.0 ** (j - 1), 2.0**j
        inter = math.pi * (np.clip(r, lo, hi) ** 2 - lo**2)
        num = herz_morrey_norm(r ** (b - n) * inter, SpaceParams(0.0, 0.0, 1.0, q2), grid).value
        den = oracles.annulus_measure(n, j) ** (1 / q0)
        assert row.ratio == pytest.approx(num / den, rel=1e-8)


def test_prop2_constant_degeneration():
    c = cfg(q1="const:1.5", beta="const:0.5", family=("char-ball:0",),
            grid=GridConfig(2, -14, 14, 16, seed=7))
    rep = run("prop2", c)
    assert set(rep.audit) == {"order_bounds", "minimal_at_infinity", "log_holder"}
    assert rep.metadata["c_infinity"] == 0.0
    row = rep.rows[0]
    # the grid ball excludes |x| <= 2^-15
    assert row.denominator == pytest.approx((math.pi * (1 - 2.0**-30)) ** (1 / 1.5), rel=1e-9)
    assert row.ratio > 0


def test_lemma1_and_lemma2_reports():
    rep = run("lemma1", cfg(family=("char-annulus:-1..1", "gauss:1:0.5")))
    assert len(rep.rows) == 16 and all(r.ratio <= 1 + 1e-12 for r in rep.rows)
    assert rep.metadata["holder_constant"] == pytest.approx(1 + 1 / 1.2 - 1 / 1.5)
    assert set(rep.audit) == {"q_in_class_P"}
    rep = run("lemma2", cfg(grid=GridConfig(2, -10, 10, 16, seed=7)))
    assert set(rep.audit) == {"q_in_class_P", "log_holder"}
    assert len(rep.rows) == 21 and 1 <= rep.metadata["product_constant"] < 3
    assert 2 / 3 <= rep.metadata["delta_q"]["delta_slope"] <= 5 / 6


def test_run_rejects_unknown():
    with pytest.raises(ValueError, match="unknown statement"):
        run("thm9", cfg())


def test_sweep_rows():
    rows = sweep(cfg(family=("char-annulus:0",)), "thm1", [0.0, 5.0], [0.1])
    assert [(r["alpha"], r["audit_passed"]) for r in rows] == [(0.0, True), (5.0, False)]
    assert rows[1]["failed"] == ["alpha_below_lambda_plus_n_delta1"]


def test_concurrent_rows_keep_declared_order(monkeypatch):
    c = cfg(family=("char-annulus:-3..3",))
    serial = run("thm1", c)
    monkeypatch.setattr(harness.os, "cpu_count", lambda: 4)
    parallel = run("thm1", c)
    assert parallel.to_json() == serial.to_json()


def test_determinism_same_seed():
    a = run("thm1", cfg()).to_json()
    b = run("thm1", cfg()).to_json()
    assert a == b
