import math
from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import qmc

from herzmorrey.errors import DivergentConstant, InvalidSobolev, NonConjugable
from herzmorrey.exponents import (
    Conjugate,
    Constant,
    ExponentField,
    LogDecay,
    LogDecayShifted,
    Role,
    Sobolev,
    conjugate,
    conjugate_evaluate,
    default_sample_radii,
    estimate_stats,
    evaluate,
    gamma_weight,
    sobolev_exponent,
    validate_pair,
)

ORDER = Role.ORDER
FIELDS = [
    Constant(2.0),
    Constant(1.5),
    LogDecay(1.2, 0.3),
    LogDecay(2.0, 0.8),
    LogDecay(3.0, -0.5),
    LogDecayShifted(1.2, 0.3, 0.2, 1.0),
    LogDecayShifted(1.5, 0.1, 0.4, 8.0),
]


def test_evaluate_constant_and_logdecay():
    assert evaluate(Constant(2), 17.0) == 2.0
    assert evaluate(Constant(2), np.array([[1.0, 2.0], [0.0, 0.0]])).tolist() == [2.0, 2.0]
    q = LogDecay(1.2, 0.3)
    assert evaluate(q, 0.0) == pytest.approx(1.5, abs=1e-15)
    assert evaluate(q, 1e300) == pytest.approx(1.2, abs=1e-3)
    assert q.at_infinity == 1.2


def test_evaluate_uses_euclidean_norm():
    q = LogDecay(1.2, 0.3, dimension=2)
    assert evaluate(q, np.array([3.0, 4.0])) == pytest.approx(1.2 + 0.3 / math.log(math.e + 5.0))
    with pytest.raises(ValueError):
        evaluate(q, np.array([1.0, 2.0, 3.0]))


def test_shifted_bump_profile():
    q = LogDecayShifted(1.2, 0.3, 0.2, 1.0)
    assert evaluate(q, 0.0) == pytest.approx(1.7)
    assert evaluate(q, 1.0) == pytest.approx(1.2 + 0.3 / math.log(math.e + 1.0))
    assert evaluate(q, 0.5) == pytest.approx(1.2 + 0.3 / math.log(math.e + 0.5) + 0.2 * 0.5)


def test_lebesgue_exponent_must_stay_above_one():
    with pytest.raises(ValueError):
        Constant(0.5)
    with pytest.raises(ValueError):
        LogDecay(0.9, 0.05)
    with pytest.raises(ValueError):
        Constant(-0.1, role=ORDER)


@pytest.mark.parametrize("q, expected", [(2.0, 2.0), (1.5, 3.0), (4.0, 4.0 / 3.0)])
def test_conjugate_evaluate_closed_forms(q, expected):
    assert conjugate_evaluate(Constant(q), 1.0) == pytest.approx(expected, rel=1e-15)


def test_conjugate_rejects_q_at_most_one():
    with pytest.raises(NonConjugable):
        conjugate_evaluate(Constant(1.0), 0.3)
    with pytest.raises(NonConjugable):
        conjugate(Constant(1.0))
    with pytest.raises(NonConjugable):
        conjugate(Constant(0.5, role=ORDER))


@pytest.mark.parametrize("q", [f for f in FIELDS])
def test_conjugate_bounds_swap(q):
    lo, hi = q.bounds()
    c_lo, c_hi = conjugate(q).bounds()
    assert c_lo == pytest.approx(hi / (hi - 1.0), rel=1e-12)
    assert c_hi == pytest.approx(lo / (lo - 1.0), rel=1e-12)


def test_conjugate_of_four_matches_minimum_identity():
    q = LogDecay(4.0, 1.0)  # q- = 4 at infinity
    assert conjugate(q).bounds()[1] == pytest.approx(4.0 / 3.0)


@given(st.floats(0.0, 1e6))
def test_conjugate_involution(r):
    q = LogDecayShifted(1.2, 0.3, 0.2, 1.0)
    back = conjugate(conjugate(q))
    assert back is q
    qq = Conjugate(of=Conjugate(of=q))
    assert float(qq.at_radius(r)) == pytest.approx(float(q.at_radius(r)), abs=1e-12)


@pytest.mark.parametrize("q", FIELDS)
def test_bounds_contain_quasi_random_samples(q):
    u = qmc.Halton(d=1, seed=3).random(10_000)[:, 0]
    r = np.exp2(-40 + 80 * u)
    vals = q.at_radius(r)
    lo, hi = q.bounds()
    assert np.all(vals >= lo - 1e-12) and np.all(vals <= hi + 1e-12)


def test_shifted_bounds_scan_finds_closed_form_extremes():
    q = LogDecayShifted(1.2, 0.3, 0.2, 1.0)
    lo, hi = q.bounds()
    assert hi == pytest.approx(1.7, abs=1e-12)
    assert lo == pytest.approx(1.2, abs=1e-12)


def test_stats_logdecay_recover_parameters():
    for base, a in [(1.2, 0.3), (2.0, 0.8), (1.7, 0.05)]:
        st_ = estimate_stats(LogDecay(base, a))
        assert st_.c_infinity == pytest.approx(a, rel=1e-6)
        assert st_.q_infinity == pytest.approx(base, rel=1e-6)
        assert st_.sample_count >= 1000
    st_ = estimate_stats(LogDecay(1.2, 0.3))
    assert st_.q_plus == pytest.approx(1.5)
    assert st_.q_minus == pytest.approx(1.2)
    assert st_.q_minus <= st_.q_infinity <= st_.q_plus


def test_stats_constant_has_zero_constants():
    st_ = estimate_stats(Constant(2.5))
    assert st_.c_infinity == 0.0 and st_.c_local == 0.0


def test_stats_local_constant_is_small_and_positive_for_logdecay():
    st_ = estimate_stats(LogDecay(1.2, 0.3))
    # |q'(r)| <= a at r = 0 and h ln(1/h) <= 1/e, so c_local <= a/e
    assert 0 < st_.c_local <= 0.3 / math.e + 1e-12


@dataclass(frozen=True)
class _Spike(ExponentField):
    """1.5 plus a narrow spike at |x| = 1, visible only to dense sampling."""

    def at_radius(self, r):
        r = np.asarray(r, dtype=float)
        return 1.5 + 0.4 * np.exp(-(((r - 1.0) / 1e-4) ** 2))

    @property
    def at_infinity(self):
        return 1.5


def test_stats_divergent_constant_raises():
    # after sorting, the spike sample sits at an odd index and radii[::2] misses it
    radii = np.array([0.25, 1.0, 4.0, 8.0])
    with pytest.raises(DivergentConstant):
        estimate_stats(_Spike(), radii)


def test_stats_input_validation():
    with pytest.raises(ValueError):
        estimate_stats(Constant(2.0), [1.0])
    with pytest.raises(ValueError):
        estimate_stats(Constant(2.0), [-1.0, 1.0])


def test_default_sample_radii_seed_is_reproducible():
    a = default_sample_radii(64, seed=7)
    b = default_sample_radii(64, seed=7)
    c = default_sample_radii(64, seed=8)
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    assert a[0] == 0.0 and a.size == 65


def test_conjugate_stats_definition_identities():
    q = LogDecay(1.2, 0.3)
    st_q = estimate_stats(q)
    st_c = estimate_stats(conjugate(q))
    assert st_c.q_minus == pytest.approx(st_q.q_plus / (st_q.q_plus - 1.0), rel=1e-14)
    assert st_c.q_plus == pytest.approx(st_q.q_minus / (st_q.q_minus - 1.0), rel=1e-14)


def test_validate_pair_canonical_passes():
    rep = validate_pair(LogDecay(1.2, 0.3), Constant(0.5, role=ORDER), 2)
    assert rep.passed
    assert rep.checks["sup_q1_beta_below_n"].value == pytest.approx(0.75)
    assert set(rep.to_dict()) == {
        "beta_min_positive", "sup_q1_beta_below_n", "sup_q1inf_beta_below_n",
        "q1_minimal_at_infinity", "q1_in_class_P",
    }


def test_validate_pair_failures_are_reported():
    rep = validate_pair(Constant(2.0), Constant(1.5, role=ORDER), 2)
    assert not rep.passed
    assert not rep.checks["sup_q1_beta_below_n"].passed
    assert rep.checks["sup_q1_beta_below_n"].value == pytest.approx(3.0)
    rep = validate_pair(LogDecay(1.2, 0.3), Constant(0.0, role=ORDER), 2)
    assert not rep.checks["beta_min_positive"].passed
    # increasing exponent: minimum at the origin, not at infinity
    rep = validate_pair(LogDecay(2.0, -0.5), Constant(0.5, role=ORDER), 2)
    assert not rep.checks["q1_minimal_at_infinity"].passed
    rep = validate_pair(Constant(1.0), Constant(0.5, role=ORDER), 2)
    assert not rep.checks["q1_in_class_P"].passed


def test_sobolev_exponent_values():
    q2 = sobolev_exponent(Constant(2.0), Constant(0.5, role=ORDER), 2)
    assert float(q2.at_radius(3.0)) == pytest.approx(4.0)
    q2 = sobolev_exponent(LogDecay(1.2, 0.3), Constant(0.5, role=ORDER), 2)
    assert float(q2.at_radius(0.0)) == pytest.approx(1.0 / (1.0 / 1.5 - 0.25))
    assert q2.bounds() == pytest.approx((1.0 / (1.0 / 1.2 - 0.25), 1.0 / (1.0 / 1.5 - 0.25)))
    r = default_sample_radii()
    assert np.all(q2.at_radius(r) > LogDecay(1.2, 0.3).at_radius(r))


def test_sobolev_identity_limit_at_zero_order():
    q1 = LogDecay(1.2, 0.3)
    q2 = sobolev_exponent(q1, Constant(0.0, role=ORDER), 2)
    r = np.exp2(np.linspace(-10, 10, 50))
    assert np.allclose(q2.at_radius(r), q1.at_radius(r), rtol=1e-14)


def test_sobolev_invalid():
    with pytest.raises(InvalidSobolev):
        sobolev_exponent(Constant(3.0), Constant(1.0, role=ORDER), 2)
    with pytest.raises(InvalidSobolev):
        Sobolev(q1=Constant(4.0), beta=Constant(0.6, role=ORDER), n=2)


def test_gamma_weight_examples():
    n = 3
    assert gamma_weight(Constant(n / 2, role=ORDER), 2.0, n, 1.0) == pytest.approx(n / 2)
    assert np.all(np.asarray(gamma_weight(LogDecay(0.4, 0.3, role=ORDER), 0.0, 2, np.ones(4))) == 0.0)
    assert gamma_weight(Constant(0.5, role=ORDER), 0.3, 2, 5.0) == pytest.approx(0.1125)
    with pytest.raises(ValueError):
        gamma_weight(Constant(0.5, role=ORDER), -1.0, 2, 1.0)


@given(
    st.floats(0.01, 1.99), st.floats(0.0, 0.9), st.floats(0.0, 5.0), st.sampled_from([2, 3, 4]),
    st.floats(0.0, 1e8),
)
def test_gamma_weight_never_exceeds_quarter_bound(base, amp, c_inf, n, r):
    beta = LogDecay(base, amp, role=ORDER)
    assert gamma_weight(beta, c_inf, n, r) <= n * c_inf / 4 + 1e-12
