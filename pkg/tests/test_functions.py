import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from herzmorrey.functions import (
    ZERO,
    CharAnnulus,
    CharBall,
    Combination,
    GaussBump,
    Power,
    Restricted,
    evaluate_fn,
    restrict_to_annulus,
)

radii = st.floats(0.0, 1e6, allow_nan=False)


def test_char_annulus_includes_outer_excludes_inner():
    f = CharAnnulus(0)
    assert evaluate_fn(f, 0.5) == 0.0
    assert evaluate_fn(f, 1.0) == 1.0
    assert evaluate_fn(f, 0.75) == 1.0
    assert f.support() == (0.5, 1.0)
    assert f.label == "char-annulus:0"


def test_char_ball_closed():
    f = CharBall(2)
    assert evaluate_fn(f, 4.0) == 1.0 and evaluate_fn(f, 4.000001) == 0.0 and evaluate_fn(f, 0.0) == 1.0


def test_power_and_bump():
    f = Power(-0.5, -2, 2)
    assert evaluate_fn(f, 1.0) == 1.0
    assert evaluate_fn(f, 0.25) == pytest.approx(2.0)
    assert evaluate_fn(f, 0.125) == 0.0
    assert np.isfinite(evaluate_fn(Power(-3.0, 0, 1), 0.0))
    with pytest.raises(ValueError):
        Power(1.0, 2, 1)
    g = GaussBump(1.0, 0.25)
    assert evaluate_fn(g, 1.0) == 1.0
    assert evaluate_fn(g, 1.25) == pytest.approx(math.exp(-1))
    with pytest.raises(ValueError):
        GaussBump(1.0, 0.0)


def test_evaluate_rejects_negative_radius():
    with pytest.raises(ValueError):
        evaluate_fn(CharBall(0), -1.0)


def test_combination_and_zero():
    h = 2.0 * CharAnnulus(0) + CharAnnulus(1)
    assert evaluate_fn(h, 0.75) == 2.0 and evaluate_fn(h, 1.5) == 1.0
    assert h.support() == (0.5, 2.0)
    assert ZERO.is_zero() and ZERO.label == "zero"
    assert np.all(ZERO(np.linspace(0, 5, 11)) == 0)
    assert (0.0 * CharBall(1)).is_zero()


@given(st.integers(-10, 10), st.integers(-10, 10), radii)
def test_restrict_char_ball(k, j, r):
    f = CharBall(k)
    assert evaluate_fn(restrict_to_annulus(f, j), r) == evaluate_fn(f, r) * evaluate_fn(CharAnnulus(j), r)


FAMILY = [
    CharAnnulus(1), CharBall(2), Power(0.7, -3, 3), Power(-1.5, -1, 4), GaussBump(3.0, 1.0),
    CharAnnulus(0) + 0.5 * GaussBump(0.5, 0.1),
]


@pytest.mark.parametrize("f", FAMILY, ids=lambda f: f.label)
@given(j=st.integers(-6, 6), r=radii)
def test_restriction_is_product_with_indicator(f, j, r):
    lhs = evaluate_fn(restrict_to_annulus(f, j), r)
    rhs = evaluate_fn(f, r) * evaluate_fn(CharAnnulus(j), r)
    assert lhs == pytest.approx(rhs, rel=1e-15, abs=1e-300)


@pytest.mark.parametrize("f", FAMILY, ids=lambda f: f.label)
@given(r=radii)
def test_dyadic_pieces_sum_to_function(f, r):
    total = sum(evaluate_fn(restrict_to_annulus(f, j), r) for j in range(-30, 30))
    expected = evaluate_fn(f, r) if 2.0**-31 < r <= 2.0**29 else total
    assert total == pytest.approx(expected, rel=1e-14, abs=1e-300)


def test_restriction_simplifies_known_families():
    assert restrict_to_annulus(CharAnnulus(3), 3) == CharAnnulus(3)
    assert restrict_to_annulus(CharAnnulus(3), 2).is_zero()
    assert restrict_to_annulus(CharBall(3), 1) == CharAnnulus(1)
    assert restrict_to_annulus(Power(1.0, 0, 2), 1) == Power(1.0, 1, 1)
    assert isinstance(restrict_to_annulus(GaussBump(1.0, 0.1), 0), Restricted)
    assert restrict_to_annulus(GaussBump(1.0, 0.01), 10).is_zero()
    assert isinstance(restrict_to_annulus(CharBall(0) + CharAnnulus(2), 2), Combination)
