import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.twodiv.errors import ExactDivisionFailure, NonUnitLeadingCoefficient, PrecisionExceeded
from src.twodiv.qseries import (
    QSeries,
    add,
    coeff,
    dissect_parity,
    divexact,
    invert,
    mul,
    pow_,
    render,
    scale,
    series_two_adic_valuation,
    truncate,
    two_adic_valuation,
    u_op,
    v_op,
)


@st.composite
def series(draw, unit=False):
    valuation = draw(st.integers(-3, 3))
    tail = draw(st.lists(st.integers(-20, 20), min_size=0, max_size=7))
    lead = draw(st.sampled_from([1, -1])) if unit else draw(st.integers(-20, 20).filter(bool))
    return QSeries([lead] + tail, valuation, valuation + 1 + len(tail))


def _agree(x: QSeries, y: QSeries) -> bool:
    p = min(x.precision, y.precision)
    return truncate(x, p) == truncate(y, p)


# ── ring laws ──

@given(series(), series())
def test_mul_commutes(a, b):
    assert mul(a, b) == mul(b, a)


@given(series(), series(), series())
def test_mul_associates(a, b, c):
    assert _agree(mul(mul(a, b), c), mul(a, mul(b, c)))


@given(series(), series(), series())
def test_mul_distributes_over_add(a, b, c):
    assert _agree(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))


@given(series(), series())
def test_add_commutes(a, b):
    assert add(a, b) == add(b, a)


@given(series(unit=True))
def test_invert_is_inverse(a):
    product = mul(a, invert(a))
    assert product == QSeries.one(a.precision - a.valuation)


@given(series(unit=True), st.integers(-3, 3))
def test_negative_power_is_power_of_inverse(a, n):
    assert _agree(mul(pow_(a, n), pow_(a, -n)), QSeries.one(a.precision - a.valuation))


@given(series(), st.sampled_from([2, 3, 5]))
def test_u_undoes_v(a, p):
    assert u_op(v_op(a, p), p) == a


@given(series())
def test_parity_parts_recombine(a):
    assert add(dissect_parity(a, 0), dissect_parity(a, 1)) == a


# ── precision bookkeeping ──

def test_mul_precision_rule():
    a = QSeries([1, 2, 3], -1, 5)
    b = QSeries([1, 1], 2, 4)
    assert mul(a, b).valuation == 1
    assert mul(a, b).precision == min(5 + 2, 4 - 1)


def test_invert_precision_rule():
    a = QSeries([1, 1], 2, 6)
    assert invert(a).valuation == -2
    assert invert(a).precision == 6 - 2 * 2


def test_zero_series_has_valuation_at_precision():
    z = QSeries([0, 0, 0], 0, 3)
    assert z.is_zero
    assert z.valuation == 3
    assert QSeries.zero(5).valuation == 5


def test_pow_zero_is_one():
    a = QSeries([1, 5, 7], 1, 6)
    assert pow_(a, 0) == QSeries.one(5)


def test_coeff_past_precision_raises():
    a = QSeries([1, 2], 0, 2)
    assert coeff(a, 1) == 2
    assert coeff(a, -4) == 0
    with pytest.raises(PrecisionExceeded) as err:
        coeff(a, 2)
    assert err.value.exponent == 2 and err.value.precision == 2


def test_invert_needs_unit():
    with pytest.raises(NonUnitLeadingCoefficient):
        invert(QSeries([2, 1], 0, 4))
    with pytest.raises(NonUnitLeadingCoefficient):
        pow_(QSeries([3], 0, 4), -1)


def test_divexact():
    assert divexact(QSeries([240, 480], 1, 3), 240) == QSeries([1, 2], 1, 3)
    with pytest.raises(ExactDivisionFailure):
        divexact(QSeries([240, 481], 1, 3), 240)


def test_fraction_scalars_stay_exact():
    a = scale(QSeries([2, 4], 0, 2), Fraction(1, 4))
    assert a.coeffs == (Fraction(1, 2), Fraction(1))


def test_v_and_u_on_a_known_series():
    a = QSeries([1, 2, 3], 0, 3)
    assert v_op(a, 2) == QSeries([1, 0, 2, 0, 3, 0], 0, 6)
    assert u_op(QSeries([1, 2, 3, 4, 5], 0, 5), 2) == QSeries([1, 3, 5], 0, 3)


def test_dunder_operators_match_functions():
    a = QSeries([1, 1], 0, 4)
    assert a * a == mul(a, a)
    assert a + 1 == QSeries([2, 1], 0, 4)
    assert 1 - a == QSeries([0, -1], 0, 4)
    assert a**2 == QSeries([1, 2, 1], 0, 4)


# ── 2-adic ──

@pytest.mark.parametrize("x, v", [(1, 0), (-24, 3), (48, 4), (16773120, 12), (-(2**147), 147)])
def test_two_adic_valuation(x, v):
    assert two_adic_valuation(x) == v


def test_two_adic_valuation_of_zero_is_infinite():
    assert two_adic_valuation(0) == math.inf
    assert series_two_adic_valuation(QSeries.zero(4)) == math.inf
    assert series_two_adic_valuation(QSeries([8, 12, 0, 32], 0, 4)) == 2


def test_render():
    assert render(QSeries([1, 2, 0, -1], 0, 5)) == "q^0*(1 + 2*q - q^3) + O(q^5)"
    assert render(QSeries.zero(3)) == "O(q^3)"


def test_from_terms_and_terms():
    a = QSeries.from_terms({-1: 3, 2: -5, 7: 1}, 4)
    assert a == QSeries([3, 0, 0, -5], -1, 4)
    assert list(a.terms()) == [(-1, 3), (2, -5)]
    assert QSeries.from_terms({}, 3) == QSeries.zero(3)
