import pytest
from hypothesis import given, settings, strategies as st

from src.twodiv.dissection import (
    COS4,
    ISIN4,
    Exponents,
    KolbergExpr,
    dissect,
    dissect_numeric,
    divide_by_q,
    expand_cos,
    expand_isin,
    halve,
    lift_phi2,
    normalize_phi1,
    reduce_mod_pow2,
    to_qseries,
)
from src.twodiv.errors import NotHalvable, OddExponentOfQ, OddQExponent
from src.twodiv.expression import parse_expression
from src.twodiv.level1 import delta, eisenstein, j_invariant
from src.twodiv.models import Parity
from src.twodiv.qseries import QSeries, dissect_parity, truncate, u_op, v_op

Q16 = KolbergExpr.generator("Q", 16)


def test_q16_odd_part():
    expected = KolbergExpr.monomial(16, eq=1, eR=20) + KolbergExpr.monomial(512, eq=3, eR=28, eS=8)
    assert dissect(Q16, "odd") == expected


def test_q16_odd_part_mod_2_9():
    assert reduce_mod_pow2(dissect(Q16, Parity.ODD), 9) == KolbergExpr.monomial(16, eq=1, eR=20)


def test_q16_even_part():
    expected = (
        KolbergExpr.monomial(1, eR=8)
        + KolbergExpr.monomial(2**7, eq=2, eR=16, eS=8)
        + KolbergExpr.monomial(2**11, eq=4, eR=24, eS=16)
    )
    assert dissect(Q16, "even") == expected


@pytest.mark.parametrize("parity", [0, 1])
def test_q16_against_numeric_split(parity):
    numeric = dissect_numeric(to_qseries(Q16, 60), parity)
    assert to_qseries(dissect(Q16, parity), 60) == numeric


def test_angle_constants():
    assert COS4 == KolbergExpr.constant(1) + KolbergExpr.monomial(32, eq=2, eR=8, eS=8)
    assert ISIN4 == KolbergExpr.monomial(8, eq=1, eR=12)


@pytest.mark.parametrize("k", range(1, 17))
def test_cos_squared_plus_sin_squared(k):
    # i sin absorbed: cos^2 - (i sin)^2 = 1, as series only
    c, s = expand_cos(k), expand_isin(k)
    assert to_qseries(c * c - s * s, 30) == QSeries.one(30)


def test_expand_needs_positive_multiple():
    with pytest.raises(ValueError):
        expand_cos(0)
    with pytest.raises(ValueError):
        expand_isin(-1)


# ── Kolberg forms of level-1 forms ──

@pytest.mark.parametrize(
    "text, build",
    [
        ("phi2^8*(Q^-16 + 256*q*Q^8)", lambda p: eisenstein(4, p)),
        (
            "phi2^12*Q^-24 - 480*q*phi2^12 - 16896*q^2*Q^8*phi2^4*phi4^8 + 8192*q^3*phi2^-12*phi4^24",
            lambda p: eisenstein(6, p),
        ),
        ("q*phi1^24", delta),
        ("q^-1*Q^-24 + 768 + 196608*q*Q^24 + 16777216*q^2*Q^48", j_invariant),
    ],
)
def test_kolberg_identities(text, build):
    assert to_qseries(parse_expression(text), 40) == build(40)


# ── rewriting ──

def test_normalize_phi1():
    assert normalize_phi1(KolbergExpr.generator("phi1", 24)) == KolbergExpr.monomial(1, e2=24, eQ=-24)


def test_lift_phi2_is_value_preserving():
    expr = KolbergExpr.monomial(3, eq=1, e2=-5, eR=2)
    assert to_qseries(lift_phi2(expr), 30) == to_qseries(expr, 30)


def test_reduce_mod_pow2():
    expr = KolbergExpr.monomial(-1, eq=1) + KolbergExpr.monomial(1024, eR=2)
    assert reduce_mod_pow2(expr, 10) == KolbergExpr.monomial(1023, eq=1)
    with pytest.raises(ValueError):
        reduce_mod_pow2(expr, 0)


# ── errors ──

def test_odd_q_exponent():
    with pytest.raises(OddQExponent):
        dissect(KolbergExpr.generator("Q", 3), "even")


def test_halve_rejects_odd_q_power():
    with pytest.raises(OddExponentOfQ):
        halve(KolbergExpr.monomial(1, eq=1, eR=2))


def test_halve_rejects_q_and_phi1():
    with pytest.raises(NotHalvable):
        halve(KolbergExpr.generator("Q", 2))
    with pytest.raises(NotHalvable):
        halve(KolbergExpr.generator("phi1", 2))


def test_halve_substitutes_q_squared():
    expr = KolbergExpr.monomial(5, eq=2, eR=3, eS=1, eT=2, e4=1, e8=-1)
    halved = halve(expr)
    assert halved == KolbergExpr.monomial(5, eq=1, eQ=3, eR=1, eS=2, e2=1, e4=-1)
    assert to_qseries(expr, 40) == v_op(to_qseries(halved, 20), 2)


def test_divide_by_q():
    assert divide_by_q(KolbergExpr.monomial(2, eq=3, eR=1)) == KolbergExpr.monomial(2, eq=2, eR=1)


# ── oracle equivalence ──

EXPONENT = st.integers(-30, 30)
EVEN_EXPONENT = st.integers(-15, 15).map(lambda x: 2 * x)


@st.composite
def kolberg_exprs(draw, max_terms=6, halvable=False):
    # e1 even so that eQ stays even once phi(q) is rewritten
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = Exponents(
            eq=draw(EVEN_EXPONENT if halvable else EXPONENT),
            e1=0 if halvable else draw(EVEN_EXPONENT),
            e2=draw(EXPONENT),
            e4=draw(EXPONENT),
            e8=draw(EXPONENT),
            eQ=0 if halvable else draw(EVEN_EXPONENT),
            eR=draw(EXPONENT),
            eS=draw(EXPONENT),
            eT=draw(EXPONENT),
        )
        terms[e] = draw(st.integers(-50, 50).filter(bool))
    return KolbergExpr(terms)


@given(kolberg_exprs(), st.sampled_from([0, 1]))
def test_symbolic_matches_numeric(expr, parity):
    assert to_qseries(dissect(expr, parity), 60) == dissect_numeric(to_qseries(expr, 60), parity)


@given(kolberg_exprs())
def test_parts_recombine(expr):
    whole = to_qseries(expr, 30)
    assert to_qseries(dissect(expr, 0) + dissect(expr, 1), 30) == whole


@given(kolberg_exprs())
def test_even_part_has_only_even_q_exponents(expr):
    part = to_qseries(dissect(expr, "even"), 30)
    assert dissect_parity(part, 1).is_zero


@given(kolberg_exprs())
def test_odd_part_has_only_odd_q_exponents(expr):
    part = to_qseries(dissect(expr, "odd"), 30)
    assert dissect_parity(part, 0).is_zero


@given(kolberg_exprs(halvable=True), st.sampled_from([20, 45]))
def test_halve_reindexes_q_squared(expr, precision):
    expected = truncate(u_op(to_qseries(expr, 2 * precision), 2), precision)
    assert to_qseries(halve(expr), precision) == expected


@pytest.mark.slow
@settings(max_examples=200, deadline=None)
@given(kolberg_exprs(), st.sampled_from([0, 1]))
def test_symbolic_matches_numeric_at_precision_200(expr, parity):
    assert to_qseries(dissect(expr, parity), 200) == dissect_numeric(to_qseries(expr, 200), parity)
