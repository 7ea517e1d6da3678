import pytest

from src.twodiv.errors import IndexBelowRange, UnsupportedWeight
from src.twodiv.level1 import (
    a_coefficient,
    canonical_basis,
    constant_form_split,
    delta,
    delta_k,
    eisenstein,
    j_invariant,
    sigma,
    tau_k,
    weight_decomposition,
    weight_profile,
)
from src.twodiv.models import SIX_WEIGHTS
from src.twodiv.qseries import QSeries, coeff, mul, sub, truncate


def _coeffs(series, upto):
    return [coeff(series, e) for e in range(series.valuation, upto)]


def test_sigma():
    assert sigma(3, 2) == 9
    assert sigma(5, 3) == 244


def test_eisenstein_series():
    assert _coeffs(eisenstein(4, 5), 5) == [1, 240, 2160, 6720, 17520]
    assert _coeffs(eisenstein(6, 4), 4) == [1, -504, -16632, -122976]


def test_delta_is_ramanujan_tau():
    d = delta(9)
    assert d.valuation == 1
    assert _coeffs(d, 9) == [1, -24, 252, -1472, 4830, -6048, -16744, 84480]


def test_j_invariant():
    j = j_invariant(3)
    assert j.valuation == -1
    assert _coeffs(j, 3) == [1, 744, 196884, 21493760]


def test_delta_matches_e4_e6():
    e4, e6 = eisenstein(4, 12), eisenstein(6, 12)
    lhs = sub(mul(mul(e4, e4), e4), mul(e6, e6))
    assert lhs == QSeries([1728 * c for c in delta(12).coeffs], 1, 12)


@pytest.mark.parametrize("k, ell, kprime", [(12, 1, 0), (16, 1, 4), (26, 1, 14), (-10, -2, 14), (2, -1, 14), (-24, -2, 0)])
def test_weight_decomposition(k, ell, kprime):
    dec = weight_decomposition(k)
    assert (dec.ell, dec.kprime) == (ell, kprime)


def test_odd_weight_is_unsupported():
    with pytest.raises(UnsupportedWeight):
        weight_decomposition(13)


@pytest.mark.parametrize("k", SIX_WEIGHTS)
def test_weight_profile_eta_plus_xi(k):
    p = weight_profile(k)
    assert p.eta + p.xi == p.nu


def test_weight_profile_values():
    p = weight_profile(12)
    assert (p.gamma, p.rho, p.chi, p.nu, p.eta, p.omega) == (3, 7, 7, 15, 12, 4)
    assert weight_profile(26).xi == 5
    assert weight_profile(12).mu == 13
    with pytest.raises(UnsupportedWeight):
        weight_profile(14)


# ── canonical basis ──

def test_f_12_0_is_the_leech_theta_series():
    f = canonical_basis(12, 0, 5)
    assert _coeffs(f, 5) == [1, 0, 196560, 16773120, 398034000]


@pytest.mark.parametrize("k", [12, 16, 18, 20, 22, 26, -10, -14, -24, 2, 0])
def test_canonical_shape(k):
    ell = weight_decomposition(k).ell
    for m in range(-ell, -ell + 4):
        f = canonical_basis(k, m, 12)
        assert f.valuation == -m
        assert f.leading_coefficient == 1
        for e in range(-m + 1, ell + 1):
            assert coeff(f, e) == 0


def test_index_below_range():
    with pytest.raises(IndexBelowRange):
        canonical_basis(12, -2, 10)
    assert a_coefficient(12, -2, 5) == 0


def test_a_coefficient_principal_and_gap():
    assert a_coefficient(12, -1, 1) == 1
    assert a_coefficient(12, 3, -3) == 1
    assert a_coefficient(12, 3, 1) == 0
    assert a_coefficient(12, -1, 2) == -24


def test_a_coefficient_matches_series():
    f = canonical_basis(16, 3, 30)
    assert [a_coefficient(16, 3, n) for n in range(2, 30)] == [coeff(f, n) for n in range(2, 30)]


def test_precision_growth_does_not_change_values():
    small = canonical_basis(-10, 2, 10)
    large = canonical_basis(-10, 2, 200)
    assert truncate(large, 10) == small


# ── Delta_k and tau_k ──

def test_delta_k():
    assert delta_k(12, 10) == delta(10)
    assert coeff(delta_k(16, 5), 2) == -24 + 240


@pytest.mark.parametrize("n, tau", [(1, 1), (2, -24), (3, 252), (4, -1472), (5, 4830)])
def test_tau_12(n, tau):
    assert tau_k(12, n) == tau


@pytest.mark.parametrize("k", SIX_WEIGHTS)
def test_delta_k_is_the_basis_element_at_minus_one(k):
    assert delta_k(k, 30) == canonical_basis(k, -1, 30)


def test_delta_k_outside_six_weights():
    with pytest.raises(UnsupportedWeight):
        delta_k(14, 10)


# ── constant form ──

@pytest.mark.parametrize("k", SIX_WEIGHTS)
def test_constant_form_split(k):
    split = constant_form_split(k)
    assert 4 * split.r + 6 * split.s == k
    assert split.identity_holds
    assert split.congruence_exponent >= weight_profile(k).omega


def test_constant_form_split_k12():
    split = constant_form_split(12)
    assert (split.r, split.s, split.c) == (3, 0, 720)
    assert split.congruence_exponent == 4
