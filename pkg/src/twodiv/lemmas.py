"""
Registry of the named claims behind the main congruence.

Each entry instantiates one claim over bounded odd m, n and returns
CongruenceRecords; exact identities carry claimed=None and pass only when
the checked difference is zero.  Several entries add a second record family
("<name>:<part>") for the structural fact the claim rests on.

    name                      checked quantity                         exponent
    alpha-congruence          alpha_{2-k} - 1                          xi
    hecke-relation            T_2 coefficient relation                 exact
    hecke-squared-relation    T_2^2 coefficient relation               exact
    tau-divisibility          tau_k(2^b n)                             gamma b
    index-four                a_k(2m, 4)                               rho + gamma
    constant-odd              a_k(0, n)                                eta
    constant-even             a_k(0, 2^b n), b > 0                     omega
    index-two-odd             a_k(2, n)                                nu
    even-index-odd            a_k(2^a m, n), a > 0                     nu
    q2-high-index             a_k(2^a m, 2), a > 1                     chi
    lower-triangle            a_k(2^a m, 2^b n), a > b >= 0            chi
    q2-odd-index              a_k(m, 2)                                gamma
    diagonal-plus-one         a_k(2^a m, 2^(a+1) n)                    gamma
    diagonal-plus-two         a_k(2^a m, 2^(a+2) n)                    2 gamma
    upper-weak                a_k(2^a m, 2^b n), a < b                 gamma (b - a)
    index-two-upper           a_k(2m, 2^b n), b >= 2                   rho + gamma (b - 1)
    diagonal-plus-one-upper   a_k(2^a m, 2^(a+1) n), a >= 1            rho + gamma
    diagonal-step             a_k(2^(b+1) m, 2^(b+1) n) - a_k(2^b m, 2^b n)   chi + gamma
    diagonal-plus-two-upper   a_k(2^a m, 2^(a+2) n), a >= 1            rho + 2 gamma
    upper-triangle            a_k(2^a m, 2^b n), b > a >= 1            rho + gamma (b - a)

diagonal-plus-one-upper is checked with second index 2^(a+1) n as stated, not
the 2^(a-1) n that appears in one write-up of its argument.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Union

from . import __version__
from .errors import UnknownLemma
from .level1 import (
    a_coefficient,
    canonical_basis,
    constant_form_split,
    eisenstein,
    reserve,
    tau_k,
    weight_profile,
)
from .level2 import alpha, auxiliary_form_g, decompose_in_basis, level2_basis, level2_dim, u4_expansion
from .models import CongruenceRecord, LemmaBounds, VerificationReport
from .operators import hecke_relation_defect, hecke_squared_relation_defect, tau_recursion_defect
from .pipeline import run_index_four_pipeline
from .qseries import QSeries, add, coeff, mul, pow_, scale, series_two_adic_valuation, sub, two_adic_valuation

logger = logging.getLogger(__name__)

Checker = Callable[[LemmaBounds], Iterator[CongruenceRecord]]

IDENTITY_PRECISION = 40
BASIS_PRECISION = 40

# weight 2-k times E4^power against weight 14-k (or -4 for k = 22)
E4_SHIFT_CONSTANTS = {12: 744, 16: 504, 18: 1248, 20: 264, 22: 1248, 26: 768}


class LemmaEntry(NamedTuple):
    name: str
    statement: str
    check: Checker


REGISTRY: Dict[str, LemmaEntry] = {}


def register(name: str, statement: str) -> Callable[[Checker], Checker]:
    def decorator(check: Checker) -> Checker:
        REGISTRY[name] = LemmaEntry(name, statement, check)
        return check
    return decorator


def list_lemmas() -> List[LemmaEntry]:
    return list(REGISTRY.values())


def verify_lemma(name: str, bounds: Optional[LemmaBounds] = None) -> VerificationReport:
    try:
        entry = REGISTRY[name]
    except KeyError:
        raise UnknownLemma(f"unknown claim {name!r}; known: {', '.join(REGISTRY)}") from None
    bounds = bounds or LemmaBounds()
    logger.info("verifying %s for weights %s", name, bounds.weights)
    records = sorted(entry.check(bounds), key=lambda r: r.sort_key)
    for r in records:
        if r.passed is False:
            logger.warning("%s k=%d a=%d b=%d m=%d n=%d: observed %s, claimed %s",
                           r.case, r.k, r.a, r.b, r.m, r.n, r.observed, r.claimed)
    return VerificationReport(
        version=__version__,
        params={"lemma": name, "bounds": bounds.model_dump()},
        records=records,
    )


# ─────────────────────── record helpers ───────────────────────

def _divisibility(k: int, case: str, claimed: int, value: Union[int, float], *, a: int = 0, b: int = 0,
                  m: int = 0, n: int = 0, valuation: bool = False) -> CongruenceRecord:
    """value is an integer to take v2 of, or already a valuation when valuation=True."""
    observed = value if valuation else two_adic_valuation(value)
    return CongruenceRecord(k=k, case=case, a=a, b=b, m=m, n=n, claimed=claimed, observed=observed)


def _identity(k: int, case: str, holds: bool, *, a: int = 0, b: int = 0, m: int = 0, n: int = 0) -> CongruenceRecord:
    return CongruenceRecord(k=k, case=case, a=a, b=b, m=m, n=n, claimed=None, observed=None if holds else 0)


def _coefficient_cells(bounds: LemmaBounds, case: str, claim, indices, a_range, b_range) -> Iterator[CongruenceRecord]:
    """
    One record per (k, a, b, m, n) with m, n odd.

    claim(profile, a, b) gives the exponent, indices(a, b, m, n) the pair
    handed to a_k.
    """
    odd = bounds.odd_values
    for k in bounds.weights:
        p = weight_profile(k)
        cells = [(a, b) for a in a_range(bounds) for b in b_range(bounds, a)]
        if not cells:
            continue
        reserve(k, max(indices(a, b, odd[-1], odd[-1])[0] for a, b in cells),
                max(indices(a, b, odd[-1], odd[-1])[1] for a, b in cells))
        for a, b in cells:
            for m in odd:
                for n in odd:
                    first, second = indices(a, b, m, n)
                    yield _divisibility(k, case, claim(p, a, b), a_coefficient(k, first, second), a=a, b=b, m=m, n=n)


def _only(value: int):
    return lambda bounds, *_: range(value, value + 1)


# ─────────────────────── level-2 and Hecke facts ───────────────────────

@register("alpha-congruence", "alpha_{2-k} = 1 (mod 2^xi) to the working precision")
def _alpha_congruence(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    for k in bounds.weights:
        difference = sub(alpha(2 - k, bounds.precision), QSeries.one(bounds.precision))
        yield _divisibility(k, "alpha-congruence", weight_profile(k).xi,
                            series_two_adic_valuation(difference), valuation=True)


@register("hecke-relation", "a(m/2,n) + a(m,2) tau(n) + 2^(k-1) a(2m,n) = a(m,2n) + 2^(k-1) a(m,n/2)")
def _hecke_relation(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    top = bounds.hecke_max
    for k in bounds.weights:
        reserve(k, 2 * top, 2 * top)
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                yield _identity(k, "hecke-relation", hecke_relation_defect(k, m, n) == 0, m=m, n=n)


@register("hecke-squared-relation", "the coefficient relation obtained from T_2 applied twice")
def _hecke_squared_relation(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    top = bounds.hecke_max
    for k in bounds.weights:
        reserve(k, 4 * top, 4 * top)
        for m in range(1, top + 1):
            for n in range(1, top + 1):
                yield _identity(k, "hecke-squared-relation", hecke_squared_relation_defect(k, m, n) == 0, m=m, n=n)


@register("tau-divisibility", "tau_k(2^b n) = 0 (mod 2^(gamma b)) for odd n")
def _tau_divisibility(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    for k in bounds.weights:
        gamma = weight_profile(k).gamma
        for b in range(bounds.tau_b_max + 1):
            for n in bounds.odd_values:
                yield _divisibility(k, "tau-divisibility", gamma * b, tau_k(k, 2**b * n), b=b, n=n)
                if b >= 1:
                    yield _identity(k, "tau-divisibility:recursion", tau_recursion_defect(k, b, n) == 0, b=b, n=n)


# ─────────────────────── index four and the constant forms ───────────────────────

@register("index-four", "a_k(2m, 4) = 0 (mod 2^(rho+gamma))")
def _index_four(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "index-four",
        claim=lambda p, a, b: p.rho + p.gamma,
        indices=lambda a, b, m, n: (2 * m, 4),
        a_range=_only(1), b_range=_only(2),
    )
    for k in bounds.weights:
        yield _identity(k, "index-four:pipeline", run_index_four_pipeline(k).passed)


def _has_odd_exponent(series: QSeries) -> bool:
    return any(e % 2 for e, _ in series.terms())


@register("constant-odd", "a_k(0, n) = 0 (mod 2^eta) for odd n")
def _constant_odd(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    for k in bounds.weights:
        eta = weight_profile(k).eta
        for n in bounds.odd_values:
            yield _divisibility(k, "constant-odd", eta, a_coefficient(k, 0, n), n=n)
        basis = level2_basis(k, BASIS_PRECISION)
        weights = decompose_in_basis(canonical_basis(k, 0, BASIS_PRECISION), [e.series for e in basis])
        for element, c in zip(basis, weights):
            if _has_odd_exponent(element.series):
                yield _divisibility(k, "constant-odd:basis", eta, c, m=element.index)


@register("constant-even", "a_k(0, 2^b n) = 0 (mod 2^omega) for b > 0 and odd n")
def _constant_even(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    for k in bounds.weights:
        omega = weight_profile(k).omega
        for b in range(1, bounds.b_max + 1):
            for n in bounds.odd_values:
                yield _divisibility(k, "constant-even", omega, a_coefficient(k, 0, 2**b * n), b=b, n=n)
        split = constant_form_split(k)
        yield _identity(k, "constant-even:split", split.identity_holds)
        yield _divisibility(k, "constant-even:split", omega, split.congruence_exponent, m=1, valuation=True)


# ─────────────────────── odd second index ───────────────────────

@register("index-two-odd", "a_k(2, n) = 0 (mod 2^nu) for odd n")
def _index_two_odd(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    for k in bounds.weights:
        nu = weight_profile(k).nu
        for n in bounds.odd_values:
            yield _divisibility(k, "index-two-odd", nu, a_coefficient(k, 2, n), n=n)
        dim = level2_dim(k)
        g = auxiliary_form_g(k, dim + 1)
        yield _identity(k, "index-two-odd:auxiliary", g.valuation >= 0)
        head = min((two_adic_valuation(coeff(g, e)) for e in range(dim)), default=float("inf"))
        yield _divisibility(k, "index-two-odd:auxiliary", nu, head, m=dim, valuation=True)


@register("even-index-odd", "a_k(2^a m, n) = 0 (mod 2^nu) for a > 0")
def _even_index_odd(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "even-index-odd",
        claim=lambda p, a, b: p.nu,
        indices=lambda a, b, m, n: (2**a * m, n),
        a_range=lambda bd: range(1, bd.a_max + 1), b_range=_only(0),
    )


@register("q2-high-index", "a_k(2^a m, 2) = 0 (mod 2^chi) for a > 1")
def _q2_high_index(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    odd = bounds.odd_values
    for k in bounds.weights:
        chi = weight_profile(k).chi
        for a in range(2, bounds.a_max + 1):
            for m in odd:
                yield _divisibility(k, "q2-high-index", chi, a_coefficient(k, 2**a * m, 2), a=a, b=1, m=m, n=1)
        expansion = u4_expansion(k)
        tail = min((two_adic_valuation(c) for c in expansion[1:]), default=float("inf"))
        yield _divisibility(k, "q2-high-index:expansion", chi, tail, m=1, valuation=True)
        lead = scale(sub(alpha(2 - k, IDENTITY_PRECISION), QSeries.one(IDENTITY_PRECISION)), expansion[0])
        yield _divisibility(k, "q2-high-index:expansion", chi, series_two_adic_valuation(lead), m=0, valuation=True)


@register("lower-triangle", "a_k(2^a m, 2^b n) = 0 (mod 2^chi) for a > b >= 0")
def _lower_triangle(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "lower-triangle",
        claim=lambda p, a, b: p.chi,
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(1, bd.a_max + 1), b_range=lambda bd, a: range(0, min(a, bd.b_max + 1)),
    )


# ─────────────────────── upper triangle ───────────────────────

def e4_shift_difference(k: int, precision: int = IDENTITY_PRECISION) -> QSeries:
    """
    f_{2-k,2} E4^e - f_{w,2} - C_k f_{w,1} with e = 3, w = 14-k, or e = 4,
    w = -4 when k = 22.  Zero when the identity holds.
    """
    power = 4 if k == 22 else 3
    target = 2 - k + 4 * power
    lhs = mul(canonical_basis(2 - k, 2, precision), pow_(eisenstein(4, precision + 2), power))
    rhs = add(canonical_basis(target, 2, precision), scale(canonical_basis(target, 1, precision), E4_SHIFT_CONSTANTS[k]))
    return sub(lhs, rhs)


@register("q2-odd-index", "a_k(m, 2) = 0 (mod 2^gamma) for odd m")
def _q2_odd_index(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "q2-odd-index",
        claim=lambda p, a, b: p.gamma,
        indices=lambda a, b, m, n: (m, 2),
        a_range=_only(0), b_range=_only(1),
    )
    for k in bounds.weights:
        yield _identity(k, "q2-odd-index:e4-identity", e4_shift_difference(k).is_zero)


@register("diagonal-plus-one", "a_k(2^a m, 2^(a+1) n) = 0 (mod 2^gamma) for a >= 0")
def _diagonal_plus_one(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "diagonal-plus-one",
        claim=lambda p, a, b: p.gamma,
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(0, bd.a_max + 1), b_range=lambda bd, a: range(a + 1, a + 2),
    )


@register("diagonal-plus-two", "a_k(2^a m, 2^(a+2) n) = 0 (mod 2^(2 gamma)) for a >= 0")
def _diagonal_plus_two(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "diagonal-plus-two",
        claim=lambda p, a, b: 2 * p.gamma,
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(0, bd.a_max + 1), b_range=lambda bd, a: range(a + 2, a + 3),
    )


@register("upper-weak", "a_k(2^a m, 2^b n) = 0 (mod 2^(gamma (b-a))) for 0 <= a < b")
def _upper_weak(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "upper-weak",
        claim=lambda p, a, b: p.gamma * (b - a),
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(0, bd.a_max + 1), b_range=lambda bd, a: range(a + 1, bd.b_max + 1),
    )


@register("index-two-upper", "a_k(2m, 2^b n) = 0 (mod 2^(rho + gamma (b-1))) for b >= 2")
def _index_two_upper(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "index-two-upper",
        claim=lambda p, a, b: p.rho + p.gamma * (b - 1),
        indices=lambda a, b, m, n: (2 * m, 2**b * n),
        a_range=_only(1), b_range=lambda bd, a: range(2, bd.b_max + 1),
    )


@register("diagonal-plus-one-upper", "a_k(2^a m, 2^(a+1) n) = 0 (mod 2^(rho + gamma)) for a >= 1")
def _diagonal_plus_one_upper(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "diagonal-plus-one-upper",
        claim=lambda p, a, b: p.rho + p.gamma,
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(1, bd.a_max + 1), b_range=lambda bd, a: range(a + 1, a + 2),
    )


@register("diagonal-step", "a_k(2^(b+1) m, 2^(b+1) n) = a_k(2^b m, 2^b n) (mod 2^(chi + gamma)) for b >= 1")
def _diagonal_step(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    odd = bounds.odd_values
    for k in bounds.weights:
        p = weight_profile(k)
        if bounds.b_max >= 1:
            top = 2 ** (bounds.b_max + 1) * odd[-1]
            reserve(k, top, top)
        for b in range(1, bounds.b_max + 1):
            for m in odd:
                for n in odd:
                    upper = a_coefficient(k, 2 ** (b + 1) * m, 2 ** (b + 1) * n)
                    lower = a_coefficient(k, 2**b * m, 2**b * n)
                    yield _divisibility(k, "diagonal-step", p.chi + p.gamma, upper - lower, a=b, b=b, m=m, n=n)


@register("diagonal-plus-two-upper", "a_k(2^a m, 2^(a+2) n) = 0 (mod 2^(rho + 2 gamma)) for a >= 1")
def _diagonal_plus_two_upper(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "diagonal-plus-two-upper",
        claim=lambda p, a, b: p.rho + 2 * p.gamma,
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(1, bd.a_max + 1), b_range=lambda bd, a: range(a + 2, a + 3),
    )


@register("upper-triangle", "a_k(2^a m, 2^b n) = 0 (mod 2^(rho + gamma (b-a))) for b > a >= 1")
def _upper_triangle(bounds: LemmaBounds) -> Iterator[CongruenceRecord]:
    yield from _coefficient_cells(
        bounds, "upper-triangle",
        claim=lambda p, a, b: p.rho + p.gamma * (b - a),
        indices=lambda a, b, m, n: (2**a * m, 2**b * n),
        a_range=lambda bd: range(1, bd.a_max + 1), b_range=lambda bd, a: range(a + 1, bd.b_max + 1),
    )
