"""
Level-2 forms on Gamma_0(2).

    S4 = (E4(z) - E4(2z)) / 240          T4 = (16 E4(2z) - E4(z)) / 15
    S6 = (E6(z) - E6(2z)) / -504         T6 = (64 E6(2z) - E6(z)) / 63
    Phi = Delta(2z) / Delta(z)           psi = 1 / Phi

alpha_k and theta_k for negative even k are quotients of these, and each of
the six weights gets a holomorphic level-2 basis ordered by vanishing order
at infinity.  Every unlabelled argument in the basis labels is z.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import NotInSpan, PrecisionExceeded, UnsupportedWeight
from .level1 import a_coefficient, canonical_basis, delta, delta_k, eisenstein
from .models import SIX_WEIGHTS, Level2BasisElement
from .qseries import QSeries, coeff, divexact, invert, mul, pow_, scale, sub, truncate, u_op, v_op

logger = logging.getLogger(__name__)


def _doubled(series_at: int, precision: int, build) -> QSeries:
    """build(P)(2z) truncated to precision."""
    return truncate(v_op(build(-(-precision // 2) + series_at), 2), precision)


# ─────────────────────── S4, S6, T4, T6 ───────────────────────

def _e_and_doubled(w: int, precision: int) -> Tuple[QSeries, QSeries]:
    e = eisenstein(w, precision)
    return e, _doubled(0, precision, lambda p: eisenstein(w, p))


@lru_cache(maxsize=32)
def s4(precision: int) -> QSeries:
    e, e2 = _e_and_doubled(4, precision)
    return divexact(sub(e, e2), 240)


@lru_cache(maxsize=32)
def s6(precision: int) -> QSeries:
    e, e2 = _e_and_doubled(6, precision)
    return divexact(sub(e, e2), -504)


@lru_cache(maxsize=32)
def t4(precision: int) -> QSeries:
    e, e2 = _e_and_doubled(4, precision)
    return divexact(sub(scale(e2, 16), e), 15)


@lru_cache(maxsize=32)
def t6(precision: int) -> QSeries:
    e, e2 = _e_and_doubled(6, precision)
    return divexact(sub(scale(e2, 64), e), 63)


# ─────────────────────── Phi and psi ───────────────────────

@lru_cache(maxsize=32)
def phi(precision: int) -> QSeries:
    doubled = _doubled(1, precision + 1, delta)
    return truncate(mul(doubled, invert(delta(precision + 2))), precision)


@lru_cache(maxsize=32)
def psi(precision: int) -> QSeries:
    return invert(phi(precision + 2))


# ─────────────────────── alpha_k and theta_k ───────────────────────

def _negative_even(k: int) -> None:
    if k >= 0 or k % 2:
        raise UnsupportedWeight(f"alpha_k and theta_k need a negative even weight, got {k}")


def _quotient_index(k: int) -> int:
    return (6 - k) // 4 if k % 4 == 2 else -k // 4


def alpha(k: int, precision: int) -> QSeries:
    """Level-2 form of weight k, holomorphic at infinity with constant term 1."""
    _negative_even(k)
    i = _quotient_index(k)
    pad = precision + i + 1
    out = pow_(t4(pad), -i)
    if k % 4 == 2:
        out = mul(t6(pad), out)
    return truncate(out, precision)


def theta(k: int, precision: int) -> QSeries:
    """Level-2 form of weight k, holomorphic at 0 with a pole of minimal order at infinity."""
    _negative_even(k)
    i = _quotient_index(k)
    pad = precision + i + 1
    out = pow_(s4(pad), -i)
    if k % 4 == 2:
        out = mul(s6(pad), out)
    return truncate(out, precision)


def mu_exponent(k: int) -> int:
    _negative_even(k)
    return 3 - k if k % 4 == 2 else -k


def mu_sign(k: int) -> int:
    _negative_even(k)
    return -1 if k % 4 == 2 else 1


# ─────────────────────── holomorphic bases ───────────────────────

def level2_dim(k: int) -> int:
    if k < 4 or k % 2:
        raise UnsupportedWeight(f"dim M_k(2) is tabulated for even k >= 4, got {k}")
    return 1 + k // 4


# k: ((a, b) of E4(2z)^a E6(2z)^b, [(S4, E4, E6, S6) exponents of the tail])
_BASIS_TABLE = {
    12: ((3, 0), [(3, 0, 0, 0)]),
    16: ((4, 0), [(3, 1, 0, 0), (4, 0, 0, 0)]),
    18: ((3, 1), [(3, 0, 1, 0), (3, 0, 0, 1)]),
    20: ((5, 0), [(3, 2, 0, 0), (4, 1, 0, 0), (5, 0, 0, 0)]),
    22: ((4, 1), [(3, 1, 1, 0), (4, 0, 1, 0), (4, 0, 0, 1)]),
    26: ((5, 1), [(3, 2, 1, 0), (4, 1, 1, 0), (5, 0, 1, 0), (5, 0, 0, 1)]),
}


def _power_label(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _join(*parts: str) -> str:
    return "*".join(p for p in parts if p) or "1"


def _power(series: QSeries, e: int, precision: int) -> QSeries:
    return pow_(series, e) if e else QSeries.one(precision)


def level2_basis(k: int, precision: int) -> List[Level2BasisElement]:
    """
    Basis of M_k(2) for the six weights.

    The i-th element (0-based) vanishes to order i at infinity and leads with 1:
    E4(2z)^a E6(2z)^b, Delta_k, Delta_k(2z), then monomials in S4, E4, E6, S6
    with rising powers of S4.
    """
    if k not in _BASIS_TABLE:
        raise UnsupportedWeight(f"level-2 bases are tabulated for {SIX_WEIGHTS}, not {k}")
    (a, b), tail = _BASIS_TABLE[k]
    pad = precision + 1

    def eisenstein_part(p: int) -> QSeries:
        return mul(_power(eisenstein(4, p), a, p), _power(eisenstein(6, p), b, p))

    head_label = _join(_power_label("E4(2z)", a), _power_label("E6(2z)", b))
    series: List[Tuple[str, QSeries]] = [
        (head_label, _doubled(0, precision, eisenstein_part)),
        (f"Delta_{k}", delta_k(k, precision)),
        (f"Delta_{k}(2z)", _doubled(1, precision, lambda p: delta_k(k, p))),
    ]
    for es4, e4, e6, es6 in tail:
        product = mul(
            mul(pow_(s4(pad), es4), _power(eisenstein(4, pad), e4, pad)),
            mul(_power(eisenstein(6, pad), e6, pad), _power(s6(pad), es6, pad)),
        )
        label = _join(_power_label("S4", es4), _power_label("E4", e4), _power_label("E6", e6), _power_label("S6", es6))
        series.append((label, truncate(product, precision)))

    return [
        Level2BasisElement(weight=k, index=i, label=label, series=s)
        for i, (label, s) in enumerate(series)
    ]


# ─────────────────────── triangular decomposition ───────────────────────

def decompose_in_basis(f: QSeries, basis: Sequence[QSeries]) -> List[int]:
    """
    Coefficients c_i with f = sum c_i * basis_i.

    The basis must have strictly increasing valuations and leading
    coefficients +1 or -1.  Pivots are cleared from the lowest upward; a
    residual term below the next pivot, or any residual left at the end,
    means f is outside the span.
    """
    residual = f
    coefficients: List[int] = []
    previous = None
    for i, b in enumerate(basis):
        pivot = b.valuation
        if previous is not None and pivot <= previous:
            raise ValueError(f"basis element {i} has valuation {pivot}, not above {previous}")
        previous = pivot
        unit = b.leading_coefficient
        if unit not in (1, -1):
            raise ValueError(f"basis element {i} leads with {unit}, not a unit")
        if pivot >= residual.precision:
            raise PrecisionExceeded(pivot, residual.precision)
        if not residual.is_zero and residual.valuation < pivot:
            raise NotInSpan(f"residual has a q^{residual.valuation} term below pivot q^{pivot}")
        c = coeff(residual, pivot) * unit
        coefficients.append(c)
        if c:
            residual = sub(residual, scale(b, c))
    if not residual.is_zero:
        raise NotInSpan(f"residual q^{residual.valuation} term survives after {len(basis)} basis elements")
    return coefficients


def recombine(coefficients: Sequence[int], basis: Sequence[QSeries]) -> QSeries:
    out = QSeries.zero(min(b.precision for b in basis))
    for c, b in zip(coefficients, basis):
        if c:
            out = out + scale(b, c)
    return out


# ─────────────────────── index-two expansions over Phi^i alpha ───────────────────────

def phi_alpha_basis(k: int, terms: int, precision: int) -> List[QSeries]:
    """[alpha_k, Phi*alpha_k, ..., Phi^(terms-1)*alpha_k]."""
    a = alpha(k, precision)
    p = phi(precision)
    out = [a]
    for _ in range(1, terms):
        out.append(truncate(mul(out[-1], p), precision))
    return out


def u4_expansion(k: int, terms: int = 17, precision: int = 40) -> List[int]:
    """
    Coefficients C_i with f_{2-k,2}|U_4 = sum C_i Phi^i alpha_{2-k}.

    For the six weights the expansion has at most 17 terms; trailing zero
    coefficients are kept so every weight returns the requested length.
    """
    if k not in SIX_WEIGHTS:
        raise UnsupportedWeight(f"the U_4 expansion is defined for {SIX_WEIGHTS}, not {k}")
    dual = 2 - k
    target = u_op(canonical_basis(dual, 2, 4 * precision), 4)
    logger.debug("U_4 expansion of f_{%d,2}: %d terms at precision %d", dual, terms, precision)
    return decompose_in_basis(target, phi_alpha_basis(dual, terms, precision))


def auxiliary_form_g(k: int, precision: int) -> QSeries:
    """G = f_{k,2} - f_{k,1}(2z) - a_k(2,2) Delta_k(2z), a holomorphic form on Gamma_0(2)."""
    if k not in SIX_WEIGHTS:
        raise UnsupportedWeight(f"G is defined for {SIX_WEIGHTS}, not {k}")
    f2 = canonical_basis(k, 2, precision)
    f1_doubled = _doubled(0, precision, lambda p: canonical_basis(k, 1, p))
    c = a_coefficient(k, 2, 2)
    cusp = _doubled(1, precision, lambda p: delta_k(k, p))
    return sub(sub(f2, f1_doubled), scale(cusp, c))
