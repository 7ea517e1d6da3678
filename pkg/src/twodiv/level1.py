"""
Level-1 forms and the canonical basis f_{k,m}.

    E4 = 1 + 240 * sum sigma_3(n) q^n
    E6 = 1 - 504 * sum sigma_5(n) q^n
    Delta = q * prod (1 - q^n)^24
    j = E4^3 / Delta

For even k = 12*ell + k', f_{k,m} = q^-m + O(q^(ell+1)) is built bottom-up:
f_{k,-ell} = Delta^ell * E_{k'}, and f_{k,m} is f_{k,m-1} * j with every
exponent in (-m, ell] cleared by subtracting earlier basis elements.  All
pivots are 1, so every coefficient stays an integer.

Each weight keeps one ladder of basis elements.  A ladder is built to a base
precision rounded up to a multiple of PRECISION_CLASS; f_{k,m} on it is
known to base - (m + ell).  A request that outgrows the ladder replaces it
with a larger one.
"""

from __future__ import annotations

import logging
import threading
from functools import lru_cache
from typing import Dict, List, NamedTuple, Union

from sympy import divisor_sigma

from .errors import IndexBelowRange, UnsupportedWeight
from .models import SIX_WEIGHTS, WeightDecomposition, WeightProfile
from .qseries import QSeries, coeff, invert, mul, pow_, scale, series_two_adic_valuation, shift, sub, truncate

logger = logging.getLogger(__name__)

PRECISION_CLASS = 64

# k: (gamma, rho, chi, nu, eta, omega, xi_{2-k})
_PROFILE_TABLE = {
    12: (3, 7, 7, 15, 12, 4, 3),
    16: (3, 8, 9, 16, 13, 6, 3),
    18: (4, 8, 9, 16, 10, 3, 6),
    20: (3, 7, 7, 16, 13, 4, 3),
    22: (5, 7, 7, 16, 12, 3, 4),
    26: (4, 9, 8, 15, 10, 3, 5),
}

# k': (power of E4, power of E6)
E_WEIGHT_POWERS = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 14: (2, 1)}


def precision_class(needed: int) -> int:
    return max(PRECISION_CLASS, -(-needed // PRECISION_CLASS) * PRECISION_CLASS)


# ─────────────────────── weights ───────────────────────

def weight_decomposition(k: int) -> WeightDecomposition:
    if k % 2:
        raise UnsupportedWeight(f"weight {k} is odd")
    r = k % 12
    kprime = 14 if r == 2 else r
    return WeightDecomposition(k=k, ell=(k - kprime) // 12, kprime=kprime)


def weight_profile(k: int) -> WeightProfile:
    try:
        gamma, rho, chi, nu, eta, omega, xi = _PROFILE_TABLE[k]
    except KeyError:
        raise UnsupportedWeight(f"no congruence constants for weight {k}; expected one of {SIX_WEIGHTS}") from None
    dual = 2 - k
    mu = 3 - dual if dual % 4 == 2 else -dual
    return WeightProfile(k=k, gamma=gamma, rho=rho, chi=chi, nu=nu, eta=eta, omega=omega, xi=xi, mu=mu)


# ─────────────────────── Eisenstein series, Delta, j ───────────────────────

def sigma(kpow: int, n: int) -> int:
    return int(divisor_sigma(n, kpow))


@lru_cache(maxsize=32)
def eisenstein(w: int, precision: int) -> QSeries:
    if w == 4:
        factor, power = 240, 3
    elif w == 6:
        factor, power = -504, 5
    else:
        raise UnsupportedWeight(f"only E4 and E6 are provided, not E{w}")
    values = [1] + [factor * sigma(power, n) for n in range(1, precision)]
    return QSeries(values, 0, precision)


@lru_cache(maxsize=32)
def euler_phi(precision: int) -> QSeries:
    """prod (1 - q^n) via the pentagonal number theorem."""
    values = [0] * precision
    if precision:
        values[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < precision:
        sign = -1 if k % 2 else 1
        values[k * (3 * k - 1) // 2] += sign
        if k * (3 * k + 1) // 2 < precision:
            values[k * (3 * k + 1) // 2] += sign
        k += 1
    return QSeries(values, 0, precision)


@lru_cache(maxsize=32)
def delta(precision: int) -> QSeries:
    return shift(pow_(euler_phi(max(precision - 1, 1)), 24), 1)


def delta_power(ell: int, precision: int) -> QSeries:
    """Delta^ell to the given precision (any sign of ell)."""
    if ell == 0:
        return QSeries.one(precision)
    return truncate(pow_(delta(precision + 1 - ell), ell), precision)


@lru_cache(maxsize=16)
def j_invariant(precision: int) -> QSeries:
    e4_cubed = pow_(eisenstein(4, precision + 1), 3)
    return truncate(mul(e4_cubed, invert(delta(precision + 2))), precision)


def e_weight(kprime: int, precision: int) -> QSeries:
    """The normalized level-1 form of weight k' (1, E4, E6, E4^2, E4*E6, E4^2*E6)."""
    try:
        a, b = E_WEIGHT_POWERS[kprime]
    except KeyError:
        raise UnsupportedWeight(f"k' must be one of {sorted(E_WEIGHT_POWERS)}, got {kprime}") from None
    out = QSeries.one(precision)
    if a:
        out = mul(out, pow_(eisenstein(4, precision), a))
    if b:
        out = mul(out, eisenstein(6, precision))
    return out


def level1_monomial(a: int, b: int, c: int, precision: int) -> QSeries:
    """E4^a * E6^b * Delta^c (c may be negative); weight 4a + 6b + 12c."""
    pad = precision + abs(c)
    out = delta_power(c, pad)
    if a:
        out = mul(out, pow_(eisenstein(4, pad), a))
    if b:
        out = mul(out, pow_(eisenstein(6, pad), b))
    return truncate(out, precision)


# ─────────────────────── canonical basis ───────────────────────

class _BasisLadder:
    """f_{k,-ell}, f_{k,-ell+1}, ... built lazily on a fixed base precision."""

    def __init__(self, k: int, base_precision: int):
        dec = weight_decomposition(k)
        self.k = k
        self.ell = dec.ell
        self.base_precision = base_precision
        start = mul(delta_power(dec.ell, base_precision), e_weight(dec.kprime, base_precision + abs(dec.ell)))
        self._forms: List[QSeries] = [truncate(start, base_precision)]
        self._j = j_invariant(2 * base_precision + abs(dec.ell) + 2)
        self._lock = threading.Lock()

    def form(self, m: int) -> QSeries:
        index = m + self.ell
        with self._lock:
            while len(self._forms) <= index:
                self._extend()
            return self._forms[index]

    def _extend(self) -> None:
        previous = self._forms[-1]
        m = len(self._forms) - self.ell
        g = truncate(mul(previous, self._j), previous.precision - 1)
        for e in range(-m + 1, self.ell + 1):
            c = coeff(g, e)
            if c:
                g = sub(g, scale(self._forms[self.ell - e], c))
        self._forms.append(g)


_ladders: Dict[int, _BasisLadder] = {}
_ladders_lock = threading.Lock()


def _ladder(k: int, m: int, precision: int) -> _BasisLadder:
    dec = weight_decomposition(k)
    needed = precision + m + dec.ell
    with _ladders_lock:
        ladder = _ladders.get(k)
        if ladder is None or ladder.base_precision < needed:
            base = precision_class(needed)
            logger.debug("building basis ladder for k=%d at base precision %d", k, base)
            ladder = _BasisLadder(k, base)
            _ladders[k] = ladder
    return ladder


def reserve(k: int, m_max: int, n_max: int) -> None:
    """Make sure f_{k,m} for m <= m_max can be read up to q^n_max without rebuilds."""
    _ladder(k, m_max, n_max + 1).form(m_max)


def canonical_basis(k: int, m: int, precision: int) -> QSeries:
    dec = weight_decomposition(k)
    if m < -dec.ell:
        raise IndexBelowRange(f"f_{{{k},{m}}} needs m >= {-dec.ell}")
    return truncate(_ladder(k, m, precision).form(m), precision)


def a_coefficient(k: int, m: int, n: int) -> int:
    """
    Coefficient of q^n in f_{k,m}.

    Zero when m < -ell, and for every n < ell + 1 other than the leading
    exponent n = -m, where the value is 1.
    """
    dec = weight_decomposition(k)
    if m < -dec.ell:
        return 0
    if n == -m:
        return 1
    if n < -m or n <= dec.ell:
        return 0
    return coeff(_ladder(k, m, n + 1).form(m), n)


# ─────────────────────── Delta_k and tau_k ───────────────────────

def _require_six(k: int) -> None:
    if k not in SIX_WEIGHTS:
        raise UnsupportedWeight(f"Delta_k is defined here for k in {SIX_WEIGHTS}, not {k}")


def delta_k(k: int, precision: int) -> QSeries:
    _require_six(k)
    return truncate(mul(delta(precision), e_weight(k - 12, precision)), precision)


@lru_cache(maxsize=16)
def _delta_k_class(k: int, precision: int) -> QSeries:
    return delta_k(k, precision)


def tau_k(k: int, n: int) -> int:
    _require_six(k)
    return coeff(_delta_k_class(k, precision_class(n + 1)), n)


# ─────────────────────── constant form ───────────────────────

class ConstantFormSplit(NamedTuple):
    """f_{k,0} = E4^r E6^s - c * Delta_k."""
    r: int
    s: int
    c: int
    identity_holds: bool
    congruence_exponent: Union[int, float]


def constant_form_split(k: int, precision: int = 60) -> ConstantFormSplit:
    """
    Split f_{k,0} into its Eisenstein monomial and a multiple of Delta_k.

    congruence_exponent is the 2-adic valuation of E4^r E6^s - 1.
    """
    _require_six(k)
    s = 0 if k % 4 == 0 else 1
    r = (k - 6 * s) // 4
    head = level1_monomial(r, s, 0, precision)
    c = coeff(head, 1)
    rebuilt = sub(head, scale(delta_k(k, precision), c))
    holds = sub(rebuilt, canonical_basis(k, 0, precision)).is_zero
    exponent = series_two_adic_valuation(sub(head, QSeries.one(precision)))
    return ConstantFormSplit(r, s, c, holds, exponent)
