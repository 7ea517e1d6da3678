"""
Symbolic two-dissection of Kolberg expressions.

Generators:
    phi1 = phi(q)   phi2 = phi(q^2)   phi4 = phi(q^4)   phi8 = phi(q^8)
    Q = prod (1 + q^n) = phi(q^2)/phi(q),  R = Q(q^2),  S = R(q^2),  T = S(q^2)

Only Q carries odd powers of q.  Writing Q^2 = R (cos a + i sin a),

    cos a = R^2 S^3 T^-2         i sin a = 2 q R^2 S T^2
    cos 2a = R^8 S^-4            i sin 2a = 4 q R^4 S^4
    cos 4a = 1 + 32 q^2 R^8 S^8  i sin 4a = 8 q R^12

so Q^(2k) = R^k cos(ka) + R^k i sin(ka) splits into an even and an odd
series.  cos(ka) and i sin(ka) come from Chebyshev polynomials in the
cheapest base angle.  The imaginary unit is always absorbed, so every stored
coefficient is an integer.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

from sympy import chebyshevt_poly, chebyshevu_poly

from .errors import NotHalvable, OddExponentOfQ, OddQExponent
from .level1 import euler_phi
from .models import Parity
from .qseries import QSeries, add, dissect_parity, mul, pow_, scale, shift, truncate, v_op

logger = logging.getLogger(__name__)

GENERATORS = ("q", "phi1", "phi2", "phi4", "phi8", "Q", "R", "S", "T")


class Exponents(NamedTuple):
    eq: int = 0
    e1: int = 0
    e2: int = 0
    e4: int = 0
    e8: int = 0
    eQ: int = 0
    eR: int = 0
    eS: int = 0
    eT: int = 0

    def plus(self, other: "Exponents") -> "Exponents":
        return Exponents(*(x + y for x, y in zip(self, other)))

    def scaled(self, n: int) -> "Exponents":
        return Exponents(*(n * x for x in self))

    @property
    def sort_key(self) -> Tuple[int, ...]:
        return (self.eq, self.eQ, self.eR, self.eS, self.eT, self.e2, self.e4, self.e8, self.e1)


_GENERATOR_FIELD = dict(zip(GENERATORS, Exponents._fields))


class KolbergMonomial(NamedTuple):
    coefficient: int
    exponents: Exponents


class KolbergExpr:
    """Immutable integer combination of Kolberg monomials, kept canonical."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Exponents, int], Iterable[Tuple[Exponents, int]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[Exponents, int] = {}
        for e, c in items:
            merged[e] = merged.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(merged.items(), key=lambda t: t[0].sort_key) if c}

    # ── constructors ──

    @classmethod
    def constant(cls, c: int) -> "KolbergExpr":
        return cls({Exponents(): c})

    @classmethod
    def generator(cls, name: str, power: int = 1, coefficient: int = 1) -> "KolbergExpr":
        try:
            field = _GENERATOR_FIELD[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}; expected one of {GENERATORS}") from None
        return cls({Exponents(**{field: power}): coefficient})

    @classmethod
    def monomial(cls, coefficient: int, **exponents: int) -> "KolbergExpr":
        return cls({Exponents(**exponents): coefficient})

    # ── accessors ──

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return dict(self._terms)

    def monomials(self) -> Iterator[KolbergMonomial]:
        for e, c in self._terms.items():
            yield KolbergMonomial(c, e)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[KolbergMonomial]:
        return self.monomials()

    # ── arithmetic ──

    def __add__(self, other):
        if isinstance(other, int):
            other = KolbergExpr.constant(other)
        if not isinstance(other, KolbergExpr):
            return NotImplemented
        return KolbergExpr(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "KolbergExpr":
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, KolbergExpr)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, KolbergExpr):
            return NotImplemented
        return KolbergExpr(
            (ea.plus(eb), ca * cb) for ea, ca in self._terms.items() for eb, cb in other._terms.items()
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "KolbergExpr":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only a single monomial can be raised to a negative power")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError(f"monomial with coefficient {c} has no integral inverse")
            return KolbergExpr({e.scaled(n): c ** (-n)})
        result = KolbergExpr.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "KolbergExpr":
        return KolbergExpr({e: c * x for e, x in self._terms.items()})

    def map_exponents(self, fn) -> "KolbergExpr":
        return KolbergExpr((fn(e), c) for e, c in self._terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, KolbergExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"KolbergExpr({self})"

    def __str__(self) -> str:
        from .expression import render

        return render(self)


# ─────────────────────── rewriting ───────────────────────

def normalize_phi1(expr: KolbergExpr) -> KolbergExpr:
    """phi(q)^n -> phi(q^2)^n Q^-n."""
    return expr.map_exponents(lambda e: e._replace(e1=0, e2=e.e2 + e.e1, eQ=e.eQ - e.e1))


def lift_phi2(expr: KolbergExpr) -> KolbergExpr:
    """phi(q^2)^n -> phi(q^4)^n R^-n."""
    return expr.map_exponents(lambda e: e._replace(e2=0, e4=e.e4 + e.e2, eR=e.eR - e.e2))


def reduce_mod_pow2(expr: KolbergExpr, n: int) -> KolbergExpr:
    """Least nonnegative residues mod 2^n; vanishing monomials dropped."""
    if n < 1:
        raise ValueError(f"modulus exponent must be at least 1, got {n}")
    modulus = 1 << n
    return KolbergExpr({e: c % modulus for e, c in expr.terms.items()})


# ─────────────────────── cos(ka) and i sin(ka) ───────────────────────

COS1 = KolbergExpr.monomial(1, eR=2, eS=3, eT=-2)
ISIN1 = KolbergExpr.monomial(2, eq=1, eR=2, eS=1, eT=2)
COS2 = KolbergExpr.monomial(1, eR=8, eS=-4)
ISIN2 = KolbergExpr.monomial(4, eq=1, eR=4, eS=4)
SIN2_SQUARED = KolbergExpr.monomial(-16, eq=2, eR=8, eS=8)
COS4 = 1 - 2 * SIN2_SQUARED
ISIN4 = KolbergExpr.monomial(8, eq=1, eR=12)


def _chebyshev(kind, n: int, x: KolbergExpr) -> KolbergExpr:
    """Evaluate the degree-n Chebyshev polynomial of the given kind at x (Horner)."""
    coefficients = [int(c) for c in kind(n, polys=True).all_coeffs()]
    out = KolbergExpr()
    for c in coefficients:
        out = out * x + c
    return out


def _base_angle(k: int) -> Tuple[int, KolbergExpr, KolbergExpr]:
    """(multiple of the base angle, cos base, i sin base) used for cos(ka) and i sin(ka)."""
    if k % 2:
        return k, COS1, ISIN1
    if k % 4 == 2:
        return k // 2, COS2, ISIN2
    return k // 4, COS4, ISIN4


def expand_cos(k: int) -> KolbergExpr:
    if k < 1:
        raise ValueError(f"expand_cos needs k >= 1, got {k}")
    n, cos_base, _ = _base_angle(k)
    return _chebyshev(chebyshevt_poly, n, cos_base)


def expand_isin(k: int) -> KolbergExpr:
    """i sin(ka) = i sin(b) U_{n-1}(cos b) with ka = n*b."""
    if k < 1:
        raise ValueError(f"expand_isin needs k >= 1, got {k}")
    n, cos_base, isin_base = _base_angle(k)
    return isin_base * _chebyshev(chebyshevu_poly, n - 1, cos_base)


# ─────────────────────── dissection ───────────────────────

def _parity_bit(parity: Union[Parity, str, int]) -> int:
    if isinstance(parity, int):
        if parity not in (0, 1):
            raise ValueError(f"parity must be 0 or 1, got {parity}")
        return parity
    return 0 if Parity(parity) is Parity.EVEN else 1


def _q_power_split(k: int) -> Tuple[KolbergExpr, KolbergExpr]:
    """Q^(2k) as (even part, odd part)."""
    if k == 0:
        return KolbergExpr.constant(1), KolbergExpr()
    rk = KolbergExpr.generator("R", k)
    if k > 0:
        return rk * expand_cos(k), rk * expand_isin(k)
    return rk * expand_cos(-k), -(rk * expand_isin(-k))


def dissect(expr: KolbergExpr, parity: Union[Parity, str, int]) -> KolbergExpr:
    """The even or odd part of expr in q, still in the Kolberg generators."""
    bit = _parity_bit(parity)
    expr = normalize_phi1(expr)
    cache: Dict[int, Tuple[KolbergExpr, KolbergExpr]] = {}
    out = KolbergExpr()
    for e, c in expr.terms.items():
        if e.eQ % 2:
            raise OddQExponent(f"monomial with Q^{e.eQ} cannot be dissected")
        half = e.eQ // 2
        if half not in cache:
            cache[half] = _q_power_split(half)
        even, odd = cache[half]
        part = even if (e.eq % 2) == bit else odd
        if part.is_zero:
            continue
        rest = KolbergExpr({e._replace(eQ=0): c})
        out = out + rest * part
    return out


def halve(expr: KolbergExpr) -> KolbergExpr:
    """
    Substitute q^2 -> q.

    R, S, T become Q, R, S; phi(q^4), phi(q^8) become phi(q^2), phi(q^4);
    phi(q^2) becomes phi(q) = phi(q^2) Q^-1.
    """
    out = []
    for e, c in expr.terms.items():
        if e.eq % 2:
            raise OddExponentOfQ(f"q^{e.eq} has no preimage under q^2 -> q")
        if e.eQ or e.e1:
            raise NotHalvable("Q and phi(q) are not series in q^2")
        out.append((
            Exponents(eq=e.eq // 2, e2=e.e2 + e.e4, e4=e.e8, eQ=e.eR - e.e2, eR=e.eS, eS=e.eT),
            c,
        ))
    return KolbergExpr(out)


def divide_by_q(expr: KolbergExpr, power: int = 1) -> KolbergExpr:
    return expr.map_exponents(lambda e: e._replace(eq=e.eq - power))


# ─────────────────────── numeric oracle ───────────────────────

@lru_cache(maxsize=256)
def _phi_power(step: int, power: int, precision: int) -> QSeries:
    """phi(q^step)^power to the given precision."""
    base = euler_phi(max(1, -(-precision // step)))
    return truncate(v_op(pow_(base, power), step), precision)


def _eta_vector(e: Exponents) -> Tuple[Tuple[int, int], ...]:
    """Exponents of phi(q^d) for d = 1, 2, 4, 8, 16."""
    return (
        (1, e.e1 - e.eQ),
        (2, e.e2 + e.eQ - e.eR),
        (4, e.e4 + e.eR - e.eS),
        (8, e.e8 + e.eS - e.eT),
        (16, e.eT),
    )


def monomial_qseries(e: Exponents, precision: int) -> QSeries:
    inner = precision - e.eq
    if inner <= 0:
        return QSeries.zero(precision)
    out = QSeries.one(inner)
    for step, power in _eta_vector(e):
        if power:
            out = mul(out, _phi_power(step, power, inner))
    return shift(out, e.eq)


def to_qseries(expr: KolbergExpr, precision: int) -> QSeries:
    out = QSeries.zero(precision)
    for e, c in expr.terms.items():
        out = add(out, scale(monomial_qseries(e, precision), c))
    return out


def dissect_numeric(f: QSeries, parity: Union[Parity, str, int]) -> QSeries:
    return dissect_parity(f, _parity_bit(parity))
