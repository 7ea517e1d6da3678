"""
Truncated Laurent series in q with exact coefficients.

A QSeries is  q^v * (c0 + c1*q + c2*q^2 + ...) + O(q^P).  Coefficients are
Python ints (or fractions.Fraction when a caller scales by a non-integral
rational), so nothing ever overflows.

Precision rules:
    add / sub      min(a.P, b.P)
    mul            min(a.P + b.v, b.P + a.v)
    invert         P - 2v
    v_op(p)        p * P
    u_op(p)        ceil(P / p)

Reading a coefficient at or past the precision raises PrecisionExceeded.
The zero series stores no coefficients and has valuation == precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from .errors import ExactDivisionFailure, NonUnitLeadingCoefficient, PrecisionExceeded

Scalar = Union[int, Fraction]


class QSeries:
    """Immutable truncated Laurent series."""

    __slots__ = ("_valuation", "_coeffs", "_precision")

    def __init__(self, coeffs: Iterable[Scalar] = (), valuation: int = 0, precision: Optional[int] = None):
        values = list(coeffs)
        if precision is None:
            precision = valuation + len(values)
        # drop everything at or past the precision
        values = values[: max(0, precision - valuation)]
        start = 0
        while start < len(values) and not values[start]:
            start += 1
        if start == len(values):
            self._coeffs: Tuple[Scalar, ...] = ()
            self._valuation = precision
        else:
            values = values[start:]
            valuation += start
            values.extend([0] * (precision - valuation - len(values)))
            self._coeffs = tuple(values)
            self._valuation = valuation
        self._precision = precision

    # ── accessors ──

    @property
    def valuation(self) -> int:
        return self._valuation

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        return self._coeffs

    @property
    def precision(self) -> int:
        return self._precision

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Scalar:
        if not self._coeffs:
            raise NonUnitLeadingCoefficient("the zero series has no leading coefficient")
        return self._coeffs[0]

    def terms(self) -> Iterator[Tuple[int, Scalar]]:
        """Yield (exponent, coefficient) for every nonzero stored term."""
        for i, c in enumerate(self._coeffs):
            if c:
                yield self._valuation + i, c

    # ── constructors ──

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls((), precision, precision)

    @classmethod
    def one(cls, precision: int) -> "QSeries":
        return cls([1], 0, precision)

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar, precision: int) -> "QSeries":
        return cls([coefficient], exponent, precision)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar], precision: int) -> "QSeries":
        """Build from an {exponent: coefficient} mapping."""
        if not terms:
            return cls.zero(precision)
        low = min(terms)
        values = [0] * max(0, precision - low)
        for e, c in terms.items():
            if e < precision:
                values[e - low] += c
        return cls(values, low, precision)

    # ── operators ──

    def __add__(self, other):
        if isinstance(other, QSeries):
            return add(self, other)
        if isinstance(other, (int, Fraction)):
            return add(self, QSeries.monomial(0, other, self._precision))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, (QSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        return pow_(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self._valuation == other._valuation
            and self._precision == other._precision
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self._valuation, self._precision, self._coeffs))

    def __repr__(self) -> str:
        return f"QSeries({self})"

    def __str__(self) -> str:
        return render(self)


# ─────────────────────── arithmetic ───────────────────────

def add(a: QSeries, b: QSeries) -> QSeries:
    precision = min(a.precision, b.precision)
    low = min(a.valuation, b.valuation)
    if low >= precision:
        return QSeries.zero(precision)
    values = [0] * (precision - low)
    for series in (a, b):
        offset = series.valuation - low
        for i, c in enumerate(series.coeffs[: max(0, precision - series.valuation)]):
            values[offset + i] += c
    return QSeries(values, low, precision)


def sub(a: QSeries, b: QSeries) -> QSeries:
    return add(a, scale(b, -1))


def scale(a: QSeries, c: Scalar) -> QSeries:
    if not c:
        return QSeries.zero(a.precision)
    return QSeries([c * x for x in a.coeffs], a.valuation, a.precision)


def divexact(a: QSeries, d: int) -> QSeries:
    """Divide every coefficient by d, which must divide each one exactly."""
    out = []
    for e, c in zip(range(a.valuation, a.precision), a.coeffs):
        quotient, remainder = divmod(c, d)
        if remainder:
            raise ExactDivisionFailure(f"coefficient {c} of q^{e} is not divisible by {d}")
        out.append(quotient)
    return QSeries(out, a.valuation, a.precision)


def shift(a: QSeries, s: int) -> QSeries:
    """Multiply by q^s."""
    return QSeries(a.coeffs, a.valuation + s, a.precision + s)


def truncate(a: QSeries, precision: int) -> QSeries:
    """Forget every term at or past the given precision (never raises precision)."""
    precision = min(precision, a.precision)
    return QSeries(a.coeffs, a.valuation, precision)


def mul(a: QSeries, b: QSeries) -> QSeries:
    valuation = a.valuation + b.valuation
    precision = min(a.precision + b.valuation, b.precision + a.valuation)
    n = precision - valuation
    if n <= 0 or a.is_zero or b.is_zero:
        return QSeries.zero(precision)
    xs = [(i, c) for i, c in enumerate(a.coeffs[:n]) if c]
    ys = [(j, c) for j, c in enumerate(b.coeffs[:n]) if c]
    if len(ys) > len(xs):
        xs, ys = ys, xs
    out = [0] * n
    for i, x in xs:
        limit = n - i
        for j, y in ys:
            if j >= limit:
                break
            out[i + j] += x * y
    return QSeries(out, valuation, precision)


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse by the coefficient recurrence c0*b_n = -sum(c_i*b_{n-i})."""
    unit = a.leading_coefficient
    if unit not in (1, -1):
        raise NonUnitLeadingCoefficient(f"leading coefficient {unit} is not a unit")
    n = a.precision - a.valuation
    tail = [(i, c) for i, c in enumerate(a.coeffs) if i and c]
    out = [0] * n
    out[0] = unit
    for m in range(1, n):
        acc = 0
        for i, c in tail:
            if i > m:
                break
            acc += c * out[m - i]
        out[m] = -unit * acc
    return QSeries(out, -a.valuation, -a.valuation + n)


def pow_(a: QSeries, n: int) -> QSeries:
    if n < 0:
        return pow_(invert(a), -n)
    result = QSeries.one(a.precision - a.valuation)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def coeff(a: QSeries, e: int) -> Scalar:
    if e >= a.precision:
        raise PrecisionExceeded(e, a.precision)
    if e < a.valuation:
        return 0
    return a.coeffs[e - a.valuation]


def v_op(a: QSeries, p: int) -> QSeries:
    """f(z) -> f(pz), i.e. q^e -> q^(pe)."""
    if a.is_zero:
        return QSeries.zero(p * a.precision)
    out = [0] * (p * (a.precision - a.valuation))
    out[::p] = a.coeffs
    return QSeries(out, p * a.valuation, p * a.precision)


def u_op(a: QSeries, p: int) -> QSeries:
    """Keep the exponents divisible by p and divide them by p."""
    precision = -(-a.precision // p)
    low = -(-a.valuation // p)
    if a.is_zero or low >= precision:
        return QSeries.zero(precision)
    out = [a.coeffs[p * e - a.valuation] for e in range(low, precision)]
    return QSeries(out, low, precision)


def dissect_parity(a: QSeries, parity: int) -> QSeries:
    """Keep the terms whose exponent is congruent to parity mod 2 (no reindexing)."""
    out = [c if (a.valuation + i) % 2 == parity else 0 for i, c in enumerate(a.coeffs)]
    return QSeries(out, a.valuation, a.precision)


# ─────────────────────── 2-adic helpers ───────────────────────

def two_adic_valuation(x: int) -> Union[int, float]:
    """Largest e with 2^e | x; math.inf for x == 0."""
    if x == 0:
        return math.inf
    return (x & -x).bit_length() - 1


def series_two_adic_valuation(a: QSeries) -> Union[int, float]:
    """Minimum 2-adic valuation over the known coefficients; math.inf if all vanish."""
    return min((two_adic_valuation(c) for _, c in a.terms()), default=math.inf)


# ─────────────────────── rendering ───────────────────────

def _format_terms(pairs: Sequence[Tuple[int, Scalar]]) -> str:
    parts = []
    for e, c in pairs:
        if e == 0:
            body = str(abs(c))
        else:
            power = "q" if e == 1 else f"q^{e}"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def render(a: QSeries) -> str:
    """Render as  q^v*(c0 + c1*q + ...) + O(q^P)."""
    if a.is_zero:
        return f"O(q^{a.precision})"
    inner = _format_terms([(i, c) for i, c in enumerate(a.coeffs) if c])
    return f"q^{a.valuation}*({inner}) + O(q^{a.precision})"
