"""
Hecke operators and the identities they satisfy on q-expansions.

    f | U_p = sum a(pn) q^n
    f | V_p = f(pz)
    f | T_p = f | U_p + p^(k-1) f | V_p

For k <= 0 the scalar p^(k-1) is a fractions.Fraction and so are the
resulting coefficients; every identity is still checked exactly.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Union

from sympy import isprime

from .level1 import a_coefficient, canonical_basis, delta_k, tau_k
from .models import DivIndicator
from .qseries import QSeries, add, scale, sub, truncate, u_op, v_op

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _scalar_power(p: int, e: int) -> Scalar:
    return p**e if e >= 0 else Fraction(1, p**-e)


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"Hecke operators are indexed by primes, got {p}")


def hecke_t(f: QSeries, p: int, k: int) -> QSeries:
    _require_prime(p)
    return add(u_op(f, p), scale(v_op(f, p), _scalar_power(p, k - 1)))


# ─────────────────────── coefficient relations ───────────────────────

def _a_over(k: int, m: int, n: int, dm: int = 1, dn: int = 1) -> int:
    """a_k(m/dm, n/dn), zero when either index is not an integer."""
    if m % dm or n % dn:
        return 0
    return a_coefficient(k, m // dm, n // dn)


def hecke_relation_defect(k: int, m: int, n: int, p: int = 2) -> int:
    """
    lhs - rhs of
        a(m/p, n) + a(m, p) tau(n) + p^(k-1) a(mp, n) = a(m, np) + p^(k-1) a(m, n/p)
    """
    _require_prime(p)
    w = p ** (k - 1)
    lhs = _a_over(k, m, n, dm=p) + a_coefficient(k, m, p) * tau_k(k, n) + w * a_coefficient(k, m * p, n)
    rhs = a_coefficient(k, m, n * p) + w * _a_over(k, m, n, dn=p)
    return lhs - rhs


def check_hecke_relation(k: int, m: int, n: int, p: int = 2) -> bool:
    return hecke_relation_defect(k, m, n, p) == 0


def hecke_squared_relation_defect(k: int, m: int, n: int, p: int = 2) -> int:
    """lhs - rhs of the relation obtained from applying T_p twice."""
    _require_prime(p)
    w = p ** (k - 1)
    pp = p * p
    lhs = (
        w * w * a_coefficient(k, m * pp, n)
        + (1 + DivIndicator.of(m, p).value) * w * a_coefficient(k, m, n)
        + _a_over(k, m, n, dm=pp)
        + a_coefficient(k, m, pp) * tau_k(k, n)
    )
    rhs = (
        w * w * _a_over(k, m, n, dn=pp)
        + (1 + DivIndicator.of(n, p).value) * w * a_coefficient(k, m, n)
        + a_coefficient(k, m, n * pp)
    )
    return lhs - rhs


def check_hecke_squared_relation(k: int, m: int, n: int, p: int = 2) -> bool:
    return hecke_squared_relation_defect(k, m, n, p) == 0


# ─────────────────────── form-level identities ───────────────────────

def hecke_form_difference(k: int, m: int, p: int, precision: int) -> QSeries:
    """
    f_{k,m}|T_p - (p^(k-1) f_{k,mp} + delta_{m,p} f_{k,m/p} + a_k(m,p) Delta_k).

    Zero to the returned precision when the identity holds.
    """
    _require_prime(p)
    f = canonical_basis(k, m, p * precision)
    lhs = truncate(hecke_t(f, p, k), precision)
    rhs = scale(canonical_basis(k, m * p, precision), _scalar_power(p, k - 1))
    if DivIndicator.of(m, p).value:
        rhs = add(rhs, canonical_basis(k, m // p, precision))
    c = a_coefficient(k, m, p)
    if c:
        rhs = add(rhs, scale(delta_k(k, precision), c))
    return sub(lhs, rhs)


def check_hecke_form_identity(k: int, m: int, p: int, precision: int) -> bool:
    return hecke_form_difference(k, m, p, precision).is_zero


def up_identity_sides(f: QSeries, p: int, k: int) -> tuple[QSeries, QSeries]:
    """
    Both sides of
        -f + p (f|U_p|V_p) + p^k (f|V_p|V_p) = p (f|T_p|V_p) - f
    """
    fp = u_op(f, p)
    lhs = add(add(-f, scale(v_op(fp, p), p)), scale(v_op(v_op(f, p), p), _scalar_power(p, k)))
    rhs = sub(scale(v_op(hecke_t(f, p, k), p), p), f)
    return lhs, rhs


def check_up_identity(f: QSeries, p: int, k: int) -> bool:
    lhs, rhs = up_identity_sides(f, p, k)
    return sub(lhs, rhs).is_zero


def up_squared_identity_sides(f: QSeries, p: int, k: int) -> tuple[QSeries, QSeries]:
    """
    Both sides of
        -f_p + p f_{p^2}(pz) - p^(k-1) f(pz) + p^k f_p(p^2 z) + p^(2k-1) f(p^3 z)
            = p (f|T_p|T_p|V_p) - f|T_p - p^k (f|V_p)

    with f_p = f|U_p and f_{p^2} = f|U_p|U_p.
    """
    fp = u_op(f, p)
    fpp = u_op(fp, p)
    vf = v_op(f, p)
    terms = [
        -fp,
        scale(v_op(fpp, p), p),
        scale(vf, -_scalar_power(p, k - 1)),
        scale(v_op(v_op(fp, p), p), _scalar_power(p, k)),
        scale(v_op(v_op(vf, p), p), _scalar_power(p, 2 * k - 1)),
    ]
    lhs = terms[0]
    for t in terms[1:]:
        lhs = add(lhs, t)
    tf = hecke_t(f, p, k)
    rhs = sub(sub(scale(v_op(hecke_t(tf, p, k), p), p), tf), scale(vf, _scalar_power(p, k)))
    return lhs, rhs


def check_up_squared_identity(f: QSeries, p: int, k: int) -> bool:
    lhs, rhs = up_squared_identity_sides(f, p, k)
    return sub(lhs, rhs).is_zero


# ─────────────────────── tau_k recursion ───────────────────────

def tau_recursion_defect(k: int, b: int, n: int, p: int = 2) -> int:
    """tau(p^(b+1) n) - tau(p) tau(p^b n) + p^(k-1) tau(p^(b-1) n) for p not dividing n, b >= 1."""
    _require_prime(p)
    if b < 1 or n % p == 0:
        raise ValueError(f"need b >= 1 and {p} not dividing n, got b={b}, n={n}")
    return tau_k(k, p ** (b + 1) * n) - tau_k(k, p) * tau_k(k, p**b * n) + p ** (k - 1) * tau_k(k, p ** (b - 1) * n)
