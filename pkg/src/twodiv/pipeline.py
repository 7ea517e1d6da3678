"""
Index-four two-dissection pipeline.

For each of the six weights k the claim a_k(2m, 4) = 0 (mod 2^(rho+gamma))
is, by duality, a statement about a_{2-k}(4, 4n+2).  The pipeline writes
f_{2-k,4} = Delta^ell E_{k'} F(j) in Kolberg generators, reduces it mod
2^(rho+gamma+1), takes the even part, substitutes q^2 -> q and takes the odd
part.  What is left must vanish mod 2^(rho+gamma).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List

from .dissection import (
    KolbergExpr,
    dissect,
    halve,
    lift_phi2,
    normalize_phi1,
    reduce_mod_pow2,
    to_qseries,
)
from .errors import UnsupportedWeight
from .expression import parse_expression, render
from .level1 import (
    E_WEIGHT_POWERS,
    a_coefficient,
    canonical_basis,
    delta_power,
    e_weight,
    j_invariant,
    weight_decomposition,
    weight_profile,
)
from .level2 import decompose_in_basis
from .models import SIX_WEIGHTS, PipelineTranscript
from .qseries import mul, pow_, series_two_adic_valuation, sub, truncate, two_adic_valuation

logger = logging.getLogger(__name__)

KOLBERG_FORMS: Dict[str, str] = {
    "E4": "phi2^8*(Q^-16 + 256*q*Q^8)",
    "E6": (
        "phi2^12*Q^-24 - 480*q*phi2^12 - 16896*q^2*Q^8*phi2^4*phi4^8"
        " + 8192*q^3*phi2^-12*phi4^24"
    ),
    "Delta": "q*phi1^24",
    "j": "q^-1*Q^-24 + 768 + 196608*q*Q^24 + 16777216*q^2*Q^48",
}

# odd part of the halved even dissection for k = 16, mod 2^12
EXPECTED_ODD_PARTS: Dict[int, str] = {16: "2048*q*R^40*phi2^-28"}

POLE_ORDER = 4
NUMERIC_PRECISION = 40
DUAL_SAMPLES = 8


@lru_cache(maxsize=None)
def kolberg_form(name: str) -> KolbergExpr:
    return parse_expression(KOLBERG_FORMS[name])


def _require_six(k: int) -> None:
    if k not in SIX_WEIGHTS:
        raise UnsupportedWeight(f"the index-four pipeline runs for {SIX_WEIGHTS}, not {k}")


def solve_j_polynomial(k: int, precision: int = 20) -> List[int]:
    """
    Monic coefficients (highest degree first) of F with
    f_{2-k,4} = Delta^ell E_{k'} F(j), where 2-k = 12 ell + k'.
    """
    _require_six(k)
    dual = weight_decomposition(2 - k)
    degree = POLE_ORDER + dual.ell
    pad = precision + degree + abs(dual.ell) + 2
    prefix = mul(delta_power(dual.ell, pad), e_weight(dual.kprime, pad))
    j = j_invariant(pad)
    basis = [truncate(mul(prefix, pow_(j, d)), precision) for d in range(degree, -1, -1)]
    return decompose_in_basis(canonical_basis(2 - k, POLE_ORDER, precision), basis)


def kolberg_closed_form(k: int) -> KolbergExpr:
    """f_{2-k,4} in Kolberg generators, phi(q) already rewritten."""
    dual = weight_decomposition(2 - k)
    coefficients = solve_j_polynomial(k)
    j = kolberg_form("j")
    poly = KolbergExpr()
    for c in coefficients:
        poly = poly * j + c
    a, b = E_WEIGHT_POWERS[dual.kprime]
    prefix = kolberg_form("Delta") ** dual.ell * kolberg_form("E4") ** a * kolberg_form("E6") ** b
    return normalize_phi1(prefix * poly)


def run_index_four_pipeline(k: int) -> PipelineTranscript:
    _require_six(k)
    profile = weight_profile(k)
    n = profile.rho + profile.gamma + 1
    dual = 2 - k

    closed = kolberg_closed_form(k)
    reduced = reduce_mod_pow2(closed, n)
    even = reduce_mod_pow2(lift_phi2(dissect(reduced, "even")), n)
    halved = halve(even)
    odd = reduce_mod_pow2(dissect(halved, "odd"), n)
    residue = reduce_mod_pow2(odd, n - 1)
    logger.debug(
        "k=%d pipeline sizes: closed=%d reduced=%d even=%d odd=%d residue=%d",
        k, len(closed), len(reduced), len(even), len(odd), len(residue),
    )

    numeric_zero = series_two_adic_valuation(to_qseries(odd, NUMERIC_PRECISION)) >= n - 1
    closed_form_matches = sub(
        to_qseries(closed, NUMERIC_PRECISION), canonical_basis(dual, POLE_ORDER, NUMERIC_PRECISION)
    ).is_zero
    dual_coefficients_ok = all(
        two_adic_valuation(a_coefficient(dual, POLE_ORDER, 4 * i + 2)) >= n - 1 for i in range(DUAL_SAMPLES)
    )

    return PipelineTranscript(
        k=k,
        dual_weight=dual,
        modulus_exponent=n,
        j_polynomial=solve_j_polynomial(k),
        reduced_form=render(reduced),
        even_part=render(even),
        halved=render(halved),
        odd_part=render(odd),
        residue=render(residue),
        symbolic_zero=residue.is_zero,
        numeric_zero=numeric_zero,
        closed_form_matches=closed_form_matches,
        dual_coefficients_ok=dual_coefficients_ok,
        expected_odd_part=EXPECTED_ODD_PARTS.get(k),
    )
