"""
Exception hierarchy.

Every error raised on purpose by the library derives from TwoDivError, so the
CLI can separate "the computation refused" from genuine bugs.
"""

from __future__ import annotations


class TwoDivError(Exception):
    """Base class for all library errors."""


# ─────────────────────── q-series ───────────────────────

class PrecisionExceeded(TwoDivError):
    """A coefficient at or beyond the known precision was requested."""

    def __init__(self, exponent: int, precision: int):
        super().__init__(f"coefficient of q^{exponent} requested, series known only to O(q^{precision})")
        self.exponent = exponent
        self.precision = precision


class NonUnitLeadingCoefficient(TwoDivError):
    """Inversion needs a leading coefficient of +1 or -1."""


class ExactDivisionFailure(TwoDivError):
    """A coefficient was not divisible by the requested integer."""


# ─────────────────────── forms ───────────────────────

class IndexBelowRange(TwoDivError):
    """Canonical basis index m is below -ell for the weight."""


class UnsupportedWeight(TwoDivError):
    """The weight is outside the domain of the requested construction."""


class NotInSpan(TwoDivError):
    """A series does not lie in the span of the given triangular basis."""


# ─────────────────────── dissection ───────────────────────

class OddQExponent(TwoDivError):
    """Dissection met an odd power of Q."""


class OddExponentOfQ(TwoDivError):
    """Halving met an odd power of q."""


class NotHalvable(TwoDivError):
    """Halving met a generator with no preimage under q^2 -> q (Q or phi(q))."""


class ExpressionSyntaxError(TwoDivError):
    """The expression string does not follow the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ─────────────────────── harness ───────────────────────

class NoClaim(TwoDivError):
    """No congruence is claimed for the requested cell."""


class UnknownLemma(TwoDivError):
    """The name is not in the verification registry."""


class ConfigError(TwoDivError):
    """Configuration file or environment override is invalid."""
