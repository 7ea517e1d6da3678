"""
Text form of Kolberg expressions.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' signedInt)?
    atom   := unsignedInt | q | phi1 | phi2 | phi4 | phi8 | Q | R | S | T | '(' expr ')'

Division is only by a monomial, and must be exact.  Negative powers are only
allowed on a monomial with coefficient +1 or -1.  render() writes the same
grammar back, one monomial per term, sorted by (q, Q, R, S, T, phi2, phi4,
phi8, phi1) exponents.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple, Optional

from .dissection import Exponents, KolbergExpr
from .errors import ExpressionSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|(phi[1248]|[qQRST])|([-+*/^()]))")


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None:
            offset = len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[position + offset]!r}", position + offset)
        number, name, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token("int", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        else:
            tokens.append(Token("op", op, start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    # ── token helpers ──

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def _expect_op(self, op: str) -> Token:
        if not self._at_op(op):
            raise ExpressionSyntaxError(f"expected {op!r}, found {self.current.text or 'end of input'!r}", self.current.position)
        return self._advance()

    # ── grammar ──

    def parse(self) -> KolbergExpr:
        value = self._expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {self.current.text!r}", self.current.position)
        return value

    def _expr(self) -> KolbergExpr:
        negate = False
        if self._at_op("+", "-"):
            negate = self._advance().text == "-"
        value = self._term()
        if negate:
            value = -value
        while self._at_op("+", "-"):
            op = self._advance().text
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> KolbergExpr:
        value = self._factor()
        while self._at_op("*", "/"):
            op = self._advance()
            rhs = self._factor()
            value = value * rhs if op.text == "*" else _divide(value, rhs, op.position)
        return value

    def _factor(self) -> KolbergExpr:
        base = self._atom()
        if self._at_op("^"):
            caret = self._advance()
            exponent = self._signed_int()
            base = _power(base, exponent, caret.position)
        return base

    def _signed_int(self) -> int:
        sign = 1
        if self._at_op("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
        token = self.current
        if token.kind != "int":
            raise ExpressionSyntaxError("expected an integer exponent", token.position)
        self._advance()
        return sign * int(token.text)

    def _atom(self) -> KolbergExpr:
        token = self.current
        if token.kind == "int":
            self._advance()
            return KolbergExpr.constant(int(token.text))
        if token.kind == "name":
            self._advance()
            return KolbergExpr.generator(token.text)
        if self._at_op("("):
            self._advance()
            value = self._expr()
            self._expect_op(")")
            return value
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"expected a number, generator or '(' but found {found!r}", token.position)


def _single_monomial(expr: KolbergExpr) -> Optional[tuple]:
    terms = list(expr.terms.items())
    return terms[0] if len(terms) == 1 else None


def _divide(value: KolbergExpr, divisor: KolbergExpr, position: int) -> KolbergExpr:
    single = _single_monomial(divisor)
    if single is None:
        raise ExpressionSyntaxError("division is only defined by a single monomial", position)
    e, c = single
    quotient = {}
    for exps, x in value.terms.items():
        if x % c:
            raise ExpressionSyntaxError(f"coefficient {x} is not divisible by {c}", position)
        quotient[exps.plus(e.scaled(-1))] = x // c
    return KolbergExpr(quotient)


def _power(base: KolbergExpr, exponent: int, position: int) -> KolbergExpr:
    try:
        return base**exponent
    except ValueError as exc:
        raise ExpressionSyntaxError(str(exc), position) from None


def parse_expression(text: str) -> KolbergExpr:
    return _Parser(text).parse()


# ─────────────────────── rendering ───────────────────────

_RENDER_ORDER = (("q", "eq"), ("Q", "eQ"), ("R", "eR"), ("S", "eS"), ("T", "eT"),
                 ("phi2", "e2"), ("phi4", "e4"), ("phi8", "e8"), ("phi1", "e1"))


def _factors(e: Exponents) -> List[str]:
    out = []
    for name, field in _RENDER_ORDER:
        power = getattr(e, field)
        if power == 1:
            out.append(name)
        elif power:
            out.append(f"{name}^{power}")
    return out


def render(expr: KolbergExpr) -> str:
    parts: List[str] = []
    for e, c in expr.terms.items():
        factors = _factors(e)
        magnitude = abs(c)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"
