#!/usr/bin/env python
"""
Utils: exact rational codec ("p/q" strings) and token encoding helpers
"""
# ========================================================
# IMPORTS
# ========================================================
import re
from fractions import Fraction
from numbers import Rational

# ========================================================
# CONSTANTS
# ========================================================

# Accepted rational literals:
#   integers         3   -2
#   fractions        1/3  -7/12
#   finite decimals  0.25  -0.1   (converted exactly, never through float)
_RATIONAL_RE = re.compile(
    r"^\s*[+-]?"
    r"(?:\d+\s*/\s*\d+"        # p/q
    r"|\d+(?:\.\d+)?"          # integer or decimal
    r"|\.\d+)\s*$"             # .5
)


# ========================================================
# FUNCTIONS
# ========================================================
def is_rational_literal(value: str) -> bool:
    """Return True if *value* is a literal accepted by :func:`parse_rational`."""
    return bool(_RATIONAL_RE.match(value))


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an integer, a finite decimal or a Rational into a Fraction.

    Floats are rejected: a binary float is never an exact rational input.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str) and is_rational_literal(value):
        text = value.replace(" ", "")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(text)
    raise ValueError(f"not a rational literal: {value!r}")


def format_rational(value) -> str:
    """Serialize a rational as ``"p/q"`` (denominator always present)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def encode_token(token):
    """JSON-friendly form of an opaque carrier token.

    Strings and integers stay as they are, rationals become ``"p/q"``,
    tuples become lists and frozensets become sorted lists.
    """
    if isinstance(token, bool) or token is None:
        return token
    if isinstance(token, (str, int)):
        return token
    if isinstance(token, Rational):
        return format_rational(token)
    if isinstance(token, tuple):
        return [encode_token(t) for t in token]
    if isinstance(token, frozenset):
        return sorted((encode_token(t) for t in token), key=repr)
    raise TypeError(f"cannot encode token {token!r}")


def token_lookup(tokens) -> dict:
    """Map ``repr(encode_token(t))`` back to ``t`` for a finite token set."""
    return {repr(encode_token(t)): t for t in tokens}
