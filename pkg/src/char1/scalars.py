"""Exact rational scalars and their wire format.

All algebraic operations in the library run on arbitrary-precision
rationals; floats appear only in the explicitly flagged euclidean mode.
Rationals cross the CLI boundary as "p/q" strings (plain "p" when the
denominator is 1), which is exactly `str(Fraction)`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError

Rat = Fraction


def rat(value, den=None) -> Fraction:
    """Coerce ints, strings like "3/4", floats-free input to an exact rational."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(value)


def parse_rat(text) -> Fraction:
    """Parse the "p/q" wire form."""
    if not isinstance(text, str):
        raise SchemaError(f"rational must be a string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {text!r}: {exc}") from None


def fmt_rat(q) -> str:
    """Format a rational for JSON output."""
    return str(Fraction(q))
