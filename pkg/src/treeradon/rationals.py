"""Parsing and formatting of exact rationals for the wire formats.

All file formats carry rationals as decimal-free strings ("p/q" or "p");
edge lengths may additionally be "inf" for rays. Floats are rejected
everywhere: the library guarantees exact arithmetic end to end.
"""

from __future__ import annotations

from fractions import Fraction

_INF_TOKENS = {"inf", "+inf", "infinity"}


def parse_rational(value) -> Fraction:
    """Convert ``value`` (Fraction, int, or 'p/q' string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"decimal notation is not allowed: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Canonical decimal-free string: 'p/q', or 'p' when the denominator is 1."""
    return str(value)


def parse_length(value) -> Fraction | None:
    """Parse an edge length; returns None for the symbolic infinite length."""
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in _INF_TOKENS:
        return None
    return parse_rational(value)


def format_length(value: Fraction | None) -> str:
    return "inf" if value is None else format_rational(value)
