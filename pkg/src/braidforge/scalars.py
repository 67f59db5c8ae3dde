"""Scalar arithmetic in two modes: exact rationals and float64.

Every object in braidforge carries a scalar mode, either ``"exact"``
(``fractions.Fraction``, the default) or ``"float"`` (binary64).  Exact
entries are canonical by construction: reduced, positive denominator,
and never stored when zero.  Float comparisons use an absolute
tolerance ``EPS_CMP`` = 1e-9.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: absolute comparison tolerance in float mode
EPS_CMP = 1e-9


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise SchemaError(f"unknown scalar mode {mode!r}; expected 'exact' or 'float'")
    return mode


def coerce(value, mode: str):
    """Coerce a Python number into the given mode's scalar type."""
    if mode == EXACT:
        if isinstance(value, float):
            raise SchemaError(f"float value {value!r} in exact mode")
        return Fraction(value)
    return float(value)


def zero(mode: str):
    return Fraction(0) if mode == EXACT else 0.0


def one(mode: str):
    return Fraction(1) if mode == EXACT else 1.0


def is_zero(value, mode: str) -> bool:
    """Whether a scalar counts as zero for storage purposes.

    Exact mode drops literal zeros only; float mode likewise (a tiny
    but nonzero float is information, dropping it is a comparison
    concern, not a storage one).
    """
    return value == 0


def eq(a, b, mode: str, eps: float = EPS_CMP) -> bool:
    if mode == EXACT:
        return a == b
    return abs(a - b) <= eps


def format_scalar(value, mode: str):
    """Render a scalar for JSON: "p/q" string in exact mode, number in float mode."""
    if mode == EXACT:
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"
    return float(value)


def parse_scalar(raw, mode: str):
    """Parse a JSON scalar: accepts "p/q", "p", or a number (ints only in exact mode)."""
    if mode == EXACT:
        if isinstance(raw, str):
            try:
                return Fraction(raw)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad exact scalar {raw!r}: {exc}") from None
        if isinstance(raw, int):
            return Fraction(raw)
        raise SchemaError(f"bad exact scalar {raw!r} (floats not allowed in exact mode)")
    if isinstance(raw, str):
        num, _, den = raw.partition("/")
        try:
            return float(num) / float(den) if den else float(num)
        except ValueError as exc:
            raise SchemaError(f"bad float scalar {raw!r}: {exc}") from None
    if isinstance(raw, (int, float)):
        return float(raw)
    raise SchemaError(f"bad float scalar {raw!r}")
