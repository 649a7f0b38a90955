"""Scalar backends: exact rationals or floats.

A coordinate set commits to one backend. Exact values are
``fractions.Fraction``; float values are plain ``float`` compared with an
absolute tolerance.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

RATIONAL = "rational"
FLOAT = "float"
TOL = 1e-9


def to_scalar(value, backend: str = RATIONAL):
    """Convert ``value`` (number or "p/q" string) to the given backend."""
    if backend == RATIONAL:
        if isinstance(value, float):
            raise ValidationError("BAD_VALUE", f"float {value!r} given to the rational backend")
        try:
            return Fraction(value)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValidationError("BAD_VALUE", f"cannot read {value!r} as a rational") from None
    if backend == FLOAT:
        try:
            return float(Fraction(value)) if isinstance(value, str) else float(value)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ValidationError("BAD_VALUE", f"cannot read {value!r} as a float") from None
    raise ValidationError("BAD_BACKEND", f"unknown backend {backend!r}")


def serialize(value):
    """Rationals become "p/q" strings in lowest terms, floats stay numbers."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return float(value)


def sign(value, backend: str = RATIONAL, tol: float = TOL) -> int:
    if backend == FLOAT and abs(value) < tol:
        return 0
    return (value > 0) - (value < 0)


def is_close(x, y, tol: float = TOL) -> bool:
    return abs(x - y) <= tol
