"""Exact-arithmetic helpers.

Size thresholds of the form ``count <= eps * scale`` show up all over the
extender definitions, and the boundary cases (count exactly equal to the
threshold) are meaningful.  These helpers compare through ``Fraction`` so a
float epsilon never flips a boundary verdict, and route near-boundary real
powers through mpmath.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

_MP_DPS = 50


def as_fraction(x: float | Fraction | int) -> Fraction:
    """Exact rational value of ``x`` (floats convert exactly, not via repr)."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def exact_le(count: int, eps: float | Fraction, scale: int) -> bool:
    """``count <= eps * scale`` with exact rational comparison."""
    f = as_fraction(eps)
    return count * f.denominator <= f.numerator * scale


def floor_scaled(eps: float | Fraction, scale: int) -> int:
    """Largest integer ``<= eps * scale``, exactly."""
    f = as_fraction(eps)
    return (f.numerator * scale) // f.denominator


def pow_floor(base: int, exponent: float) -> int:
    """floor(base ** exponent) for base >= 1, exponent >= 0.

    A plain float power is used unless the result sits within 1e-9 of an
    integer, in which case the power is recomputed at 50 decimal digits.
    """
    if base < 1:
        raise ValueError("base must be >= 1")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    value = float(base) ** exponent
    if value > 1e15 or abs(value - round(value)) < 1e-9:
        with mpmath.workdps(_MP_DPS):
            value_mp = mpmath.power(base, exponent)
            return int(mpmath.floor(value_mp))
    return math.floor(value)


def mp_power(base: int, exponent: float) -> mpmath.mpf:
    """base ** exponent at 50 decimal digits."""
    with mpmath.workdps(_MP_DPS):
        return mpmath.power(base, exponent)
