"""Scalar plumbing for the two precision modes.

Computations run on native floats up to ``FLOAT_DIGITS`` decimal digits and
switch to mpmath beyond that.  Kernels elsewhere are written generically, so
the scalar type of the inputs decides the arithmetic; callers only have to
convert inputs with :func:`to_scalar` and enter :func:`working_precision`.
"""

from __future__ import annotations

import math
from contextlib import nullcontext

import mpmath as mp

# Native doubles hold ~15.95 decimal digits; beyond this we need mpmath.
FLOAT_DIGITS = 17
# Extra mpmath digits so requested precision survives roundoff.
GUARD_DIGITS = 5

Scalar = float | mp.mpf


def uses_mpmath(digits: int) -> bool:
    return digits > FLOAT_DIGITS


def working_precision(digits: int):
    """Context manager selecting the mpmath working precision when needed."""
    if uses_mpmath(digits):
        return mp.workdps(digits + GUARD_DIGITS)
    return nullcontext()


def to_scalar(value, digits: int = 16) -> Scalar:
    """Convert a number (or decimal string) to the working scalar type."""
    if uses_mpmath(digits):
        return mp.mpf(value)
    return float(value)


def sqrt(x: Scalar) -> Scalar:
    if isinstance(x, mp.mpf):
        return mp.sqrt(x)
    return math.sqrt(x)


def nearest_int(x: Scalar) -> int:
    if isinstance(x, mp.mpf):
        return int(mp.nint(x))
    return round(x)


def is_finite(x) -> bool:
    if isinstance(x, mp.mpf):
        return mp.isfinite(x)
    return math.isfinite(float(x))


def as_float(x) -> float:
    return float(x)
