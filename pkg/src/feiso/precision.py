"""Working arithmetic and significant-digit comparison of real results."""

from __future__ import annotations

import math

import numpy as np

DTYPES = {"double": np.float64, "extended": np.longdouble}

# Values closer than this (relative, in units of 10**-digits) are treated as equal
# even when they sit on opposite sides of a rounding boundary.
STRADDLE_GUARD = 1e-3


def resolve_dtype(precision: str | type | np.dtype | None) -> np.dtype:
    if precision is None:
        return np.dtype(np.float64)
    if isinstance(precision, str):
        try:
            return np.dtype(DTYPES[precision])
        except KeyError:
            raise ValueError(f"unknown precision {precision!r}; use one of {sorted(DTYPES)}") from None
    dt = np.dtype(precision)
    if dt not in (np.dtype(np.float64), np.dtype(np.longdouble)):
        raise ValueError(f"unsupported working dtype {dt}")
    return dt


def round_sig(x: float, digits: int) -> float:
    """Round ``x`` to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = float(x)
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits - 1}e}")


def same_at_digits(a: float, b: float, digits: int) -> bool:
    """True when ``a`` and ``b`` agree after rounding to ``digits`` significant digits.

    Pairs separated only by floating noise (far below the last kept digit) also
    count as equal, so an exact tie cannot be split by a rounding boundary.
    """
    if round_sig(a, digits) == round_sig(b, digits):
        return True
    scale = max(abs(float(a)), abs(float(b)))
    return abs(float(a) - float(b)) <= STRADDLE_GUARD * 10.0 ** (-digits) * scale


def classify_pair(a: float, b: float, digits: int, suspect_digits: int | None = None) -> str:
    """Return ``"equal"``, ``"suspect"`` or ``"distinct"``.

    ``"suspect"`` marks numbers that differ at ``digits`` but agree at the
    coarser ``suspect_digits`` (default ``digits - 1``).
    """
    if same_at_digits(a, b, digits):
        return "equal"
    if suspect_digits is None:
        suspect_digits = digits - 1
    if suspect_digits >= 1 and same_at_digits(a, b, suspect_digits):
        return "suspect"
    return "distinct"
