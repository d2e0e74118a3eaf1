"""Exact integer/rational arithmetic helpers (no floating-point rounding)."""
from __future__ import annotations

from fractions import Fraction

from .errors import InvalidParamsError


def as_fraction(x, max_denominator: int = 10 ** 6) -> Fraction:
    """Interpret a user-facing numeric parameter as an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(max_denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidParamsError(f"cannot interpret {x!r} as a rational")


def floor_kth_root(n: int, k: int) -> int:
    """Largest r with r**k <= n, for n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise InvalidParamsError("floor_kth_root needs n >= 0, k >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def ceil_pow(n: int, exponent: Fraction) -> int:
    """Exact ceil(n ** exponent) for n >= 1 and a non-negative rational exponent."""
    if n < 1:
        raise InvalidParamsError("ceil_pow needs n >= 1")
    if exponent < 0:
        raise InvalidParamsError("ceil_pow needs a non-negative exponent")
    p, q = exponent.numerator, exponent.denominator
    if p == 0:
        return 1
    target = n ** p
    r = floor_kth_root(target, q)
    return r if r ** q == target else r + 1


def ceil_mul_pow(factor: int, n: int, exponent: Fraction) -> int:
    """Exact ceil(factor * n ** exponent) for factor >= 1, n >= 1."""
    if factor < 1 or n < 1:
        raise InvalidParamsError("ceil_mul_pow needs factor >= 1 and n >= 1")
    if exponent < 0:
        raise InvalidParamsError("ceil_mul_pow needs a non-negative exponent")
    p, q = exponent.numerator, exponent.denominator
    target = (factor ** q) * (n ** p)
    r = floor_kth_root(target, q)
    return r if r ** q == target else r + 1
