"""Exact integer helpers.

Every bound in the engines is evaluated here with integers only. Expressions
of the form ``(a + b*sqrt(p)) / c`` are compared, floored and ceiled by
squaring, never through floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

# Rationals (the circle parameters) are plain Fractions: always in lowest
# terms with a positive denominator.
ExactRatio = Fraction


def isqrt(n: int) -> int:
    """Greatest integer r with r*r <= n (Newton iteration, integer only)."""
    if n < 0:
        raise ValueError("isqrt of negative number")
    if n < 2:
        return n
    # 2**ceil(bits/2) is always >= sqrt(n), so the iteration decreases monotonically
    x = 1 << ((n.bit_length() + 1) >> 1)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    # correction step
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def perfect_square_root(n: int) -> Optional[int]:
    """Return r with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def exact_div(a: int, b: int) -> Optional[int]:
    """a / b when b divides a, else None."""
    if b <= 0:
        raise ValueError("divisor must be positive")
    q, r = divmod(a, b)
    return q if r == 0 else None


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def cmp_affine_sqrt(a: int, b: int, c: int, p: int) -> int:
    """Sign of ``(a + b*sqrt(p)) / c`` as -1, 0 or 1.

    Computed by sign analysis plus at most one squared comparison.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    if p < 0:
        raise ValueError("p must be nonnegative")
    if b == 0 or p == 0:
        s = _sign(a)
    elif a >= 0 and b > 0:
        s = 1
    elif a <= 0 and b < 0:
        s = -1
    else:
        # opposite signs: compare a^2 with b^2 p
        s = _sign(a * a - b * b * p)
        if a < 0:
            s = -s
    return s * _sign(c)


def compare_affine_sqrt(a: int, b: int, c: int, p: int, k: int) -> int:
    """Order ``(a + b*sqrt(p)) / c`` against the integer ``k``."""
    # (a + b√p)/c - k = (a - k c + b√p)/c
    return cmp_affine_sqrt(a - k * c, b, c, p)


def floor_affine_sqrt(a: int, b: int, c: int, p: int) -> int:
    """floor((a + b*sqrt(p)) / c), exactly."""
    if c == 0:
        raise ValueError("c must be nonzero")
    if b >= 0:
        t = isqrt(b * b * p)
        exact = t * t == b * b * p
    else:
        r = isqrt(b * b * p)
        exact = r * r == b * b * p
        t = -r if exact else -r - 1
    # t = floor(b√p); numerator x = a + b√p has floor a + t
    lo = a + t
    if c < 0:
        c = -c
        lo = -lo if exact else -lo - 1
    return lo // c


def ceil_affine_sqrt(a: int, b: int, c: int, p: int) -> int:
    """ceil((a + b*sqrt(p)) / c), exactly."""
    return -floor_affine_sqrt(-a, -b, c, p)
