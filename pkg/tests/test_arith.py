import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endsin1.arith import (
    ceil_affine_sqrt,
    cmp_affine_sqrt,
    exact_div,
    floor_affine_sqrt,
    gcd,
    isqrt,
    perfect_square_root,
)


def sandwich_sign(a, b, c, p):
    """Sign of (a + b sqrt p)/c from nested rational brackets of sqrt p."""
    r = math.isqrt(p)
    if r * r == p or b == 0:
        v = a + b * r
        return ((v > 0) - (v < 0)) * ((c > 0) - (c < 0))
    k = 8
    while True:
        s = math.isqrt(p << (2 * k))
        lo, hi = Fraction(s, 1 << k), Fraction(s + 1, 1 << k)
        ends = sorted([a + b * lo, a + b * hi])
        if ends[0] > 0 or ends[1] < 0:
            sign = 1 if ends[0] > 0 else -1
            return sign * ((c > 0) - (c < 0))
        k *= 2


@pytest.mark.parametrize("n, r", [(0, 0), (1, 1), (900071, 948), (1611219600, 40140)])
def test_isqrt_examples(n, r):
    assert isqrt(n) == r


def test_isqrt_defining_inequality_exhaustive():
    for n in range(10 ** 6 + 1):
        r = isqrt(n)
        assert r * r <= n < (r + 1) * (r + 1)


@given(st.integers(min_value=0, max_value=2 ** 512))
def test_isqrt_big(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


def test_perfect_square_root_examples():
    assert perfect_square_root(0) == 0
    assert perfect_square_root(1611219600) == 40140
    # 235^2 = 55225 < 55685 < 55696 = 236^2
    assert perfect_square_root(55685) is None
    assert perfect_square_root(-4) is None


@given(st.integers(min_value=0, max_value=2 ** 256))
def test_perfect_square_root_of_square(n):
    assert perfect_square_root(n * n) == n
    if n > 0:
        assert perfect_square_root(n * n + 1) is None


def test_exact_div_examples():
    assert exact_div(900060, 30) == 30002
    assert exact_div(10, 3) is None
    assert exact_div(0, 5) == 0
    with pytest.raises(ValueError):
        exact_div(1, 0)


@given(st.integers(min_value=0, max_value=2 ** 200), st.integers(min_value=1, max_value=2 ** 100))
def test_exact_div_roundtrip(a, b):
    assert exact_div(a * b, b) == a


def test_gcd_examples():
    assert gcd(84761, 89999) == 1
    assert gcd(6, 4) == 2
    assert gcd(0, 7) == 7


def test_cmp_affine_sqrt_window_endpoints():
    p, D = 900071, 10000
    # lam <= (D+1)/10 + (9 - sqrt p)/50  <=>  (5(D+1) + 9 - 50 lam - sqrt p)/50 >= 0
    assert cmp_affine_sqrt(5 * (D + 1) + 9 - 50 * 981, -1, 50, p) >= 0
    assert cmp_affine_sqrt(5 * (D + 1) + 9 - 50 * 982, -1, 50, p) < 0
    # sigma >= (sqrt p - 9)/5
    assert cmp_affine_sqrt(5 * 188 + 9, -1, 5, p) >= 0
    assert cmp_affine_sqrt(5 * 187 + 9, -1, 5, p) < 0


def test_cmp_affine_sqrt_equality_on_square():
    assert cmp_affine_sqrt(-11, 1, 3, 121) == 0
    assert cmp_affine_sqrt(0, 0, -5, 7) == 0


def test_cmp_affine_sqrt_rejects_zero_denominator():
    with pytest.raises(ValueError):
        cmp_affine_sqrt(1, 1, 0, 2)


def test_cmp_affine_sqrt_agrees_with_sandwich():
    rng = random.Random(20261016)
    for _ in range(10 ** 4):
        p = rng.choice([rng.randrange(0, 10 ** 6), rng.randrange(0, 2 ** 80), rng.randrange(0, 100) ** 2])
        b = rng.randrange(-50, 51)
        r = math.isqrt(p)
        # put a near -b sqrt p so the squared comparison matters
        a = -b * r + rng.randrange(-3, 4)
        c = rng.choice([-7, -1, 1, 5, 50])
        assert cmp_affine_sqrt(a, b, c, p) == sandwich_sign(a, b, c, p), (a, b, c, p)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-60, 60),
       st.integers(-100, 100).filter(bool), st.integers(0, 10 ** 9))
def test_floor_ceil_affine_sqrt(a, b, c, p):
    f = floor_affine_sqrt(a, b, c, p)
    assert cmp_affine_sqrt(a - f * c, b, c, p) >= 0
    assert cmp_affine_sqrt(a - (f + 1) * c, b, c, p) < 0
    g = ceil_affine_sqrt(a, b, c, p)
    assert cmp_affine_sqrt(a - g * c, b, c, p) <= 0
    assert cmp_affine_sqrt(a - (g - 1) * c, b, c, p) > 0
