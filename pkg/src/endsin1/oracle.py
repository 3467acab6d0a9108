"""Trial-division ground truth, at desk scale only."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .arith import isqrt
from .residues import DigitClass, FactorWitness

DEFAULT_GUARD = 10 ** 12
WILSON_GUARD = 5000


class GuardError(ValueError):
    """Input is above the oracle's desk-scale bound."""


def oracle_guard() -> int:
    """Current bound; ``ENDSIN1_ORACLE_GUARD`` overrides the default."""
    raw = os.environ.get("ENDSIN1_ORACLE_GUARD")
    if raw is None or not raw.strip():
        return DEFAULT_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise GuardError(f"ENDSIN1_ORACLE_GUARD is not an integer: {raw!r}") from None
    if value < 2:
        raise GuardError("ENDSIN1_ORACLE_GUARD must be at least 2")
    return value


@dataclass(frozen=True)
class Factorization:
    p: int
    prime_powers: tuple[tuple[int, int], ...]
    divisions: int = field(default=0, compare=False)

    @property
    def is_prime(self) -> bool:
        return len(self.prime_powers) == 1 and self.prime_powers[0][1] == 1

    def value(self) -> int:
        out = 1
        for q, e in self.prime_powers:
            out *= q ** e
        return out


def _trial_divisors():
    yield 2
    yield 3
    d = 5
    while True:
        yield d
        yield d + 2
        d += 6


def trial_factor(p: int) -> Factorization:
    """Complete factorization by ascending trial division up to isqrt."""
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    guard = oracle_guard()
    if p > guard:
        raise GuardError(f"{p} exceeds the oracle guard {guard}")
    n, powers, divisions = p, [], 0
    for d in _trial_divisors():
        if d * d > n:
            break
        divisions += 1
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            powers.append((d, e))
    if n > 1:
        powers.append((n, 1))
    return Factorization(p, tuple(powers), divisions)


def is_prime(n: int) -> bool:
    return n >= 2 and trial_factor(n).is_prime


def wilson_is_prime(n: int, guard: int = WILSON_GUARD) -> bool:
    """n is prime iff (n-1)! + 1 = 0 (mod n). Not practical beyond tiny n."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if n > guard:
        raise GuardError(f"{n} exceeds the Wilson guard {guard}")
    acc = 1
    for k in range(2, n):
        acc = acc * k % n
    return (acc + 1) % n == 0


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def trial_division_count(p: int) -> int:
    """Divisions needed to certify p by primes up to sqrt(p)."""
    return len(primes_up_to(isqrt(p)))


def divisors(f: Factorization) -> list[int]:
    divs = [1]
    for q, e in f.prime_powers:
        divs = [d * q ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


_CLASS_OF = {
    (1, 1): DigitClass.ONE_ONE,
    (3, 7): DigitClass.THREE_SEVEN,
    (7, 3): DigitClass.THREE_SEVEN,
    (9, 9): DigitClass.NINE_NINE,
}


def digit_class_pairs(p: int) -> list[tuple[int, int, DigitClass]]:
    """Every unordered divisor pair d*e = p as (A, B, class).

    Ordered by the smaller divisor. (7,3) pairs are stored as (3,7) with A
    indexing the factor ending in 3.
    """
    if p % 10 != 1:
        raise ValueError(f"p must end in 1, got {p}")
    out = []
    for d in divisors(trial_factor(p)):
        e = p // d
        if d > e:
            break
        dc = _CLASS_OF[(d % 10, e % 10)]
        if d % 10 == 7:
            d, e = e, d
        out.append((d // 10, e // 10, dc))
    return out


def verify_witness(p: int, w: FactorWitness) -> bool:
    return w.product == p
