"""Input classification, digit classes and the shifted companion numbers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .arith import exact_div


class InputError(ValueError):
    """The number is outside what the engines accept."""


class DigitClass(enum.Enum):
    """Last digits of a factor pair of a number ending in 1."""

    ONE_ONE = (1, 1)
    THREE_SEVEN = (3, 7)
    NINE_NINE = (9, 9)

    @property
    def d1(self) -> int:
        return self.value[0]

    @property
    def d2(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return f"{self.d1}{self.d2}"

    @classmethod
    def from_label(cls, label: str) -> "DigitClass":
        for dc in cls:
            if dc.label == label:
                return dc
        raise ValueError(f"unknown digit class {label!r}")

    def __str__(self) -> str:
        return f"({self.d1},{self.d2})"


@dataclass(frozen=True)
class FactorWitness:
    """A pair (A, B) with (10A + d1)(10B + d2) = p.

    For class (3,7) A indexes the factor ending in 3; for the symmetric
    classes A <= B.
    """

    A: int
    B: int
    digit_class: DigitClass
    method: str = ""
    parameter: Optional[int] = None

    @property
    def factors(self) -> tuple[int, int]:
        return 10 * self.A + self.digit_class.d1, 10 * self.B + self.digit_class.d2

    @property
    def product(self) -> int:
        f, g = self.factors
        return f * g

    @property
    def key(self) -> tuple[int, int, DigitClass]:
        return self.A, self.B, self.digit_class


def make_witness(p: int, A: int, B: int, dc: DigitClass, method: str,
                 parameter: Optional[int] = None) -> FactorWitness:
    """Build a witness, normalizing order and asserting it re-multiplies to p."""
    if dc is not DigitClass.THREE_SEVEN and A > B:
        A, B = B, A
    w = FactorWitness(A, B, dc, method, parameter)
    if A < 0 or B < 0 or w.product != p:
        raise AssertionError(f"unsound witness {w} for p={p}")
    return w


@dataclass(frozen=True)
class ResidueProfile:
    p: int
    last_digit: int
    mod3: int
    p_plus_10_mod9: int
    mod11: int
    trivial_factor: Optional[int]


@dataclass(frozen=True)
class OffsetParams:
    """p + 10L = (10C + d1)(10D + d2), with ``modulus`` dividing p + 10L."""

    digit_class: DigitClass
    L: int
    C: int
    D: int
    modulus: int

    def check(self, p: int) -> bool:
        dc = self.digit_class
        return (10 * self.C + dc.d1) * (10 * self.D + dc.d2) == p + 10 * self.L


def profile(p: int) -> ResidueProfile:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InputError(f"expected an integer, got {p!r}")
    if p < 21:
        raise InputError(f"p must be at least 21, got {p}")
    if p % 10 != 1:
        raise InputError(f"p must end in 1, got {p}")
    trivial = None
    if p % 3 == 0:
        trivial = 3
    elif p % 11 == 0:
        trivial = 11
    return ResidueProfile(p, p % 10, p % 3, (p + 10) % 9, p % 11, trivial)


def offset_params(p: int, dc: DigitClass) -> Optional[OffsetParams]:
    """Shifted companion for the digit class, or None when inapplicable."""
    prof = profile(p)
    if dc is DigitClass.THREE_SEVEN:
        # p + 10L = 3 (10D + 7)
        if prof.mod3 == 2:
            L = 1
        elif prof.mod3 == 1:
            L = 2
        else:
            return None
        D = exact_div(p + 10 * L - 21, 30)
        C, modulus = 0, 3
    elif dc is DigitClass.NINE_NINE:
        # p + 10 = 9 (10D + 9); only when 9 | p + 10
        if prof.p_plus_10_mod9 != 0:
            return None
        L, C, modulus = 1, 0, 9
        D = exact_div(p - 71, 90)
    else:
        # p + 10L = 11 (10D + 1), L = p mod 11 since 10 = -1 (mod 11)
        if prof.mod11 == 0:
            return None
        L, C, modulus = prof.mod11, 1, 11
        D = exact_div(p + 10 * L - 11, 110)
    if D is None:
        return None
    params = OffsetParams(dc, L, C, D, modulus)
    assert params.check(p)
    return params


def applicable_methods(prof: ResidueProfile) -> list[tuple[Optional[DigitClass], str]]:
    """Methods that apply to the profiled number, in listing order.

    A number with a trivial factor (3 or 11) short-circuits to ``trivial``.
    """
    if prof.trivial_factor is not None:
        return [(None, "trivial")]
    out: list[tuple[Optional[DigitClass], str]] = []
    for dc in (DigitClass.THREE_SEVEN, DigitClass.NINE_NINE, DigitClass.ONE_ONE):
        if offset_params(prof.p, dc) is not None:
            out.append((dc, "lambda"))
    if prof.p > 81:
        out.append((DigitClass.NINE_NINE, "tau"))
    for dc in (DigitClass.NINE_NINE, DigitClass.THREE_SEVEN, DigitClass.ONE_ONE):
        out.append((dc, "fallback"))
    return out


def trivial_witness(p: int) -> Optional[FactorWitness]:
    """Witness for p divisible by 3 or 11, in the class that factor belongs to."""
    if p % 3 == 0:
        # 3 = 10*0 + 3 and p/3 ends in 7
        return make_witness(p, 0, (p // 3 - 7) // 10, DigitClass.THREE_SEVEN, "trivial", 3)
    if p % 11 == 0:
        q = p // 11
        return make_witness(p, 1, (q - 1) // 10, DigitClass.ONE_ONE, "trivial", 11)
    return None
