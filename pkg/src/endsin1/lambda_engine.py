"""Lambda-window search for the three digit classes.

Subtracting p = (10A+d1)(10B+d2) from the companion p + 10L = (10C+d1)(10D+d2)
leaves a relation linear in a new integer lambda:

    (3,7)  L + AB + A = 3*lam          D - B + A + 3L = 10*lam
    (9,9)  1 + AB     = 9*lam          D - B - A + 1  = 10*lam
    (1,1)  AB - D     = lam            D + 1 - L - (A+B) = 10*lam

Each lambda fixes (A+B, AB) (or A through a monic quadratic for (3,7)), so a
bounded interval of lambda is a finite candidate list. Witnesses with a small
A are outside the interval's validity region and are found by direct scans.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .arith import ceil_affine_sqrt, ceil_div, floor_affine_sqrt, perfect_square_root
from .residues import DigitClass, FactorWitness, OffsetParams, make_witness, offset_params

# bracket: (A+1)(B+1) <= BRACKET_NUM * p / BRACKET_DEN for large enough A, B
BRACKET_NUM = 101 ** 2
BRACKET_DEN = 10 ** 6

#: direct-scan thresholds; the lambda bounds assume A at or above these
FALLBACK_A_MAX = {
    DigitClass.THREE_SEVEN: 30,
    DigitClass.NINE_NINE: 10,
    DigitClass.ONE_ONE: 90,
}
#: lower lambda bound for (3,7) is valid for every B >= A only once A >= 39
SAFE_A_MAX_37 = 38

DEFAULT_MODULUS = 3


@dataclass(frozen=True)
class LinearSystem:
    p: int
    digit_class: DigitClass
    D: int
    L: int

    def residuals(self, A: int, B: int, lam: int) -> tuple[int, int]:
        """Both relations as expressions that vanish on a solution."""
        D, L = self.D, self.L
        if self.digit_class is DigitClass.THREE_SEVEN:
            return L + A * B + A - 3 * lam, D - B + A + 3 * L - 10 * lam
        if self.digit_class is DigitClass.NINE_NINE:
            return 1 + A * B - 9 * lam, D - B - A + 1 - 10 * lam
        return A * B - D - lam, D + 1 - L - (A + B) - 10 * lam

    def lambda_of(self, A: int, B: int) -> Optional[int]:
        """The lambda a witness corresponds to, if the relations hold."""
        D, L = self.D, self.L
        if self.digit_class is DigitClass.THREE_SEVEN:
            num, den = D - B + A + 3 * L, 10
        elif self.digit_class is DigitClass.NINE_NINE:
            num, den = D - B - A + 1, 10
        else:
            num, den = D + 1 - L - (A + B), 10
        if num % den:
            return None
        lam = num // den
        return lam if self.residuals(A, B, lam) == (0, 0) else None

    def candidates(self, lam: int) -> list[tuple[int, int]]:
        """Integer (A, B) pairs the relations give for this lambda (unvalidated)."""
        D, L = self.D, self.L
        if self.digit_class is DigitClass.THREE_SEVEN:
            # A^2 + (D + 3L + 1 - 10 lam) A + (L - 3 lam) = 0
            b = D + 3 * L + 1 - 10 * lam
            c = L - 3 * lam
            r = perfect_square_root(b * b - 4 * c)
            if r is None:
                return []
            out = []
            for num in (-b - r, -b + r):
                if num % 2 == 0 and num >= 0:
                    A = num // 2
                    out.append((A, D + A + 3 * L - 10 * lam))
            return out
        if self.digit_class is DigitClass.NINE_NINE:
            s, prod = D + 1 - 10 * lam, 9 * lam - 1
        else:
            s, prod = D + 1 - L - 10 * lam, D + lam
        r = perfect_square_root(s * s - 4 * prod)
        if r is None or (s - r) % 2:
            return []
        return [((s - r) // 2, (s + r) // 2)]


@dataclass(frozen=True)
class LambdaWindow:
    lo: int
    hi: int
    modulus: int
    admissible: frozenset[int]
    assumed_A_min: int
    assumed_B_min: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def values(self, lo: Optional[int] = None, hi: Optional[int] = None):
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        return (x for x in range(lo, hi + 1) if x % self.modulus in self.admissible)

    def count(self) -> int:
        return sum(1 for _ in self.values())


def build_system(p: int, params: OffsetParams) -> LinearSystem:
    return LinearSystem(p, params.digit_class, params.D, params.L)


def admissible_residues(sys: LinearSystem, m: int) -> frozenset[int]:
    """Residues r mod m for which the relations are solvable mod m with lam = r."""
    ok = set()
    for r in range(m):
        for a in range(m):
            if any(
                e1 % m == 0 and e2 % m == 0
                for e1, e2 in (sys.residuals(a, b, r) for b in range(m))
            ):
                ok.add(r)
                break
    return frozenset(ok)


def lambda_window(p: int, sys: LinearSystem, modulus: int = DEFAULT_MODULUS) -> LambdaWindow:
    """Integer lambda interval from the size bounds, plus the residue filter.

    Lower ends use the bracket (A+1)(B+1) <= 101^2 p / 10^6, upper ends use
    A + B >= 2 sqrt(p) / 10 - (d1 + d2) / 10 (or B >= A for (3,7)).
    """
    D, L, dc = sys.D, sys.L, sys.digit_class
    A_min = FALLBACK_A_MAX[dc]
    if dc is DigitClass.THREE_SEVEN:
        # 7 lam = D + A + 2L + 1 - (A+1)(B+1), with A >= 30
        num = BRACKET_DEN * (D + A_min + 2 * L + 1) - BRACKET_NUM * p
        lo = ceil_div(num, 7 * BRACKET_DEN)
        # 10 lam = D + 3L - (B - A) with B >= A
        hi = (D + 3 * L) // 10
        B_min = 70
    elif dc is DigitClass.NINE_NINE:
        # lam = D + 1 - (A+1)(B+1)
        lo = ceil_div(BRACKET_DEN * (D + 1) - BRACKET_NUM * p, BRACKET_DEN)
        # 10 lam = D + 1 - (A+B), A+B >= (sqrt(p) - 9)/5
        hi = floor_affine_sqrt(5 * (D + 1) + 9, -1, 50, p)
        B_min = A_min
    else:
        # 9 lam = 2D + 2 - L - (A+1)(B+1)
        lo = ceil_div(BRACKET_DEN * (2 * D + 2 - L) - BRACKET_NUM * p, 9 * BRACKET_DEN)
        # 10 lam = D + 1 - L - (A+B), A+B >= (sqrt(p) - 1)/5
        hi = floor_affine_sqrt(5 * (D + 1 - L) + 1, -1, 50, p)
        B_min = A_min
    return LambdaWindow(lo, hi, modulus, admissible_residues(sys, modulus), A_min, B_min)


def printed_bounds_11(p: int, D: int) -> tuple[int, int]:
    """The (1,1) interval exactly as printed (integer ceil/floor), for reference.

    Lower: 2D + 1 - 101^2 p / 10^6. Upper: D/10 - (1 - sqrt(p))/50 - 1/2.
    These bound a differently scaled parameter and are not used for clipping.
    """
    lo = ceil_div(BRACKET_DEN * (2 * D + 1) - BRACKET_NUM * p, BRACKET_DEN)
    hi = floor_affine_sqrt(5 * D - 1 - 25, 1, 50, p)
    return lo, hi


def recover(lam: int, sys: LinearSystem) -> Optional[FactorWitness]:
    method = f"lambda{sys.digit_class.label}"
    d1, d2 = sys.digit_class.value
    for A, B in sys.candidates(lam):
        # the unit factor 1 = 10*0 + 1 is never a witness
        if min(10 * A + d1, 10 * B + d2) < 2 or A < 0 or B < 0:
            continue
        if (10 * A + d1) * (10 * B + d2) == sys.p:
            return make_witness(sys.p, A, B, sys.digit_class, method, lam)
    return None


def _sweep_range(sys: LinearSystem, window: LambdaWindow, lo: int, hi: int):
    found, tried = [], 0
    for lam in window.values(lo, hi):
        tried += 1
        w = recover(lam, sys)
        if w is not None:
            found.append(w)
    return found, tried


def _partition(lo: int, hi: int, k: int) -> list[tuple[int, int]]:
    n = hi - lo + 1
    if n <= 0:
        return []
    k = max(1, min(k, n))
    step, extra = divmod(n, k)
    out, start = [], lo
    for i in range(k):
        end = start + step + (1 if i < extra else 0) - 1
        out.append((start, end))
        start = end + 1
    return out


def sweep(p: int, sys: LinearSystem, window: LambdaWindow, partitions: int = 1,
          workers: int = 1) -> tuple[list[FactorWitness], int]:
    """Try every admissible lambda in the window, ascending.

    The range may be split into ``partitions`` chunks (run on ``workers``
    threads); results are merged in chunk order so the output does not
    depend on the split.
    """
    if sys.p != p:
        raise ValueError("system was built for a different p")
    chunks = _partition(window.lo, window.hi, partitions)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda c: _sweep_range(sys, window, *c), chunks))
    else:
        parts = [_sweep_range(sys, window, *c) for c in chunks]
    witnesses = [w for found, _ in parts for w in found]
    return witnesses, sum(t for _, t in parts)


def fallback_scan(p: int, dc: DigitClass, A_max: Optional[int] = None,
                  A_min: int = 1) -> tuple[list[FactorWitness], int]:
    """Divide p by 10A + d1 for A in [A_min, A_max].

    A whose factor is a multiple of 3 is skipped when 3 does not divide p.
    """
    if A_max is None:
        A_max = FALLBACK_A_MAX[dc]
    d1, d2 = dc.value
    skip3 = p % 3 != 0
    found, tried = [], 0
    for A in range(A_min, A_max + 1):
        f = 10 * A + d1
        if skip3 and f % 3 == 0:
            continue
        tried += 1
        if p % f == 0:
            g = p // f
            if g > 1 and g % 10 == d2:
                found.append(make_witness(p, A, g // 10, dc, f"fallback{dc.label}", A))
    return found, tried


@dataclass
class LambdaReport:
    digit_class: DigitClass
    applicable: bool
    reason: str = ""
    params: Optional[OffsetParams] = None
    window: Optional[LambdaWindow] = None
    sweep_tried: int = 0
    fallback_tried: int = 0
    gap_tried: int = 0
    witnesses: list[FactorWitness] = field(default_factory=list)

    @property
    def candidates_tried(self) -> int:
        return self.sweep_tried + self.fallback_tried + self.gap_tried


def dedupe(witnesses) -> list[FactorWitness]:
    """First occurrence of each (A, B, class), ordered by A."""
    seen, out = set(), []
    for w in witnesses:
        if w.key not in seen:
            seen.add(w.key)
            out.append(w)
    return sorted(out, key=lambda w: (w.A, w.B))


def lambda_sweep(p: int, dc: DigitClass, partitions: int = 1, workers: int = 1,
                 modulus: int = DEFAULT_MODULUS) -> LambdaReport:
    """Window sweep only; inapplicability is reported, not raised."""
    params = offset_params(p, dc)
    if params is None:
        return LambdaReport(dc, False, reason=_inapplicable_reason(p, dc))
    sys = build_system(p, params)
    window = lambda_window(p, sys, modulus)
    found, tried = sweep(p, sys, window, partitions, workers)
    return LambdaReport(dc, True, params=params, window=window, sweep_tried=tried,
                        witnesses=dedupe(found))


def lambda_fallback(p: int, dc: DigitClass) -> LambdaReport:
    """Direct scans covering witnesses the window's bounds do not guarantee."""
    found, tried = fallback_scan(p, dc)
    gap_tried = 0
    if dc is DigitClass.THREE_SEVEN:
        more, gap_tried = fallback_scan(p, dc, SAFE_A_MAX_37, FALLBACK_A_MAX[dc] + 1)
        found += more
    return LambdaReport(dc, True, fallback_tried=tried, gap_tried=gap_tried,
                        witnesses=dedupe(found))


def factor_with_lambda(p: int, dc: DigitClass, partitions: int = 1,
                       workers: int = 1) -> LambdaReport:
    """Sweep the lambda window, then the direct scans; union of both."""
    rep = lambda_sweep(p, dc, partitions, workers)
    fb = lambda_fallback(p, dc)
    rep.fallback_tried = fb.fallback_tried
    rep.gap_tried = fb.gap_tried
    rep.witnesses = dedupe(rep.witnesses + fb.witnesses)
    return rep


def _inapplicable_reason(p: int, dc: DigitClass) -> str:
    if dc is DigitClass.THREE_SEVEN:
        return "p is divisible by 3"
    if dc is DigitClass.NINE_NINE:
        return "p + 10 is not a multiple of 9"
    return "p is divisible by 11"
