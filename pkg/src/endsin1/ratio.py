"""Ratio parametrization of (9,9) factor pairs and the tau-line search.

Writing p - 81 = 100*AB + 90*(A+B) and splitting it as
100 AB = (p - 81 + q)/2, 90 (A+B) = (p - 81 - q)/2 with q = (p - 81) N / M
gives AB and A+B as rational functions of N/M. Fixing p, every integer point
(A+B, AB) lies on the line 10*AB + 9*(A+B) = (p - 81)/10; walking that line
by a single integer tau and testing the discriminant factors p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from typing import Optional

from .arith import (
    ExactRatio,
    ceil_affine_sqrt,
    ceil_div,
    ceil_sqrt,
    cmp_affine_sqrt,
    exact_div,
    gcd,
    isqrt,
    perfect_square_root,
)
from .lambda_engine import BRACKET_DEN, BRACKET_NUM, _partition, dedupe, fallback_scan
from .residues import DigitClass, FactorWitness, make_witness

MODES = ("ten", "twenty", "free")
_MODE_SCALE = {"ten": 10, "twenty": 20}

#: decimal endpoints of N/M quoted for p = 900071; regression renderings only
QUOTED_RATIO_LOWER_900071 = Decimal("0.638969669")
QUOTED_RATIO_UPPER_900071 = Decimal("0.9624107255")


# -- ratio relations ---------------------------------------------------------

def ratio_relations(p: int, dc: DigitClass, M: int, N: int) -> Optional[tuple[int, int]]:
    """(AB, A+B) for (9,9) and (1,1), (AB, 7A+3B) for (3,7); None if inexact."""
    if M <= 0 or N < 0:
        raise ValueError("need M > 0 and N >= 0")
    if N > M:
        M, N = N, M
    base = {DigitClass.NINE_NINE: 81, DigitClass.ONE_ONE: 1, DigitClass.THREE_SEVEN: 21}[dc]
    lin_den = {DigitClass.NINE_NINE: 180, DigitClass.ONE_ONE: 20, DigitClass.THREE_SEVEN: 20}[dc]
    s = p - base
    prod = exact_div(s * (M + N), 200 * M)
    lin = exact_div(s * (M - N), lin_den * M)
    if prod is None or lin is None:
        return None
    return prod, lin


def ratio_bound_ok(p: int, dc: DigitClass, M: int, N: int) -> bool:
    """N/M <= 1 - c/(sqrt(P) + k), compared exactly (equality admitted).

    (9,9): c=36, k=9, P=p. (1,1): c=4, k=1, P=p.
    (3,7): c=84, k=21, P=21p, from 7A + 3B >= (sqrt(21p) - 21)/5.
    """
    if M <= 0:
        raise ValueError("M must be positive")
    if N > M:
        M, N = N, M
    c, k, P = _bound_constants(p, dc)
    # (M - N)(sqrt(P) + k) - c M >= 0
    return cmp_affine_sqrt(k * (M - N) - c * M, M - N, 1, P) >= 0


def _bound_constants(p: int, dc: DigitClass) -> tuple[int, int, int]:
    if dc is DigitClass.NINE_NINE:
        return 36, 9, p
    if dc is DigitClass.ONE_ONE:
        return 4, 1, p
    return 84, 21, 21 * p


def ratio_bound_decimal(p: int, dc: DigitClass = DigitClass.NINE_NINE, prec: int = 40) -> Decimal:
    """Decimal rendering of the ratio bound; never used for decisions."""
    c, k, P = _bound_constants(p, dc)
    with localcontext() as ctx:
        ctx.prec = prec
        return 1 - Decimal(c) / (Decimal(P).sqrt() + k)


@dataclass(frozen=True)
class RatioParams:
    M: int
    N: int
    mode: str
    q: Optional[int] = None
    R: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None

    @property
    def coprime(self) -> bool:
        return gcd(self.M, self.N) == 1

    def check(self, p: int) -> bool:
        ok = True
        if self.q is not None:
            # q = (p - 81) N / M, cross-multiplied
            ok &= self.q * self.M == (p - 81) * self.N
        if None not in (self.R, self.m, self.n, self.k):
            M, N = self.M, self.N
            ok &= self.n == M * M + N * N and self.k == M * M - N * N
            ok &= self.R * self.m == 2 * M * N
            ok &= self.n ** 2 - (self.R * self.m) ** 2 == self.k ** 2
        return ok


def witness_to_ratio(p: int, w: FactorWitness, mode: str = "ten") -> Optional[RatioParams]:
    """(M, N, q, R, m, n, k) for a (9,9) witness with M = (p-81)/10 or /20."""
    if w.digit_class is not DigitClass.NINE_NINE:
        raise ValueError("ratio parametrization needs a (9,9) witness")
    if w.product != p:
        raise ValueError("witness does not multiply to p")
    if mode not in _MODE_SCALE:
        raise ValueError(f"mode must be 'ten' or 'twenty', got {mode!r}")
    q = 200 * w.A * w.B - (p - 81)
    if q <= 0:
        return None
    scale = _MODE_SCALE[mode]
    M = exact_div(p - 81, scale)
    if M is None:
        return None
    N = q // scale
    m = exact_div(20 * M * M, p - 81)
    if m is None or N * scale != q:
        return None
    params = RatioParams(M, N, mode, q, q // 10, m, M * M + N * N, M * M - N * N)
    assert params.check(p)
    return params


# -- circle ------------------------------------------------------------------

@dataclass(frozen=True)
class CircleParams:
    lambda1: ExactRatio
    lambda2: ExactRatio

    def identity_holds(self, p: int) -> bool:
        r = ExactRatio(10, p - 81)
        return (self.lambda2 - r) ** 2 + self.lambda1 ** 2 == r ** 2


def circle_params(p: int, M: int, N: int) -> CircleParams:
    if p <= 81:
        raise ValueError("need p > 81")
    if M <= 0:
        raise ValueError("M must be positive")
    den = (N * N + M * M) * (p - 81)
    cp = CircleParams(ExactRatio(-20 * N * M, den), ExactRatio(20 * M * M, den))
    assert cp.identity_holds(p)
    return cp


# -- certificate -------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    p: int
    N: int
    mode: str
    value: int
    root: Optional[int]


def certificate_value(p: int, N: int, mode: str = "ten") -> Certificate:
    """(p + 243 - s N)^2 - 36^2 p with s = 10 (or 20); root when it is a square."""
    scale = _MODE_SCALE.get(mode)
    if scale is None:
        raise ValueError(f"mode must be 'ten' or 'twenty', got {mode!r}")
    if N < 0 or scale * N >= p + 243:
        raise ValueError(f"need 0 <= {scale}N < p + 243")
    value = (p + 243 - scale * N) ** 2 - 1296 * p
    return Certificate(p, N, mode, value, perfect_square_root(value))


def certificate_witness(cert: Certificate) -> Optional[FactorWitness]:
    """Read (A, B) back from a certificate: p + 243 - sN = 180(A+B) + 324, root = 180(B-A)."""
    if cert.root is None:
        return None
    s = cert.p + 243 - _MODE_SCALE[cert.mode] * cert.N
    sigma = exact_div(s - 324, 180) if s >= 324 else None
    delta = exact_div(cert.root, 180)
    if sigma is None or delta is None or (sigma - delta) % 2 or delta > sigma:
        return None
    A, B = (sigma - delta) // 2, (sigma + delta) // 2
    if (10 * A + 9) * (10 * B + 9) != cert.p:
        return None
    return make_witness(cert.p, A, B, DigitClass.NINE_NINE, "certificate", cert.N)


def scan_certificates(p: int, n_from: int, n_to: int, mode: str = "ten") -> list[Certificate]:
    """Certificates with an exact root for N in [n_from, n_to]. Bounded by design."""
    scale = _MODE_SCALE[mode]
    n_to = min(n_to, (p + 242) // scale)
    out = []
    for N in range(max(0, n_from), n_to + 1):
        c = certificate_value(p, N, mode)
        if c.root is not None:
            out.append(c)
    return out


# -- tau line ----------------------------------------------------------------

@dataclass(frozen=True)
class TauLine:
    """All integer (sigma, pi) with 10 pi + 9 sigma = K, K = (p - 81)/10.

    Canonical anchor has 0 <= anchor_sigma < 10. The public tau is shifted by
    ``offset`` so tau = 0 is the last line point with pi <= (p - 81)/200.
    """

    p: int
    K: int
    anchor_sigma: int
    anchor_pi: int
    offset: int

    def sigma(self, tau: int) -> int:
        return self.anchor_sigma - 10 * (tau - self.offset)

    def pi(self, tau: int) -> int:
        return self.anchor_pi + 9 * (tau - self.offset)

    def tau_of(self, sigma: int, pi: int) -> Optional[int]:
        if 10 * pi + 9 * sigma != self.K:
            return None
        return self.offset + (pi - self.anchor_pi) // 9


def tau_line(p: int) -> TauLine:
    if p <= 81:
        raise ValueError("need p > 81")
    if p % 10 != 1:
        raise ValueError("p must end in 1")
    K = (p - 81) // 10
    # 9 sigma = K (mod 10), and 9 = -1 (mod 10)
    s0 = (-K) % 10
    pi0 = (K - 9 * s0) // 10
    offset = ceil_div(200 * pi0 - (p - 81), 1800)
    return TauLine(p, K, s0, pi0, offset)


@dataclass(frozen=True)
class TauWindow:
    base: tuple[int, int]
    intervals: tuple[tuple[int, int], ...]
    modulus: int
    residue_filter: frozenset[int]
    A_min: int
    A_max: int

    @property
    def empty(self) -> bool:
        return not self.intervals

    def values(self, lo: int, hi: int):
        return (t for t in range(lo, hi + 1) if t % self.modulus in self.residue_filter)

    def counts(self) -> list[int]:
        return [sum(1 for _ in self.values(lo, hi)) for lo, hi in self.intervals]


def bracket_bounds(p: int) -> tuple[int, int]:
    """Integer range for (A+1)(B+1): p/100 <= . <= 101^2 p / 10^6."""
    return ceil_div(p, 100), BRACKET_NUM * p // BRACKET_DEN


def _tau_residues(line: TauLine, m: int) -> frozenset[int]:
    ok = set()
    for r in range(m):
        s, pr = line.sigma(r) % m, line.pi(r) % m
        if any((a + b - s) % m == 0 and (a * b - pr) % m == 0
               for a in range(m) for b in range(m)):
            ok.add(r)
    return frozenset(ok)


def tau_base_window(p: int) -> tuple[int, int]:
    """From A+B >= (sqrt(p) - 9)/5 and (A+1)(B+1) <= 101^2 p / 10^6."""
    line = tau_line(p)
    s0, p0 = line.sigma(0), line.pi(0)
    s_min = ceil_affine_sqrt(-9, 1, 5, p)
    hi = (s0 - s_min) // 10
    # sigma + pi + 1 = s0 + p0 + 1 - tau
    lo = s0 + p0 + 1 - bracket_bounds(p)[1]
    return lo, hi


def tau_window(p: int, A_min: int = 11, modulus: int = 3) -> TauWindow:
    """Base window refined by the feasible range of A + B for A_min <= A <= B."""
    if A_min < 1:
        raise ValueError("A_min must be at least 1")
    line = tau_line(p)
    lo, hi = tau_base_window(p)
    residues = _tau_residues(line, modulus)
    r = isqrt(p)
    A_max = (r - 9) // 10
    if A_max < A_min or lo > hi:
        return TauWindow((lo, hi), (), modulus, residues, A_min, A_max)
    B_min = ceil_div(ceil_sqrt(p) - 9, 10)
    B_max = (p // (10 * A_min + 9) - 9) // 10
    s_lo, s_hi = A_min + B_min, A_max + B_max
    s0 = line.sigma(0)
    rlo = max(lo, ceil_div(s0 - s_hi, 10))
    rhi = min(hi, (s0 - s_lo) // 10)
    if rlo > rhi:
        return TauWindow((lo, hi), (), modulus, residues, A_min, A_max)
    # split where AB <= AB_max stops being the binding upper constraint
    s_split = bracket_bounds(p)[1] - 1 - line.pi(hi)
    t_split = ceil_div(s0 - s_split, 10)
    pieces = [(rlo, min(rhi, t_split - 1)), (max(rlo, t_split), rhi)]
    intervals = tuple((a, b) for a, b in pieces if a <= b)
    return TauWindow((lo, hi), intervals, modulus, residues, A_min, A_max)


def bracket_constants(p: int) -> dict[str, tuple[int, int]]:
    """Ranges of (A+1)(B+1), AB and A+B over the base tau window."""
    line = tau_line(p)
    lo, hi = tau_base_window(p)
    s0, p0 = line.sigma(0), line.pi(0)
    return {
        "(A+1)(B+1)": (s0 + p0 + 1 - hi, s0 + p0 + 1 - lo),
        "AB": (line.pi(lo), line.pi(hi)),
        "A+B": (line.sigma(hi), line.sigma(lo)),
    }


def _tau_range(line: TauLine, window: TauWindow, lo: int, hi: int):
    found, tried = [], 0
    for t in window.values(lo, hi):
        tried += 1
        s, pr = line.sigma(t), line.pi(t)
        if s < 0 or pr < 0:
            continue
        r = perfect_square_root(s * s - 4 * pr)
        if r is None or (s - r) % 2:
            continue
        A, B = (s - r) // 2, (s + r) // 2
        if (10 * A + 9) * (10 * B + 9) == line.p:
            found.append(make_witness(line.p, A, B, DigitClass.NINE_NINE, "tau", t))
    return found, tried


def tau_sweep(p: int, A_min: int = 11, partitions: int = 1) -> tuple[list[FactorWitness], int]:
    """Test every admissible tau in the refined window, ascending."""
    line = tau_line(p)
    window = tau_window(p, A_min)
    found, tried = [], 0
    for lo, hi in window.intervals:
        for a, b in _partition(lo, hi, partitions):
            f, t = _tau_range(line, window, a, b)
            found += f
            tried += t
    return found, tried


@dataclass
class TauReport:
    applicable: bool
    reason: str = ""
    window: Optional[TauWindow] = None
    sweep_tried: int = 0
    fallback_tried: int = 0
    witnesses: list[FactorWitness] = field(default_factory=list)

    @property
    def candidates_tried(self) -> int:
        return self.sweep_tried + self.fallback_tried


def tau_search(p: int, A_min: int = 11, partitions: int = 1) -> TauReport:
    if p <= 81:
        return TauReport(False, reason="p - 81 must be positive")
    found, tried = tau_sweep(p, A_min, partitions)
    return TauReport(True, window=tau_window(p, A_min), sweep_tried=tried,
                     witnesses=dedupe(found))


def factor_with_tau(p: int, A_min: int = 11, partitions: int = 1) -> TauReport:
    """Tau sweep plus a direct scan of A < A_min, where the bracket does not apply."""
    rep = tau_search(p, A_min, partitions)
    if not rep.applicable:
        return rep
    more, tried = fallback_scan(p, DigitClass.NINE_NINE, A_min - 1)
    rep.fallback_tried = tried
    rep.witnesses = dedupe(rep.witnesses + more)
    return rep
