"""Method orchestration, search reports and the range benchmark."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from . import lambda_engine as le
from .oracle import (
    GuardError,
    digit_class_pairs,
    oracle_guard,
    trial_division_count,
    trial_factor,
)
from .ratio import tau_search
from .residues import (
    DigitClass,
    FactorWitness,
    InputError,
    applicable_methods,
    offset_params,
    profile,
    trivial_witness,
)

METHODS = ("auto", "lambda37", "lambda99", "lambda11", "tau", "trial")
VERDICTS = ("factored", "no-witness-found", "trivial-factor", "out-of-guard")

_LAMBDA_CLASS = {
    "lambda37": DigitClass.THREE_SEVEN,
    "lambda99": DigitClass.NINE_NINE,
    "lambda11": DigitClass.ONE_ONE,
}


class InapplicableError(ValueError):
    """The requested method's hypotheses do not hold for p."""


@dataclass
class MethodRecord:
    method: str
    digit_class: Optional[str]
    applicable: bool = True
    reason: str = ""
    window: list[tuple[int, int]] = field(default_factory=list)
    modulus: Optional[int] = None
    residues: list[int] = field(default_factory=list)
    candidates_tried: int = 0
    witnesses: list[FactorWitness] = field(default_factory=list)
    wall_time_us: Optional[int] = None


@dataclass
class SearchReport:
    p: int
    methods: list[MethodRecord]
    oracle_checked: bool
    verdict: str
    prime: Optional[bool] = None

    @property
    def witnesses(self) -> list[FactorWitness]:
        return [w for m in self.methods for w in m.witnesses]

    @property
    def candidates_tried(self) -> int:
        return sum(m.candidates_tried for m in self.methods)

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": str(self.p),
            "verdict": self.verdict,
            "oracle_checked": self.oracle_checked,
            "prime": self.prime,
            "methods": [_record_to_dict(m) for m in self.methods],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SearchReport":
        return cls(
            p=int(d["p"]),
            methods=[_record_from_dict(m) for m in d["methods"]],
            oracle_checked=d["oracle_checked"],
            verdict=d["verdict"],
            prime=d["prime"],
        )


def _opt_int(v):
    return None if v is None else int(v)


def _opt_str(v):
    return None if v is None else str(v)


def witness_to_dict(w: FactorWitness) -> dict[str, Any]:
    f, g = w.factors
    return {
        "A": str(w.A),
        "B": str(w.B),
        "digit_class": w.digit_class.label,
        "method": w.method,
        "parameter": _opt_str(w.parameter),
        "factors": [str(f), str(g)],
    }


def witness_from_dict(d: dict[str, Any]) -> FactorWitness:
    return FactorWitness(int(d["A"]), int(d["B"]), DigitClass.from_label(d["digit_class"]),
                         d["method"], _opt_int(d["parameter"]))


def _record_to_dict(m: MethodRecord) -> dict[str, Any]:
    return {
        "method": m.method,
        "digit_class": m.digit_class,
        "applicable": m.applicable,
        "reason": m.reason,
        "window": [[str(a), str(b)] for a, b in m.window],
        "modulus": _opt_str(m.modulus),
        "residues": [str(r) for r in m.residues],
        "candidates_tried": str(m.candidates_tried),
        "witnesses": [witness_to_dict(w) for w in m.witnesses],
        "wall_time_us": _opt_str(m.wall_time_us),
    }


def _record_from_dict(d: dict[str, Any]) -> MethodRecord:
    return MethodRecord(
        method=d["method"],
        digit_class=d["digit_class"],
        applicable=d["applicable"],
        reason=d["reason"],
        window=[(int(a), int(b)) for a, b in d["window"]],
        modulus=_opt_int(d["modulus"]),
        residues=[int(r) for r in d["residues"]],
        candidates_tried=int(d["candidates_tried"]),
        witnesses=[witness_from_dict(w) for w in d["witnesses"]],
        wall_time_us=_opt_int(d["wall_time_us"]),
    )


# -- individual steps --------------------------------------------------------

def _timed(fn: Callable[[], MethodRecord], timing: bool) -> MethodRecord:
    t0 = time.perf_counter_ns()
    rec = fn()
    if timing:
        rec.wall_time_us = (time.perf_counter_ns() - t0) // 1000
    return rec


def _lambda_step(p: int, dc: DigitClass, partitions: int, workers: int) -> MethodRecord:
    rep = le.lambda_sweep(p, dc, partitions, workers)
    rec = MethodRecord(f"lambda{dc.label}", dc.label, rep.applicable, rep.reason)
    if rep.applicable:
        w = rep.window
        rec.window = [(w.lo, w.hi)]
        rec.modulus = w.modulus
        rec.residues = sorted(w.admissible)
        rec.candidates_tried = rep.sweep_tried
        rec.witnesses = rep.witnesses
    return rec


def _tau_step(p: int, partitions: int) -> MethodRecord:
    rep = tau_search(p, partitions=partitions)
    rec = MethodRecord("tau", DigitClass.NINE_NINE.label, rep.applicable, rep.reason)
    if rep.applicable:
        rec.window = list(rep.window.intervals)
        rec.modulus = rep.window.modulus
        rec.residues = sorted(rep.window.residue_filter)
        rec.candidates_tried = rep.sweep_tried
        rec.witnesses = rep.witnesses
    return rec


def _fallback_step(p: int, dc: DigitClass) -> MethodRecord:
    rep = le.lambda_fallback(p, dc)
    hi = le.SAFE_A_MAX_37 if dc is DigitClass.THREE_SEVEN else le.FALLBACK_A_MAX[dc]
    return MethodRecord(f"fallback{dc.label}", dc.label, window=[(1, hi)],
                        candidates_tried=rep.candidates_tried, witnesses=rep.witnesses)


def _trivial_step(p: int) -> MethodRecord:
    w = trivial_witness(p)
    rec = MethodRecord("trivial", w.digit_class.label if w else None, candidates_tried=2)
    if w is not None:
        rec.witnesses = [w]
    return rec


def _trial_step(p: int) -> tuple[MethodRecord, bool]:
    f = trial_factor(p)
    rec = MethodRecord("trial", None, candidates_tried=f.divisions)
    if p % 10 == 1:
        rec.witnesses = [
            FactorWitness(A, B, dc, "trial")
            for A, B, dc in digit_class_pairs(p)
            if not (dc is DigitClass.ONE_ONE and A == 0)
        ]
    return rec, f.is_prime


# -- orchestration -----------------------------------------------------------

AUTO_ORDER = (
    ("lambda", DigitClass.NINE_NINE),
    ("tau", DigitClass.NINE_NINE),
    ("lambda", DigitClass.THREE_SEVEN),
    ("lambda", DigitClass.ONE_ONE),
    ("fallback", DigitClass.NINE_NINE),
    ("fallback", DigitClass.THREE_SEVEN),
    ("fallback", DigitClass.ONE_ONE),
)


def search(p: int, method: str = "auto", partitions: int = 1, workers: int = 1,
           timing: bool = True) -> SearchReport:
    """Run one method (or the auto chain) and cross-check against the oracle.

    Raises InputError for unacceptable p, InapplicableError when a named
    method's hypotheses fail, GuardError for ``trial`` above the guard.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "trial":
        if p < 2:
            raise InputError(f"p must be at least 2, got {p}")
        holder = {}

        def run():
            rec, holder["prime"] = _trial_step(p)
            return rec

        rec = _timed(run, timing)
        prime = holder["prime"]
        verdict = "factored" if not prime else "no-witness-found"
        return SearchReport(p, [rec], True, verdict, prime)

    profile(p)
    records: list[MethodRecord] = []
    if method == "auto":
        rec = _timed(lambda: _trivial_step(p), timing)
        if rec.witnesses:
            records.append(rec)
            return _finish(p, records, trivial=True)
        records.append(rec)
        for kind, dc in AUTO_ORDER:
            if kind == "lambda":
                rec = _timed(lambda: _lambda_step(p, dc, partitions, workers), timing)
            elif kind == "tau":
                rec = _timed(lambda: _tau_step(p, partitions), timing)
            else:
                rec = _timed(lambda: _fallback_step(p, dc), timing)
            records.append(rec)
            if rec.witnesses:
                break
        return _finish(p, records)

    if method == "tau":
        if p <= 81:
            raise InapplicableError("tau needs p > 81")
        records.append(_timed(lambda: _tau_step(p, partitions), timing))
        records.append(_timed(lambda: _fallback_step(p, DigitClass.NINE_NINE), timing))
        return _finish(p, records)

    dc = _LAMBDA_CLASS[method]
    if offset_params(p, dc) is None:
        raise InapplicableError(f"{method} inapplicable: {le._inapplicable_reason(p, dc)}")
    records.append(_timed(lambda: _lambda_step(p, dc, partitions, workers), timing))
    records.append(_timed(lambda: _fallback_step(p, dc), timing))
    return _finish(p, records)


def _finish(p: int, records: list[MethodRecord], trivial: bool = False) -> SearchReport:
    witnesses = [w for r in records for w in r.witnesses]
    if any(w.product != p for w in witnesses):
        raise AssertionError("engine produced a witness that does not multiply to p")
    guard = oracle_guard()
    checked, prime = False, None
    if p <= guard:
        truth = {(A, B, dc) for A, B, dc in digit_class_pairs(p)}
        missing = [w for w in witnesses if w.key not in truth]
        if missing:
            raise AssertionError(f"witnesses not confirmed by the oracle: {missing}")
        checked = True
        prime = trial_factor(p).is_prime
    if trivial:
        verdict = "trivial-factor"
    elif witnesses:
        verdict = "factored"
    elif not checked:
        verdict = "out-of-guard"
    else:
        verdict = "no-witness-found"
    return SearchReport(p, records, checked, verdict, prime)


# -- benchmark ---------------------------------------------------------------

BENCH_COLUMNS = ("p", "method", "digit_class", "candidates_tried", "found", "witness",
                 "trial_divisions")


def bench_range(start: int, stop: int, partitions: int = 1) -> list[dict[str, str]]:
    """One row per p ending in 1 in [start, stop] per applicable method."""
    guard = oracle_guard()
    if stop > guard:
        raise GuardError(f"range end {stop} exceeds the oracle guard {guard}")
    rows = []
    first = start + (1 - start) % 10
    for p in range(max(first, 21), stop + 1, 10):
        prof = profile(p)
        trial = trial_division_count(p)
        for dc, kind in applicable_methods(prof):
            if kind == "trivial":
                rec = _trivial_step(p)
            elif kind == "lambda":
                rec = _lambda_step(p, dc, partitions, 1)
            elif kind == "tau":
                rec = _tau_step(p, partitions)
            else:
                rec = _fallback_step(p, dc)
            w = rec.witnesses[0] if rec.witnesses else None
            rows.append({
                "p": str(p),
                "method": rec.method,
                "digit_class": rec.digit_class or "",
                "candidates_tried": str(rec.candidates_tried),
                "found": "1" if w else "0",
                "witness": f"{w.factors[0]}*{w.factors[1]}" if w else "",
                "trial_divisions": str(trial),
            })
    return rows
