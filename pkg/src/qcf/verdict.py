"""Theoretical convergence verdicts for a family at a point q with |q| > 1.

Unit-denominator families fall under the odd/even theorem: when the
degrees of ``a_n`` grow by a fixed step and the leading coefficients
agree, both contractions converge.  Families with denominators split on
the growth rates ``a`` (numerators) and ``b`` (denominators):

* ``2b > a``  the full fraction converges (its unit-denominator
  elements tend to 0, so a tail satisfies Worpitzky's bound);
* ``2b = a``  the full fraction converges unless
  ``(Lb^2/La) q^(b - r1 + 2 r2)`` lies in ``[-4, 0)``;
* ``2b < a``  the odd and even parts converge.

Nothing here ever asserts divergence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from qcf.cfeval import ElementStream, to_unit_denominators
from qcf.classify import Classification, MapKind, Part, classify_lft, tail_parameter, worpitzky_check
from qcf.errors import DegenerateMap, QCFError
from qcf.qpoly import FamilySpec, HypothesisReport, check_T4_hypotheses, check_Tp2_hypotheses
from qcf.xcomplex import XC, xpow

# membership of (Lb^2/La) q^e in the real interval [-4, 0)
REAL_AXIS_TOL = 1e-12
ENDPOINT_TOL = 1e-12

# Worpitzky fallback window
WORPITZKY_N0 = 32
WORPITZKY_N1 = 512


class Conclusion(str, enum.Enum):
    CONVERGES_FULL = "ConvergesFull"
    CONVERGES_ODD_EVEN = "ConvergesOddEven"
    EXCEPTIONAL = "Exceptional"
    OUT_OF_DOMAIN = "OutOfDomain"
    HYPOTHESES_FAIL = "HypothesesFail"
    INDETERMINATE = "Indeterminate"

    def __str__(self):
        return self.value


class Theorem(str, enum.Enum):
    T4 = "T4"
    TP2_GT = "Tp2_case_2b_gt_a"
    TP2_EQ = "Tp2_case_2b_eq_a"
    TP2_LT = "Tp2_case_2b_lt_a"
    WORPITZKY = "Worpitzky"
    NONE = "None"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    conclusion: Conclusion
    theorem_used: Theorem
    reason: str
    exceptional_set: Optional[str] = None
    classification: Optional[Classification] = None
    tail_c: Optional[complex] = None
    hypotheses: Optional[HypothesisReport] = None


def _out_of_domain(q: complex) -> Verdict:
    return Verdict(Conclusion.OUT_OF_DOMAIN, Theorem.NONE,
                   f"|q| = {abs(q)!r} <= 1; the theorems only cover points outside the unit circle")


def _attach(c: complex, ok: Conclusion, theorem: Theorem, reason: str,
            report: HypothesisReport) -> Verdict:
    cls = classify_lft(c)
    if cls.kind is MapKind.LOXODROMIC:
        return Verdict(ok, theorem, reason, classification=cls, tail_c=c, hypotheses=report)
    return Verdict(Conclusion.INDETERMINATE, theorem,
                   f"tail map c/(1+w) with c = {c!r} classified {cls.kind} in binary64 "
                   f"(margin {cls.margin:.3g}); cannot confirm the loxodromic case",
                   classification=cls, tail_c=c, hypotheses=report)


def verdict_T4(fam: FamilySpec, q) -> Verdict:
    q = complex(q)
    if abs(q) <= 1:
        return _out_of_domain(q)
    report = check_T4_hypotheses(fam)
    if not report.satisfied:
        return Verdict(Conclusion.HYPOTHESES_FAIL, Theorem.NONE, report.failure_reason,
                       hypotheses=report)
    reason = (f"degrees grow by m = {report.m} with common leading coefficient {report.La} "
              f"from n = {report.tail_start}; odd and even parts converge for |q| > 1")
    try:
        c = tail_parameter(fam, report, Part.EVEN, q).c
    except DegenerateMap:
        return Verdict(Conclusion.CONVERGES_ODD_EVEN, Theorem.T4, reason + " (tail limit underflows to 0)",
                       hypotheses=report)
    return _attach(c, Conclusion.CONVERGES_ODD_EVEN, Theorem.T4, reason, report)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def exceptional_set_text(La: int, Lb: int, e: int) -> str:
    """The set of |q| > 1 where ``(Lb^2/La) q^e`` lies in ``[-4, 0)``."""
    bound = Fraction(4 * La, Lb * Lb)  # q^e in [-bound, 0) when La > 0
    if e == 0:
        inside = -4 <= Fraction(Lb * Lb, La) < 0
        return "all |q| > 1" if inside else "empty"
    if e == 1:
        if bound > 0:
            return f"[{_fmt(-bound)}, -1)" if bound > 1 else "empty"
        return f"(1, {_fmt(-bound)}]" if -bound > 1 else "empty"
    lo, hi = (f"[{_fmt(-bound)}, 0)", None) if bound > 0 else (None, f"(0, {_fmt(-bound)}]")
    return f"{{q : |q| > 1, q^{e} in {lo or hi}}}"


def verdict_Tp2(fam: FamilySpec, q) -> Verdict:
    q = complex(q)
    if abs(q) <= 1:
        return _out_of_domain(q)
    report = check_Tp2_hypotheses(fam)
    if not report.satisfied:
        return Verdict(Conclusion.HYPOTHESES_FAIL, Theorem.NONE, report.failure_reason,
                       hypotheses=report)
    a, b = report.a, report.b
    if 2 * b > a:
        return Verdict(Conclusion.CONVERGES_FULL, Theorem.TP2_GT,
                       f"2b = {2 * b} > a = {a}: a_n/(b_n b_(n-1)) -> 0, so a tail satisfies "
                       "Worpitzky's bound", hypotheses=report)
    if 2 * b < a:
        reason = f"2b = {2 * b} < a = {a}: odd and even parts converge for |q| > 1"
        try:
            c = tail_parameter(fam, report, Part.EVEN, q).c
        except DegenerateMap:
            return Verdict(Conclusion.CONVERGES_ODD_EVEN, Theorem.TP2_LT, reason, hypotheses=report)
        return _attach(c, Conclusion.CONVERGES_ODD_EVEN, Theorem.TP2_LT, reason, report)

    e = b - report.r1 + 2 * report.r2
    La, Lb = report.La, report.Lb
    zx = xpow(q, e) * float(Fraction(Lb * Lb, La))
    z = zx.to_complex()
    where = exceptional_set_text(La, Lb, e)
    if abs(z.imag) <= REAL_AXIS_TOL * (1 + abs(z.real)) and -4 * (1 + ENDPOINT_TOL) <= z.real < 0:
        note = ""
        if abs(z.real + 4) <= 4 * ENDPOINT_TOL:
            note = "; the point sits on the parabolic endpoint -4, which is excluded as well"
        return Verdict(Conclusion.EXCEPTIONAL, Theorem.TP2_EQ,
                       f"2b = a = {a}: (Lb^2/La) q^{e} = {z.real!r} lies in [-4, 0), where the "
                       f"tail map is parabolic or elliptic and convergence is not guaranteed{note}",
                       exceptional_set=where, hypotheses=report)
    reason = f"2b = a = {a}: (Lb^2/La) q^{e} is outside [-4, 0), so the tail map is loxodromic"
    c = (XC(1) / zx).to_complex()
    if c == 0:
        cls = Classification(MapKind.LOXODROMIC, 0j, complex(-1), 1.0)
        return Verdict(Conclusion.CONVERGES_FULL, Theorem.TP2_EQ, reason, exceptional_set=where,
                       classification=cls, tail_c=c, hypotheses=report)
    v = _attach(c, Conclusion.CONVERGES_FULL, Theorem.TP2_EQ, reason, report)
    return Verdict(v.conclusion, v.theorem_used, v.reason, where, v.classification, v.tail_c,
                   v.hypotheses)


def verdict(fam: FamilySpec, q) -> Verdict:
    """Dispatch on the family shape, falling back to a Worpitzky tail check."""
    v = verdict_Tp2(fam, q) if fam.has_denominators else verdict_T4(fam, q)
    if v.conclusion is not Conclusion.HYPOTHESES_FAIL:
        return v
    try:
        stream = to_unit_denominators(ElementStream.from_family(fam, complex(q)))
        ok = worpitzky_check(stream, WORPITZKY_N0, WORPITZKY_N1)
    except QCFError as exc:
        return Verdict(v.conclusion, v.theorem_used, f"{v.reason}; Worpitzky fallback failed: {exc}",
                       hypotheses=v.hypotheses)
    if ok:
        return Verdict(Conclusion.CONVERGES_FULL, Theorem.WORPITZKY,
                       f"{v.reason}; but |a_n/(b_n b_(n-1))| <= 1/4 for n in "
                       f"[{WORPITZKY_N0}, {WORPITZKY_N1}] (tail checked numerically)",
                       hypotheses=v.hypotheses)
    return v
