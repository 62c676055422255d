"""Fixed points of the tail map ``t(w) = c/(1+w)`` and tail limits ``c``.

A limit 1-periodic fraction ``K(c_n/1)`` with ``c_n -> c`` is governed by
``t``: it is parabolic when its fixed points coincide (``c = -1/4``),
elliptic when they are distinct with ``|1+x| = |1+y|`` (real
``c < -1/4``), and loxodromic otherwise.  In the loxodromic case the
fraction converges in the extended plane.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass

from qcf.cfeval import ElementStream
from qcf.errors import DegenerateMap, NotApplicable, OutOfDomain
from qcf.qpoly import FamilySpec, HypothesisReport
from qcf.xcomplex import XC, xpow

DEFAULT_BOUNDARY_TOL = 1e-12


class MapKind(str, enum.Enum):
    PARABOLIC = "Parabolic"
    ELLIPTIC = "Elliptic"
    LOXODROMIC = "Loxodromic"
    BOUNDARY = "BoundaryIndeterminate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    kind: MapKind
    x: complex  # attractive fixed point when loxodromic
    y: complex
    margin: float


def fixed_points(c: complex) -> tuple:
    """Roots of ``w^2 + w - c = 0`` ordered so that ``|1+x| >= |1+y|``."""
    c = complex(c)
    if c == 0:
        raise DegenerateMap("c = 0: t(w) = c/(1+w) is constant")
    s = cmath.sqrt(1 + 4 * c)
    x, y = (-1 + s) / 2, (-1 - s) / 2
    if abs(1 + x) < abs(1 + y):
        x, y = y, x
    return x, y


def classify_roots(c: complex, x: complex, y: complex,
                   boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Classification:
    """Classify from a given pair of fixed points, in either order."""
    if abs(1 + x) < abs(1 + y):
        x, y = y, x
    par = abs(1 + 4 * c) / (1 + abs(4 * c))
    ux, uy = abs(1 + x), abs(1 + y)
    ell = (ux - uy) / (ux + uy)
    margin = min(par, ell)
    if par <= boundary_tol:
        return Classification(MapKind.PARABOLIC, complex(-0.5), complex(-0.5), par)
    if ell <= boundary_tol:
        return Classification(MapKind.ELLIPTIC, x, y, ell)
    if par <= 10 * boundary_tol or ell <= 10 * boundary_tol:
        return Classification(MapKind.BOUNDARY, x, y, margin)
    return Classification(MapKind.LOXODROMIC, x, y, margin)


def classify_lft(c: complex, boundary_tol: float = DEFAULT_BOUNDARY_TOL) -> Classification:
    """Parabolic / elliptic / loxodromic verdict for ``c/(1+w)``.

    Parabolic when ``|1+4c| <= tol (1+|4c|)``; elliptic when the
    relative difference of ``|1+x|`` and ``|1+y|`` is within ``tol``;
    ``BoundaryIndeterminate`` within ten times either band.
    """
    x, y = fixed_points(c)
    return classify_roots(complex(c), x, y, boundary_tol)


# ----------------------------------------------------------------------


class Part(str, enum.Enum):
    FULL = "full"
    EVEN = "even"
    ODD = "odd"


class TailFormula(str, enum.Enum):
    T4_CONTRACTION = "T4_contraction"
    TP2_EQUAL = "Tp2_equal_case"
    TP2_CONTRACTION = "Tp2_contraction_case"


@dataclass(frozen=True)
class TailParameter:
    c: complex
    formula_used: TailFormula
    q: complex


def tail_parameter(fam: FamilySpec, report: HypothesisReport, part, q: complex) -> TailParameter:
    """Limit of the unit-denominator elements of the relevant fraction.

    Signs follow the all-plus convention of :mod:`qcf.contract`.
    """
    part = Part(part)
    q = complex(q)
    if abs(q) <= 1:
        raise OutOfDomain(f"|q| = {abs(q)!r} <= 1")
    if not report.satisfied:
        raise NotApplicable(f"hypotheses fail: {report.failure_reason}")
    if not fam.has_denominators:
        if part is Part.FULL:
            raise NotApplicable("no tail limit for the full fraction of a unit-denominator family")
        t = xpow(q, report.m)
        c = (XC(-1) / (t + 2 + XC(1) / t)).to_complex()
        formula = TailFormula.T4_CONTRACTION
    elif 2 * report.b == report.a:
        if part is not Part.FULL:
            raise NotApplicable("the equal-growth case has a tail limit for the full fraction only")
        e = report.b - report.r1 + 2 * report.r2
        c = (XC(report.La) / (xpow(q, e) * (report.Lb**2))).to_complex()
        formula = TailFormula.TP2_EQUAL
    elif 2 * report.b < report.a:
        if part is Part.FULL:
            raise NotApplicable("numerators outgrow denominators; only odd/even parts have a tail limit")
        t = xpow(q, 2 * report.b - report.a)
        one = XC(1)
        c = (-t / ((one + t) * (one + t))).to_complex()
        formula = TailFormula.TP2_CONTRACTION
    else:
        raise NotApplicable("denominators dominate: elements tend to 0, no finite-c tail map")
    if c == 0:
        raise DegenerateMap("tail limit underflows to 0")
    return TailParameter(c, formula, q)


def worpitzky_check(stream: ElementStream, n0: int, n1: int) -> bool:
    """True iff ``|a_n| <= 1/4`` for every ``n0 <= n <= n1`` (unit denominators)."""
    if not 1 <= n0 < n1:
        raise ValueError("need 1 <= n0 < n1")
    last = n1 if stream.length is None else min(n1, stream.length)
    for n in range(n0, last + 1):
        a, b = stream.element(n)
        if b != 1:
            raise ValueError("worpitzky_check needs a unit-denominator stream")
        if not abs(a) <= 0.25:
            return False
    return True

