"""Built-in families: Rogers-Ramanujan, the three Ramanujan-Selberg
fractions, Goellnitz-Gordon and the two worked examples.
"""

from __future__ import annotations

from dataclasses import dataclass

from qcf.cfeval import (
    DEFAULT_WINDOW,
    ConvergenceReport,
    ElementStream,
    Status,
    limit_estimate,
    odd_even_reports,
    reciprocal,
)
from qcf.errors import QCFError, UnknownName
from qcf.qpoly import FamilySpec, PolynomialQX
from qcf.xcomplex import xpow

P = PolynomialQX.parse


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    fam: FamilySpec
    notes: str


_ENTRIES = {
    "rr": CatalogEntry(
        "rr",
        FamilySpec(1, [P("q*x")]),
        "Rogers-Ramanujan K(q) = 1 + q/1 + q^2/1 + q^3/1 + ...; a_n = q^n.",
    ),
    "s1": CatalogEntry(
        "s1",
        FamilySpec(2, [P("q*x^2"), P("q*x + q^2*x^2")]),
        "Ramanujan-Selberg S1(q) = 1 + q/1 + (q+q^2)/1 + q^3/1 + (q^2+q^4)/1 + ...; "
        "a_(2n+1) = q^(2n+1), a_(2n+2) = q^(n+1) + q^(2n+2). The usual definition lists "
        "four elements; the encoding extends their pattern.",
    ),
    "s2": CatalogEntry(
        "s2",
        FamilySpec(2, [P("q*x^2 + q^2*x^4"), P("q^4*x^4")]),
        "Ramanujan-Selberg S2(q) = 1 + (q+q^2)/1 + q^4/1 + (q^3+q^6)/1 + q^8/1 + ...; "
        "a_(2n+1) = q^(2n+1) + q^(4n+2), a_(2n+2) = q^(4n+4). Pinned by the first "
        "four displayed elements.",
    ),
    "s3": CatalogEntry(
        "s3",
        FamilySpec(1, [P("q*x + q^2*x^2")]),
        "Ramanujan-Selberg S3(q) = 1 + (q+q^2)/1 + (q^2+q^4)/1 + ...; a_n = q^n + q^(2n).",
    ),
    "gg": CatalogEntry(
        "gg",
        FamilySpec(1, [P("q^2*x^2")], g=[P("1 + q*x^2")], b0=P("1 + q")),
        "Goellnitz-Gordon GG(q) = 1+q + q^2/(1+q^3) + q^4/(1+q^5) + ...; "
        "a_n = q^(2n), b_n = 1 + q^(2n+1).",
    ),
    "eo1": CatalogEntry(
        "eo1",
        FamilySpec(4, [
            P("q*x^4 + 3*q*x^3 + 2*q*x^2"),
            P("q^2*x^4 + 2*q^2*x^3 + 7*q*x^2"),
            P("q^3*x^4 + 5*q^2*x^3 + 2*q^3*x^2"),
            P("q^4*x^4 + 7*q^3*x^3 + 3*q*x^2 + 2*x"),
        ]),
        "Worked unit-denominator example with period 4; degree step 1, leading "
        "coefficient 1 from a_4 on.",
    ),
    "eo2": CatalogEntry(
        "eo2",
        FamilySpec(4, [
            P("q^2*x^8 + 3*q^2*x^6 + 2*q^2*x^4"),
            P("q^4*x^8 + 2*q^4*x^6 + 7*q^2*x^4"),
            P("q^6*x^8 + 5*q^4*x^6 + 2*q^6*x^4"),
            P("q^8*x^8 + 7*q^6*x^6 + 3*q^2*x^4 + 2*x^2"),
        ], g=[
            P("q*x^4 + x + 1"),
            P("q^2*x^4 + x^2 + 1"),
            P("q^3*x^4 + x^2 + 1"),
            P("q^4*x^4 + x^3 + 1"),
        ]),
        "Worked example with denominators, period 4: a = 2, b = 1, r1 = 2, r2 = 1, "
        "La = Lb = 1, so 2b = a and the exceptional set is [-4, -1). The last "
        "numerator polynomial uses 2*x^2, matching the displayed elements "
        "(..., q^8+7q^6+3q^2+2, ..., q^16+7q^12+3q^6+2q^2).",
    ),
}


def catalog_names() -> list:
    return list(_ENTRIES)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}; choose from {', '.join(_ENTRIES)}") from None


# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RamanujanCheck:
    x: complex
    odd: ConvergenceReport
    even: ConvergenceReport
    odd_target: ConvergenceReport
    even_target: ConvergenceReport
    odd_discrepancy: float
    even_discrepancy: float


def _odd_target(x: complex) -> ElementStream:
    # 1 - x/1 + x^2/1 - x^3/1 + ...
    return ElementStream(1, lambda n: (xpow(-x, n), 1), kind="float", label="odd-target")


def _even_target(x: complex) -> ElementStream:
    # x/1 + x^4/1 + x^8/1 + x^12/1 + ...
    return ElementStream(0, lambda n: (xpow(x, 1 if n == 1 else 4 * (n - 1)), 1), kind="float",
                         label="even-target")


def ramanujan_claim_check(x, tol: float = 1e-12, n_max: int = 2000,
                          window: int = DEFAULT_WINDOW) -> RamanujanCheck:
    """Compare the odd/even limits of ``1/K(1/x)`` with the two closed fractions.

    Discrepancies are absolute differences of the numerical limits.
    """
    x = complex(x)
    if not 0 < abs(x) < 1:
        raise ValueError("need 0 < |x| < 1")
    k_stream = ElementStream.from_family(catalog_get("rr").fam, 1 / x)
    odd, even = odd_even_reports(reciprocal(k_stream), tol, window, n_max)
    odd_t = limit_estimate(_odd_target(x), tol, window, n_max)
    even_t = limit_estimate(_even_target(x), tol, window, n_max)
    for r in (odd, even, odd_t, even_t):
        if r.status is not Status.CONVERGED:
            raise QCFError(f"numerical limit not found: {r}")
    return RamanujanCheck(
        x, odd, even, odd_t, even_t,
        abs(odd.value - odd_t.value),
        abs(even.value - even_t.value),
    )
