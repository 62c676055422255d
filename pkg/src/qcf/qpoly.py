"""Exact polynomials in Z[q][x] and the periodic families built from them.

A family with period ``k`` generates partial numerators by
``a_{nk+s}(q) = f_s(q^n)`` and, optionally, partial denominators by
``b_{nk+s-1}(q) = g_{s-1}(q^n)``.  Everything here is exact integer
arithmetic; numerical evaluation lives in :mod:`qcf.cfeval`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional


class PolynomialQX:
    """Sparse polynomial with integer coefficients in ``q`` and ``x``.

    Terms are kept in a dict ``{(qexp, xexp): coeff}`` with zero
    coefficients dropped.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[dict] = None):
        clean = {}
        for (d, j), c in (terms or {}).items():
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if d < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial q^{d} x^{j}")
            if c:
                clean[(int(d), int(j))] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialQX is immutable")

    @classmethod
    def from_triples(cls, triples: Iterable) -> "PolynomialQX":
        """Build from ``[coeff, qexp, xexp]`` triples, combining like terms."""
        acc: dict = {}
        for triple in triples:
            c, d, j = triple
            acc[(d, j)] = acc.get((d, j), 0) + c
        return cls(acc)

    @classmethod
    def parse(cls, text: str) -> "PolynomialQX":
        """Parse expressions such as ``"q*x^4 + 3*q*x^3 - 2"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        acc: dict = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff, d, j = 1, 0, 0
            for factor in body.split("*"):
                m = re.fullmatch(r"([qx])(?:\^(\d+))?|(\d+)", factor)
                if m is None:
                    raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
                if m.group(3) is not None:
                    coeff *= int(m.group(3))
                elif m.group(1) == "q":
                    d += int(m.group(2) or 1)
                else:
                    j += int(m.group(2) or 1)
            if sign == "-":
                coeff = -coeff
            acc[(d, j)] = acc.get((d, j), 0) + coeff
        return cls(acc)

    @classmethod
    def constant(cls, c: int) -> "PolynomialQX":
        return cls({(0, 0): c})

    # ------------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def triples(self) -> list:
        """Terms as ``[coeff, qexp, xexp]`` sorted by ``(xexp, qexp)``."""
        return [[c, d, j] for (d, j), c in sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))]

    def is_zero(self) -> bool:
        return not self._terms

    def degree_q(self) -> int:
        """Degree in q; -1 for the zero polynomial."""
        return max((d for d, _ in self._terms), default=-1)

    def degree_x(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((d + j for d, j in self._terms), default=-1)

    def leading_coefficient_q(self) -> int:
        """Coefficient of the highest power of q, for polynomials free of x."""
        if self.degree_x() > 0:
            raise ValueError("leading coefficient in q requires an x-free polynomial")
        if not self._terms:
            return 0
        return self._terms[(self.degree_q(), 0)]

    def x_slices(self) -> dict:
        """Split as ``sum_j p_j(q) x^j``; returns ``{j: p_j}``."""
        out: dict = {}
        for (d, j), c in self._terms.items():
            out.setdefault(j, {})[(d, 0)] = c
        return {j: PolynomialQX(t) for j, t in out.items()}

    def substitute_power(self, nu: int) -> "PolynomialQX":
        """Exact ``p(q, q^nu)`` as a polynomial in q alone."""
        if nu < 0:
            raise ValueError("substitution exponent must be non-negative")
        acc: dict = {}
        for (d, j), c in self._terms.items():
            key = (d + j * nu, 0)
            acc[key] = acc.get(key, 0) + c
        return PolynomialQX(acc)

    def eval(self, q, x):
        """Evaluate at numeric ``q`` and ``x``; term order is fixed by ``(xexp, qexp)``."""
        total = 0
        for c, d, j in self.triples():
            total = total + c * q**d * x**j
        return total

    # ------------------------------------------------------------------
    def __add__(self, other):
        other = _promote(other)
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, 0) + c
        return PolynomialQX(acc)

    __radd__ = __add__

    def __neg__(self):
        return PolynomialQX({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) - self

    def __mul__(self, other):
        other = _promote(other)
        acc: dict = {}
        for (d1, j1), c1 in self._terms.items():
            for (d2, j2), c2 in other._terms.items():
                key = (d1 + d2, j1 + j2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return PolynomialQX(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolynomialQX.constant(other)
        if not isinstance(other, PolynomialQX):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __reduce__(self):
        return (PolynomialQX, (self._terms,))

    def __repr__(self):
        return f"PolynomialQX({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (d, j), c in sorted(self._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][1])):
            mono = []
            if d:
                mono.append("q" if d == 1 else f"q^{d}")
            if j:
                mono.append("x" if j == 1 else f"x^{j}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                term = str(mag)
            elif mag == 1:
                term = body
            else:
                term = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _promote(p) -> PolynomialQX:
    if isinstance(p, PolynomialQX):
        return p
    if isinstance(p, int):
        return PolynomialQX.constant(p)
    raise TypeError(f"cannot combine PolynomialQX with {type(p).__name__}")


def poly_eval(p: PolynomialQX, q, x):
    return p.eval(q, x)


ONE = PolynomialQX.constant(1)


@dataclass(frozen=True)
class FamilySpec:
    """Periodic family of partial numerators (and optionally denominators).

    ``g`` absent means every partial denominator is 1 and ``b_0 = 1``.
    With ``g`` present, ``b_0`` defaults to ``g_0(q^0)``.  An explicit
    ``b0`` overrides either default; its x is read as ``q^0 = 1``.
    """

    k: int
    f: tuple
    g: Optional[tuple] = None
    b0: Optional[PolynomialQX] = None

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if self.g is not None:
            object.__setattr__(self, "g", tuple(self.g))
        if self.k < 1:
            raise ValueError("period k must be at least 1")
        if len(self.f) != self.k:
            raise ValueError(f"expected {self.k} numerator polynomials, got {len(self.f)}")
        if any(p.is_zero() for p in self.f):
            raise ValueError("numerator polynomials must be nonzero")
        if self.g is not None and len(self.g) != self.k:
            raise ValueError(f"expected {self.k} denominator polynomials, got {len(self.g)}")

    @property
    def has_denominators(self) -> bool:
        return self.g is not None

    def to_json(self) -> dict:
        out = {"k": self.k, "f": [p.triples() for p in self.f]}
        if self.g is not None:
            out["g"] = [p.triples() for p in self.g]
        if self.b0 is not None:
            out["b0"] = self.b0.triples()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        try:
            k = data["k"]
            f = [PolynomialQX.from_triples(p) for p in data["f"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family spec: {exc}") from exc
        g = data.get("g")
        if g is not None:
            g = [PolynomialQX.from_triples(p) for p in g]
        b0 = data.get("b0")
        if b0 is not None:
            b0 = PolynomialQX.from_triples(b0)
        if not isinstance(k, int):
            raise ValueError("k must be an integer")
        return cls(k=k, f=f, g=g, b0=b0)

    @classmethod
    def load(cls, path) -> "FamilySpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def numerator_at(fam: FamilySpec, n: int) -> PolynomialQX:
    """Exact ``a_n(q)`` for ``n >= 1``."""
    if n < 1:
        raise IndexError(f"partial numerators start at n=1, got {n}")
    nu, s = divmod(n - 1, fam.k)
    return fam.f[s].substitute_power(nu)


def denominator_at(fam: FamilySpec, n: int) -> PolynomialQX:
    """Exact ``b_n(q)`` for ``n >= 0``."""
    if n < 0:
        raise IndexError(f"partial denominators start at n=0, got {n}")
    if n == 0 and fam.b0 is not None:
        return fam.b0.substitute_power(0)
    if fam.g is None:
        return ONE
    nu, s = divmod(n, fam.k)
    return fam.g[s].substitute_power(nu)


def element_at(fam: FamilySpec, n: int) -> tuple:
    """``(a_n, b_n)`` as exact polynomials in q."""
    return numerator_at(fam, n), denominator_at(fam, n)


# ----------------------------------------------------------------------
# Structural hypotheses


@dataclass(frozen=True)
class HypothesisReport:
    satisfied: bool
    m: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    r1: Optional[int] = None
    r2: Optional[int] = None
    La: Optional[int] = None
    Lb: Optional[int] = None
    failure_reason: Optional[str] = None
    verified_horizon: int = 0
    tail_start: Optional[int] = None
    denominator_tail_start: Optional[int] = None


@dataclass(frozen=True)
class _Regime:
    """Degree law ``deg(e_i) = intercept + (i - first) * step`` with lead ``lead``."""

    step: int
    intercept: int
    lead: int
    nu_star: int


class _Failure(Exception):
    pass


def _asymptotic_regime(polys, label: str) -> _Regime:
    # For nu beyond the crossover the largest x-power dominates:
    # deg_q p(q^nu) = deg p_J + nu*J, lead = lc(p_J).
    k = len(polys)
    tops, nu_star = [], 0
    for s, p in enumerate(polys):
        slices = p.x_slices()
        J = max(slices)
        DJ = slices[J].degree_q()
        for j, pj in slices.items():
            if j < J:
                nu_star = max(nu_star, (pj.degree_q() - DJ) // (J - j) + 1)
        tops.append((J, DJ, slices[J].leading_coefficient_q()))
    Js = {t[0] for t in tops}
    if len(Js) != 1:
        raise _Failure(f"{label}: x-degrees {[t[0] for t in tops]} differ, so degrees cannot grow by a fixed step")
    J = Js.pop()
    if J % k:
        raise _Failure(f"{label}: x-degree {J} is not a multiple of the period {k}")
    step = J // k
    if step < 1:
        raise _Failure(f"{label}: degrees do not grow (step 0)")
    for s in range(k - 1):
        if tops[s + 1][1] - tops[s][1] != step:
            raise _Failure(
                f"{label}: tail degrees of consecutive elements differ by "
                f"{tops[s + 1][1] - tops[s][1]}, expected {step}"
            )
    leads = {t[2] for t in tops}
    if len(leads) != 1:
        raise _Failure(f"{label}: tail leading coefficients {[t[2] for t in tops]} differ")
    return _Regime(step=step, intercept=tops[0][1], lead=leads.pop(), nu_star=nu_star)


def _explicit_tail_start(element, first: int, regime: _Regime, horizon: int, label: str,
                         allow_zero: bool) -> int:
    start = first
    for i in range(first, horizon + 1):
        p = element(i)
        if p.is_zero():
            if not allow_zero:
                raise _Failure(f"{label}: element {i} vanishes identically")
            start = i + 1
            continue
        if p.degree_q() != regime.intercept + (i - first) * regime.step or \
                p.leading_coefficient_q() != regime.lead:
            start = i + 1
    # symbolic regime covers nu >= nu_star, which lies below the horizon
    return start


def _horizon(fam: FamilySpec, nu_star: int) -> int:
    return max(fam.k * (nu_star + 2), 16) + fam.k


def check_T4_hypotheses(fam: FamilySpec) -> HypothesisReport:
    """Degree step and common leading coefficient for unit-denominator families.

    The asymptotic regime is derived symbolically; every element below
    the crossover (and a margin past it) is expanded exactly, and the
    first index from which the regime holds is reported as
    ``tail_start``.
    """
    if fam.has_denominators:
        raise ValueError("check_T4_hypotheses needs a family without denominators")
    try:
        reg = _asymptotic_regime(fam.f, "numerators")
    except _Failure as exc:
        return HypothesisReport(False, failure_reason=str(exc))
    horizon = _horizon(fam, reg.nu_star)
    try:
        start = _explicit_tail_start(lambda i: numerator_at(fam, i), 1, reg, horizon,
                                     "numerators", allow_zero=False)
    except _Failure as exc:
        return HypothesisReport(False, failure_reason=str(exc), verified_horizon=horizon)
    return HypothesisReport(True, m=reg.step, La=reg.lead, r1=reg.intercept,
                            verified_horizon=horizon, tail_start=start)


def check_Tp2_hypotheses(fam: FamilySpec) -> HypothesisReport:
    """Degree laws ``(n-1)a + r1`` and ``n b + r2`` with common leading coefficients."""
    if not fam.has_denominators:
        raise ValueError("check_Tp2_hypotheses needs a family with denominators")
    try:
        ra = _asymptotic_regime(fam.f, "numerators")
        rb = _asymptotic_regime(fam.g, "denominators")
    except _Failure as exc:
        return HypothesisReport(False, failure_reason=str(exc))
    horizon = _horizon(fam, max(ra.nu_star, rb.nu_star))
    try:
        sa = _explicit_tail_start(lambda i: numerator_at(fam, i), 1, ra, horizon,
                                  "numerators", allow_zero=False)
        sb = _explicit_tail_start(lambda i: denominator_at(fam, i), 0, rb, horizon,
                                  "denominators", allow_zero=True)
    except _Failure as exc:
        return HypothesisReport(False, failure_reason=str(exc), verified_horizon=horizon)
    return HypothesisReport(True, a=ra.step, b=rb.step, r1=ra.intercept, r2=rb.intercept,
                            La=ra.lead, Lb=rb.lead, verified_horizon=horizon,
                            tail_start=sa, denominator_tail_start=sb)


def check_hypotheses(fam: FamilySpec) -> HypothesisReport:
    if fam.has_denominators:
        return check_Tp2_hypotheses(fam)
    return check_T4_hypotheses(fam)
