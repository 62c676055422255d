"""Approximants of ``b_0 + K(a_n/b_n)`` and numerical convergence tests.

Streams carry one of three number kinds:

``"float"``  binary64 complex values; with rescaling on, the recurrence
             runs on :class:`~qcf.xcomplex.XC` so elements and convergents
             of any size are representable.
``"exact"``  ints / :class:`fractions.Fraction`, for oracle tests.
``"mp"``     mpmath ``mpc`` values at a chosen decimal precision.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, Optional

from qcf.errors import PoleEncountered, ZeroContractionDenominator, ZeroElement
from qcf.qpoly import FamilySpec, denominator_at, numerator_at
from qcf.xcomplex import INF, XC, ratio, xpow

DEFAULT_TOL = 1e-10
DEFAULT_WINDOW = 8
DEFAULT_N_MAX = 2000

# divergence evidence: gaps stay above this multiple of tol ...
DIVERGENCE_FLOOR = 1e3
# ... and the latest window's largest gap keeps at least this fraction
# of the earlier reference windows' largest gap
NO_DECREASE_FRACTION = 0.5


def is_zero(v) -> bool:
    if isinstance(v, XC):
        return v.is_zero()
    return v == 0


def div(x, y):
    """Quotient that stays exact for integer operands."""
    if isinstance(x, int) and isinstance(y, int):
        return Fraction(x, y)
    return x / y


def is_inf(z) -> bool:
    if z is INF:
        return True
    if isinstance(z, complex):
        return math.isinf(z.real) or math.isinf(z.imag)
    if isinstance(z, Fraction):
        return False
    try:
        return math.isinf(float(abs(z)))
    except OverflowError:
        return True


class ElementStream:
    """Lazily produced elements ``(a_n, b_n)`` for ``n >= 1`` plus ``b_0``.

    ``element`` is any callable mapping n to the pair; results are
    memoised in a small LRU cache because contractions revisit
    neighbouring indices.  ``length`` is ``None`` for infinite streams.
    """

    def __init__(self, b0, element: Callable[[int], tuple], length: Optional[int] = None,
                 kind: str = "float", label: str = ""):
        if kind not in ("float", "exact", "mp"):
            raise ValueError(f"unknown number kind {kind!r}")
        self.b0 = b0
        self.length = length
        self.kind = kind
        self.label = label
        self._element = functools.lru_cache(maxsize=64)(element)

    def element(self, n: int) -> tuple:
        if n < 1 or (self.length is not None and n > self.length):
            raise IndexError(f"element index {n} outside stream")
        a, b = self._element(n)
        if is_zero(a):
            raise ZeroElement(n)
        return a, b

    def partial_denominator(self, n: int):
        return self.b0 if n == 0 else self.element(n)[1]

    def __repr__(self):
        ln = "inf" if self.length is None else self.length
        return f"ElementStream({self.label or 'anonymous'}, kind={self.kind}, length={ln})"

    # ------------------------------------------------------------------
    @classmethod
    def from_lists(cls, b0, a, b=None, kind: Optional[str] = None) -> "ElementStream":
        """Finite stream from explicit element lists (``b`` defaults to all ones)."""
        a = list(a)
        b = [1] * len(a) if b is None else list(b)
        if len(a) != len(b):
            raise ValueError("numerator and denominator lists differ in length")
        if kind is None:
            exact = all(isinstance(v, (int, Fraction)) for v in [b0, *a, *b])
            kind = "exact" if exact else "float"
        return cls(b0, lambda n: (a[n - 1], b[n - 1]), length=len(a), kind=kind, label="list")

    @classmethod
    def from_family(cls, fam: FamilySpec, q, precision: Optional[int] = None) -> "ElementStream":
        """Elements of a polynomial family evaluated at a point q.

        ``q`` given as ``int``/``Fraction`` yields an exact stream;
        ``precision`` (decimal digits) selects mpmath evaluation, in which
        case q may also be a ``(re, im)`` pair of decimal strings.
        """
        if precision is not None:
            return _mp_family_stream(fam, q, precision)
        if isinstance(q, (int, Fraction)) and not isinstance(q, bool):
            q = Fraction(q)
            return cls(
                Fraction(denominator_at(fam, 0).eval(q, 1)),
                lambda n: (numerator_at(fam, n).eval(q, 1), denominator_at(fam, n).eval(q, 1)),
                kind="exact", label=f"family@{q}",
            )
        ev = _FloatFamily(fam, complex(q))
        return cls(ev.denominator(0), lambda n: (ev.numerator(n), ev.denominator(n)),
                   kind="float", label=f"family@{complex(q)}")


class _FloatFamily:
    """Scaled binary64 evaluation of family elements at a fixed q."""

    def __init__(self, fam: FamilySpec, q: complex):
        self.q = q
        self.log2q = math.log2(abs(q)) if q != 0 else -math.inf
        self.f = [p.triples() for p in fam.f]
        self.g = None if fam.g is None else [p.triples() for p in fam.g]
        self.b0 = None if fam.b0 is None else fam.b0.triples()
        self.k = fam.k

    def _eval(self, monos, nu: int) -> XC:
        exps: dict = {}
        for c, d, j in monos:
            E = d + j * nu
            exps[E] = exps.get(E, 0) + c
        exps = {E: c for E, c in exps.items() if c}
        if not exps:
            return XC(0)
        q, lg = self.q, self.log2q
        if q == 0:
            return XC(exps.get(0, 0))
        top = max(exps) if lg >= 0 else min(exps)
        s = 0j
        for E, c in exps.items():
            d = E - top
            if d == 0:
                s += c
            elif d * lg > -1100:
                s += c * xpow(q, d).to_complex()
        return XC(s) * xpow(q, top)

    def numerator(self, n: int) -> XC:
        nu, s = divmod(n - 1, self.k)
        return self._eval(self.f[s], nu)

    def denominator(self, n: int) -> XC:
        if n == 0 and self.b0 is not None:
            return self._eval(self.b0, 0)
        if self.g is None:
            return XC(1)
        nu, s = divmod(n, self.k)
        return self._eval(self.g[s], nu)


@functools.lru_cache(maxsize=8)
def mp_context(precision: int):
    import mpmath

    ctx = mpmath.MPContext()
    ctx.dps = precision
    return ctx


def _mp_family_stream(fam: FamilySpec, q, precision: int) -> ElementStream:
    ctx = mp_context(precision)
    if isinstance(q, tuple):
        qm = ctx.mpc(ctx.mpf(q[0]), ctx.mpf(q[1]))
    else:
        q = complex(q)
        qm = ctx.mpc(q.real, q.imag)

    def ev(poly):
        total = ctx.mpc(0)
        for c, d, _ in poly.triples():
            total += c * qm**d
        return total

    return ElementStream(
        ev(denominator_at(fam, 0)),
        lambda n: (ev(numerator_at(fam, n)), ev(denominator_at(fam, n))),
        kind="mp", label=f"family@{q}[{precision} digits]",
    )


# ----------------------------------------------------------------------
# Recurrence


@dataclass
class ApproximantState:
    """Convergents ``(P_n, Q_n, P_{n-1}, Q_{n-1})`` at index n.

    On the rescaled path each entry is an :class:`XC` carrying its own
    power-of-two exponent; ``scale_exp`` reports the largest of them.
    """

    n: int
    Pn: Any
    Qn: Any
    Pprev: Any
    Qprev: Any

    @property
    def scale_exp(self) -> int:
        return max((v.e for v in (self.Pn, self.Qn, self.Pprev, self.Qprev)
                    if isinstance(v, XC) and not v.is_zero()), default=0)

    def value(self):
        P, Q = self.Pn, self.Qn
        if isinstance(P, XC) or isinstance(Q, XC):
            return ratio(XC.lift(P), XC.lift(Q))
        if is_zero(Q):
            return INF
        return P / Q


def states(stream: ElementStream, n_max: int, rescale: bool = True) -> Iterator[ApproximantState]:
    """Forward recurrence ``P_n = b_n P_{n-1} + a_n P_{n-2}`` (Q likewise)."""
    lift = XC.lift if (rescale and stream.kind == "float") else (lambda v: v)
    if stream.kind == "exact":
        one, zero = Fraction(1), Fraction(0)
    else:
        one, zero = lift(1), lift(0)
    P1, Q1, P0, Q0 = lift(stream.b0), one, one, zero
    yield ApproximantState(0, P1, Q1, P0, Q0)
    last = n_max if stream.length is None else min(n_max, stream.length)
    for n in range(1, last + 1):
        a, b = stream.element(n)
        a, b = lift(a), lift(b)
        P1, P0 = b * P1 + a * P0, P1
        Q1, Q0 = b * Q1 + a * Q0, Q1
        yield ApproximantState(n, P1, Q1, P0, Q0)


def approximants(stream: ElementStream, n_max: int, rescale: bool = True) -> Iterator[tuple]:
    """Yield ``(n, P_n/Q_n)`` for ``n = 0..n_max``; ``Q_n = 0`` gives ``INF``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    for st in states(stream, n_max, rescale):
        yield st.n, st.value()


def to_unit_denominators(stream: ElementStream) -> ElementStream:
    """Equivalent fraction ``b_0 + (a_1/b_1)/1 + K_{n>=2} (a_n/(b_n b_{n-1}))/1``."""

    def element(n):
        a, b = stream.element(n)
        if is_zero(b):
            raise PoleEncountered(n)
        if n == 1:
            return div(a, b), 1
        bp = stream.element(n - 1)[1]
        if is_zero(bp):
            raise PoleEncountered(n - 1)
        return div(a, b * bp), 1

    return ElementStream(stream.b0, element, length=stream.length, kind=stream.kind,
                         label=f"unit({stream.label})")


def reciprocal(stream: ElementStream) -> ElementStream:
    """``1/(b_0 + K)`` as ``0 + 1/b_0 + a_1/b_1 + ...``; approximants shift by one."""

    def element(n):
        if n == 1:
            return 1, stream.b0
        return stream.element(n - 1)

    length = None if stream.length is None else stream.length + 1
    return ElementStream(0, element, length=length, kind=stream.kind,
                         label=f"recip({stream.label})")


# ----------------------------------------------------------------------
# Convergence


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    NOT_CONVERGED = "NotConvergedByN"
    DIVERGENT = "DivergentOscillation"
    ZERO_ELEMENT = "ZeroElementHit"
    POLE = "PoleEncountered"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ConvergenceReport:
    status: Status
    value: Any = None
    n_used: int = 0
    final_gap: float = math.inf


def chordal(z, w):
    """Chordal distance on the Riemann sphere (values in [0, 2])."""
    zi, wi = is_inf(z), is_inf(w)
    if zi and wi:
        return 0.0
    if zi:
        z, w = w, z
        zi, wi = wi, zi
    if wi:
        az = abs(z)
        return 2.0 / _hyp1(az)
    az, aw = abs(z), abs(w)
    if az > 1 and aw > 1:
        # inversion is a chordal isometry and keeps magnitudes small
        z, w = 1 / z, 1 / w
        az, aw = abs(z), abs(w)
    return 2.0 * abs(z - w) / (_hyp1(az) * _hyp1(aw))


def _hyp1(r):
    if isinstance(r, float):
        return math.hypot(1.0, r)
    return (1 + r * r) ** 0.5


class _GapTracker:
    def __init__(self, tol: float, window: int):
        self.tol = tol
        self.window = window
        self.gaps: list = []
        self.prev = None
        self.n_last = 0
        self.converged = False

    def push(self, n: int, value):
        if self.converged:
            return
        if self.prev is not None:
            self.gaps.append(float(chordal(value, self.prev)))
            w = self.window
            if len(self.gaps) >= w and all(g <= self.tol for g in self.gaps[-w:]):
                self.converged = True
        self.prev = value
        self.n_last = n

    def report(self) -> ConvergenceReport:
        w = self.window
        final = max(self.gaps[-w:]) if self.gaps else math.inf
        if self.converged:
            return ConvergenceReport(Status.CONVERGED, self.prev, self.n_last, final)
        status = Status.DIVERGENT if self._diverging() else Status.NOT_CONVERGED
        return ConvergenceReport(status, None, self.n_last, final)

    def _diverging(self) -> bool:
        g, w = self.gaps, self.window
        if len(g) < 3 * w:
            return False
        last = g[-w:]
        if min(last) <= DIVERGENCE_FLOOR * self.tol:
            return False
        top = max(last)
        # no decrease over the last three windows, nor since mid-run
        mid = len(g) // 2
        for ref in (g[-3 * w:-2 * w], g[mid - w // 2: mid - w // 2 + w]):
            if top < NO_DECREASE_FRACTION * max(ref):
                return False
        return True


def _check_args(tol, window, n_max):
    if not tol > 0:
        raise ValueError("tol must be positive")
    if window < 2:
        raise ValueError("window must be at least 2")
    if n_max <= window:
        raise ValueError("n_max must exceed window")


_FAILURES = {ZeroElement: Status.ZERO_ELEMENT, PoleEncountered: Status.POLE,
             ZeroContractionDenominator: Status.POLE}


def run_reports(stream: ElementStream, tol: float = DEFAULT_TOL, window: int = DEFAULT_WINDOW,
                n_max: int = DEFAULT_N_MAX, parts=("full", "odd", "even"),
                rescale: bool = True) -> dict:
    """Convergence reports for the full sequence and its odd/even subsequences.

    All requested parts come from one approximant run, which stops as
    soon as every requested part has converged.
    """
    _check_args(tol, window, n_max)
    trackers = {p: _GapTracker(tol, window) for p in parts}
    full, odd, even = (trackers.get(p) for p in ("full", "odd", "even"))
    try:
        for n, value in approximants(stream, n_max, rescale):
            if full is not None:
                full.push(n, value)
            sub = odd if n % 2 else even
            if sub is not None:
                sub.push(n, value)
            if all(t.converged for t in trackers.values()):
                break
            if full is not None and odd is not None and even is not None and _split(full, odd, even):
                return {"full": ConvergenceReport(Status.DIVERGENT, None, full.n_last, full.gaps[-1]),
                        "odd": odd.report(), "even": even.report()}
    except tuple(_FAILURES) as exc:
        st = _FAILURES[type(exc)]
        return {p: ConvergenceReport(st, None, t.n_last, math.inf) for p, t in trackers.items()}
    return {p: t.report() for p, t in trackers.items()}


def _split(full: _GapTracker, odd: _GapTracker, even: _GapTracker) -> bool:
    """Odd and even parts settled on limits too far apart for the full sequence.

    From here on every full-sequence gap stays near the distance between
    the two limits, so running on to ``n_max`` can only end in
    DivergentOscillation; stopping early gives the same report.
    """
    if not (odd.converged and even.converged) or full.converged:
        return False
    return chordal(odd.prev, even.prev) > 2 * DIVERGENCE_FLOOR * full.tol


def limit_estimate(stream: ElementStream, tol: float = DEFAULT_TOL, window: int = DEFAULT_WINDOW,
                   n_max: int = DEFAULT_N_MAX, rescale: bool = True) -> ConvergenceReport:
    """Numerical limit of the approximants, judged by chordal gaps.

    Converged: the last ``window`` consecutive gaps are all ``<= tol``.
    DivergentOscillation: at ``n_max`` the smallest recent gap still
    exceeds ``1e3 * tol`` and the largest recent gap has not fallen
    below half of that of the window two windows earlier, nor of the
    window at mid-run.  Anything else is NotConvergedByN.
    """
    return run_reports(stream, tol, window, n_max, ("full",), rescale)["full"]


def odd_even_reports(stream: ElementStream, tol: float = DEFAULT_TOL, window: int = DEFAULT_WINDOW,
                     n_max: int = DEFAULT_N_MAX, rescale: bool = True) -> tuple:
    """``(odd, even)`` reports on ``P_{2n+1}/Q_{2n+1}`` and ``P_{2n}/Q_{2n}``."""
    r = run_reports(stream, tol, window, n_max, ("odd", "even"), rescale)
    return r["odd"], r["even"]
