"""Extended-exponent complex numbers.

Elements of q-continued fractions grow like ``|q|^(c n)`` and leave the
binary64 range after a few hundred terms.  :class:`XC` keeps a complex
mantissa whose larger component lies in ``[0.5, 1)`` together with an
unbounded power-of-two exponent, so products and sums never overflow.
Rescaling by powers of two is exact, so no precision is lost relative
to plain complex arithmetic.
"""

from __future__ import annotations

import cmath
import math

_frexp = math.frexp
_ldexp = math.ldexp

# beyond this exponent gap the smaller addend is below one ulp
_GAP = 1100


class XC:
    __slots__ = ("m", "e")

    def __init__(self, m=0j, e: int = 0):
        m = complex(m)
        r = max(abs(m.real), abs(m.imag))
        if r == 0.0:
            self.m, self.e = 0j, 0
            return
        if math.isinf(r) or math.isnan(r):
            raise OverflowError(f"non-finite mantissa {m!r}")
        _, k = _frexp(r)
        self.m = complex(_ldexp(m.real, -k), _ldexp(m.imag, -k))
        self.e = e + k

    @classmethod
    def _raw(cls, m: complex, e: int) -> "XC":
        out = object.__new__(cls)
        out.m, out.e = m, e
        return out

    @staticmethod
    def lift(v) -> "XC":
        return v if isinstance(v, XC) else XC(v)

    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.m == 0j

    def __bool__(self):
        return self.m != 0j

    def __neg__(self):
        return XC._raw(-self.m, self.e)

    def __mul__(self, other):
        if not isinstance(other, XC):
            other = XC(other)
        return XC(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, XC):
            other = XC(other)
        if other.m == 0j:
            raise ZeroDivisionError("XC division by zero")
        return XC(self.m / other.m, self.e - other.e)

    def __rtruediv__(self, other):
        return XC(other) / self

    def __add__(self, other):
        if not isinstance(other, XC):
            other = XC(other)
        if self.m == 0j:
            return other
        if other.m == 0j:
            return self
        d = self.e - other.e
        if d >= 0:
            big, small = self, other
        else:
            big, small, d = other, self, -d
        if d > _GAP:
            return big
        sm = small.m
        return XC(big.m + complex(_ldexp(sm.real, -d), _ldexp(sm.imag, -d)), big.e)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, XC):
            other = XC(other)
        return self + (-other)

    def __rsub__(self, other):
        return XC(other) - self

    def __abs__(self) -> float:
        return _scale(abs(self.m), self.e)

    def conjugate(self) -> "XC":
        return XC._raw(self.m.conjugate(), self.e)

    def to_complex(self) -> complex:
        """Nearest binary64 value; overflow gives infinite components."""
        m, e = self.m, self.e
        return complex(_scale(m.real, e), _scale(m.imag, e))

    __complex__ = to_complex

    def log2_abs(self) -> float:
        if self.m == 0j:
            return -math.inf
        return math.log2(abs(self.m)) + self.e

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)):
            other = XC(other)
        if not isinstance(other, XC):
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __hash__(self):
        return hash((self.m, self.e))

    def __repr__(self):
        return f"XC({self.m!r}, {self.e})"


def _scale(v: float, e: int) -> float:
    if v == 0.0:
        return 0.0
    if e > 1100:
        return math.copysign(math.inf, v)
    if e < -1200:
        return math.copysign(0.0, v)
    try:
        return _ldexp(v, e)
    except OverflowError:
        return math.copysign(math.inf, v)


def ratio(p: XC, q: XC) -> complex:
    """``p/q`` as a binary64 complex; ``q == 0`` gives the point at infinity."""
    if q.m == 0j:
        return INF
    return XC(p.m / q.m, p.e - q.e).to_complex()


INF = complex(math.inf, 0.0)


def xpow(z: complex, n: int) -> XC:
    """``z**n`` for a nonnegative or negative integer n without overflow.

    Small results use ordinary complex power; large ones go through the
    logarithm, keeping real bases exactly real.
    """
    if n == 0:
        return XC(1)
    if z == 0:
        if n < 0:
            raise ZeroDivisionError("0 to a negative power")
        return XC(0)
    r = abs(z)
    lg = n * math.log2(r)
    if abs(lg) < 900 and -100 <= n <= 100:
        return XC(z**n)
    k = math.floor(lg)
    mag = 2.0 ** (lg - k)
    if z.imag == 0.0:
        sign = -1.0 if (z.real < 0 and n % 2) else 1.0
        return XC(sign * mag, k)
    return XC(mag * cmath.exp(1j * (n * cmath.phase(z))), k)
