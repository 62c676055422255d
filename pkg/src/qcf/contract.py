"""Even and odd parts of a continued fraction as new element streams.

The contractions are written with subtraction between elements in the
classical formulas; here the minus signs are folded into the partial
numerators so that the output is an ordinary ``b_0 + K(a_n/b_n)``
stream.  The n-th approximant of :func:`even_part` is ``P_{2n}/Q_{2n}``
of the input; that of :func:`odd_part` is ``P_{2n+1}/Q_{2n+1}``.
"""

from __future__ import annotations

import enum

from qcf.cfeval import ElementStream, div, is_zero
from qcf.errors import PoleEncountered, ZeroContractionDenominator


class ContractionKind(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


def _divisor(stream: ElementStream, n: int):
    b = stream.partial_denominator(n)
    if is_zero(b):
        raise PoleEncountered(n)
    return b


def even_part(stream: ElementStream) -> ElementStream:
    s = stream

    def element(n):
        a = lambda i: s.element(i)[0]  # noqa: E731
        b = s.partial_denominator
        if n == 1:
            b2 = _divisor(s, 2)
            num = b2 * a(1)
            den = b2 * b(1) + a(2)
        else:
            r = div(b(2 * n), _divisor(s, 2 * n - 2))
            num = -(a(2 * n - 2) * a(2 * n - 1) * r)
            den = a(2 * n) + b(2 * n - 1) * b(2 * n) + a(2 * n - 1) * r
        if is_zero(den):
            raise ZeroContractionDenominator(n)
        return num, den

    length = None if s.length is None else s.length // 2
    return ElementStream(s.b0, element, length=length, kind=s.kind, label=f"even({s.label})")


def odd_part(stream: ElementStream) -> ElementStream:
    s = stream
    if s.length is not None and s.length < 1:
        raise ValueError("odd part needs at least one element")
    a1, b1 = s.element(1)
    if is_zero(b1):
        raise PoleEncountered(1)
    b0 = div(s.b0 * b1 + a1, b1)

    def element(n):
        a = lambda i: s.element(i)[0]  # noqa: E731
        b = s.partial_denominator
        if n == 1:
            num = -div(a(1) * a(2) * b(3), b1)
            den = b1 * (a(3) + b(2) * b(3)) + a(2) * b(3)
        else:
            r = div(b(2 * n + 1), _divisor(s, 2 * n - 1))
            num = -(a(2 * n - 1) * a(2 * n) * r)
            if n == 2:
                # the n=1 denominator carries an extra factor b_1
                num = num * b1
            den = a(2 * n + 1) + b(2 * n) * b(2 * n + 1) + a(2 * n) * r
        if is_zero(den):
            raise ZeroContractionDenominator(n)
        return num, den

    length = None if s.length is None else (s.length - 1) // 2
    return ElementStream(b0, element, length=length, kind=s.kind, label=f"odd({s.label})")


def contract(stream: ElementStream, kind) -> ElementStream:
    kind = ContractionKind(kind)
    return even_part(stream) if kind is ContractionKind.EVEN else odd_part(stream)
