"""Complex numbers as ``"a+bi"`` strings for the CLI and JSON output."""

from __future__ import annotations

import math
import re

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_NUM}")
_IMAG = re.compile(rf"([+-]?)({_NUM})?i")
_BOTH = re.compile(rf"([+-]?{_NUM})([+-])({_NUM})?i")


def parse_complex_parts(text: str) -> tuple:
    """Split ``"a+bi"`` style text into decimal strings ``(re, im)``."""
    s = text.strip().replace(" ", "").replace("j", "i").replace("I", "i")
    if _REAL.fullmatch(s):
        return s, "0"
    m = _IMAG.fullmatch(s)
    if m:
        return "0", (m.group(1) or "") + (m.group(2) or "1")
    m = _BOTH.fullmatch(s)
    if m:
        return m.group(1), m.group(2) + (m.group(3) or "1")
    raise ValueError(f"cannot parse complex number {text!r}")


def parse_complex(text: str) -> complex:
    if text.strip().lower() == "inf":
        return complex(math.inf, 0.0)
    re_s, im_s = parse_complex_parts(text)
    return complex(float(re_s), float(im_s))


def format_complex(z) -> str:
    """``"a+bi"`` with shortest round-trip reals; the point at infinity is ``"inf"``."""
    if z is None:
        return None
    z_re, z_im = z.real, z.imag
    if isinstance(z_re, (int, float)):
        z_re, z_im = float(z_re), float(z_im)
        if math.isinf(z_re) or math.isinf(z_im):
            return "inf"
        sign = "-" if z_im < 0 else "+"
        return f"{z_re!r}{sign}{abs(z_im)!r}i"
    # mpmath values keep their working precision
    s_re, s_im = str(z_re), str(z_im)
    if "inf" in s_re or "inf" in s_im:
        return "inf"
    if s_im.startswith("-"):
        return f"{s_re}-{s_im[1:]}i"
    return f"{s_re}+{s_im}i"
