"""Arithmetic and metric structure on the extended complex plane.

Points are plain ``complex`` values plus the single point at infinity,
represented by the ``INF`` sentinel. ``INF`` is deliberately not an IEEE
infinity: the sphere has one point at infinity, with no sign or direction.
"""

from __future__ import annotations

import math
import re

from .errors import InputError

__all__ = [
    "INF",
    "Infinity",
    "Point",
    "as_point",
    "chordal_distance",
    "format_point",
    "is_inf",
    "parse_point",
]


class Infinity:
    """The point at infinity; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = Infinity()

Point = complex | Infinity


def is_inf(p) -> bool:
    return isinstance(p, Infinity)


def as_point(value) -> Point:
    """Coerce a number to a sphere point, rejecting NaN and IEEE infinities."""
    if isinstance(value, Infinity):
        return INF
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(
            "finite points must have finite components; use INF for the point at infinity"
        )
    return z


def chordal_distance(p: Point, q: Point) -> float:
    """Chordal metric on the sphere, in [0, 2]; infinity is an ordinary point.

    d(p, q) = 2|p - q| / (sqrt(1 + |p|^2) sqrt(1 + |q|^2)), extended by the
    usual limit when an argument is the point at infinity.
    """
    p = as_point(p)
    q = as_point(q)
    p_inf = p is INF
    q_inf = q is INF
    if p_inf and q_inf:
        return 0.0
    if p_inf:
        return 2.0 / math.hypot(1.0, abs(q))
    if q_inf:
        return 2.0 / math.hypot(1.0, abs(p))
    return 2.0 * abs(p - q) / (math.hypot(1.0, abs(p)) * math.hypot(1.0, abs(q)))


# Decimal or scientific-notation number, without sign.
_DEC = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_FIRST_NUM = re.compile(r"[+-]?" + _DEC)
_SIGNED_NUM = re.compile(r"[+-]" + _DEC)


def parse_point(text: str) -> Point:
    """Parse a complex literal such as "1.5", "-2i", "1-2e3i", or "inf".

    Grammar: [SIGN] DEC [SIGN DEC 'i'] | [SIGN] DEC 'i' | 'inf'. The literal
    "i" alone is not accepted; write "1i".
    """
    s = text.strip()
    if s == "inf":
        return INF
    if not s:
        raise InputError("empty complex literal")
    first = _FIRST_NUM.match(s)
    if first is None:
        raise InputError(f"invalid complex literal {text!r}: expected a number at position 0")
    pos = first.end()
    if pos == len(s):
        return _finite(float(first.group()), 0.0, text)
    if s[pos] == "i" and pos + 1 == len(s):
        return _finite(0.0, float(first.group()), text)
    second = _SIGNED_NUM.match(s, pos)
    if second is None:
        raise InputError(
            f"invalid complex literal {text!r}: expected a signed imaginary part at position {pos}"
        )
    pos = second.end()
    if pos == len(s) or s[pos] != "i" or pos + 1 != len(s):
        raise InputError(
            f"invalid complex literal {text!r}: expected a trailing 'i' at position {pos}"
        )
    return _finite(float(first.group()), float(second.group()), text)


def _finite(re_part: float, im_part: float, text: str) -> complex:
    if not (math.isfinite(re_part) and math.isfinite(im_part)):
        raise InputError(f"complex literal {text!r} overflows double precision")
    return complex(re_part, im_part)


def format_point(p: Point) -> str:
    """Shortest round-trip text for a point; parse_point(format_point(p)) == p."""
    if isinstance(p, Infinity):
        return "inf"
    z = complex(p)
    re_s = repr(z.real)
    if z.imag == 0.0:
        return re_s
    im_s = repr(z.imag)
    if z.real == 0.0:
        return im_s + "i"
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    return re_s + im_s + "i"
