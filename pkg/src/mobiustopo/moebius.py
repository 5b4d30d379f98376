"""Moebius transformations z -> (az + b) / (cz + d) and their determinant-1
matrix representatives.

A coefficient quadruple and any nonzero scalar multiple of it denote the same
map, so map equality is projective: two maps are equal when their canonical
determinant-1 representatives agree entrywise. A determinant-1 matrix is only
determined by the map up to an overall sign; ``UnimodularMatrix`` pins a
canonical representative of each {M, -M} pair so that representatives can be
compared entrywise.
"""

from __future__ import annotations

import cmath
import math

from .errors import (
    DegenerateInputError,
    InputError,
    InvalidInputError,
    SingularMapError,
    VerificationError,
)
from .extended_plane import (
    INF,
    Infinity,
    Point,
    as_point,
    chordal_distance,
    format_point,
    parse_point,
)

# Default gate for unit-modulus and equality decisions across the package.
EPS_UNIT = 1e-9
# Scale-invariant degeneracy threshold for ad - bc, and the sign-pivot gate.
DEGENERACY_EPS = 1e-12

__all__ = [
    "DEGENERACY_EPS",
    "EPS_UNIT",
    "MoebiusMap",
    "UnimodularMatrix",
    "format_map",
    "parse_map",
]


class MoebiusMap:
    """The map z -> (az + b) / (cz + d) with ad - bc != 0."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        coeffs = []
        for name, value in zip("abcd", (a, b, c, d)):
            w = complex(value)
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                raise InvalidInputError(f"coefficient {name} must be finite")
            coeffs.append(w)
        a, b, c, d = coeffs
        scale = max(abs(a), abs(b), abs(c), abs(d))
        det = a * d - b * c
        if scale == 0.0 or abs(det) < DEGENERACY_EPS * scale * scale:
            raise SingularMapError(
                f"ad - bc = {det!r} is degenerate for coefficients of scale {scale!r}"
            )
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def scaling(cls, mu) -> "MoebiusMap":
        """The map z -> mu * z."""
        return cls(mu, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, beta) -> "MoebiusMap":
        """The map z -> z + beta."""
        return cls(1.0, beta, 0.0, 1.0)

    def __call__(self, z: Point) -> Point:
        z = as_point(z)
        if z is INF:
            if self.c == 0:
                return INF
            w = self.a / self.c
        else:
            den = self.c * z + self.d
            if den == 0:
                return INF
            w = (self.a * z + self.b) / den
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            return INF
        return w

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other: (self.compose(other))(z) = self(other(z))."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        """Group inverse via the adjugate quadruple (d, -b, -c, a)."""
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def normalize(self) -> "UnimodularMatrix":
        """Canonical determinant-1 representative (principal square root of ad - bc)."""
        root = cmath.sqrt(self.det)
        return UnimodularMatrix(self.a / root, self.b / root, self.c / root, self.d / root)

    def trace(self) -> complex:
        """Trace of the canonical determinant-1 representative."""
        m = self.normalize()
        return m.trace

    def identity_distance(self) -> float:
        """Largest entrywise deviation of the canonical representative from I."""
        m = self.normalize()
        return max(abs(m.m11 - 1.0), abs(m.m12), abs(m.m21), abs(m.m22 - 1.0))

    def is_identity(self, eps: float = EPS_UNIT) -> bool:
        return self.identity_distance() <= eps

    def equivalent(self, other: "MoebiusMap", tol: float = EPS_UNIT) -> bool:
        """Projective map equality via canonical representatives."""
        return self.normalize().isclose(other.normalize(), tol)

    @classmethod
    def from_three_points(cls, p1, p2, p3, q1, q2, q3) -> "MoebiusMap":
        """The unique map sending p1, p2, p3 to q1, q2, q3 respectively.

        Built from the two cross-ratio maps onto (0, 1, inf); the result is
        verified at the three source points (chordal residual <= 1e-9).
        """
        src = tuple(as_point(p) for p in (p1, p2, p3))
        dst = tuple(as_point(q) for q in (q1, q2, q3))
        for label, triple in (("source", src), ("target", dst)):
            for i in range(3):
                for j in range(i + 1, 3):
                    if _same_point(triple[i], triple[j]):
                        raise DegenerateInputError(
                            f"{label} points {i + 1} and {j + 1} coincide"
                        )
        try:
            to_standard_src = cls._standard_triple(src)
            to_standard_dst = cls._standard_triple(dst)
            result = to_standard_dst.inverse().compose(to_standard_src)
        except SingularMapError as exc:
            raise DegenerateInputError(
                "nearly coincident points give a degenerate map"
            ) from exc
        for p, q in zip(src, dst):
            if chordal_distance(result(p), q) > 1e-9:
                raise VerificationError(
                    "three-point interpolation failed its residual check"
                )
        return result

    @staticmethod
    def _standard_triple(points) -> "MoebiusMap":
        # The cross-ratio map sending (p1, p2, p3) to (0, 1, inf).
        p1, p2, p3 = points
        if p1 is INF:
            return MoebiusMap(0.0, p2 - p3, 1.0, -p3)
        if p2 is INF:
            return MoebiusMap(1.0, -p1, 1.0, -p3)
        if p3 is INF:
            return MoebiusMap(1.0, -p1, 0.0, p2 - p1)
        return MoebiusMap(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))

    def __repr__(self):
        return f"MoebiusMap({format_map(self)!r})"


def _same_point(x: Point, y: Point) -> bool:
    if x is INF or y is INF:
        return x is y
    return x == y


def _sign_canonical(entries) -> bool:
    # First entry with modulus above the pivot gate decides the sign: it must
    # have positive real part, or (if its real part is negligible relative to
    # its modulus) positive imaginary part.
    for v in entries:
        mod = abs(v)
        if mod > DEGENERACY_EPS:
            if abs(v.real) <= DEGENERACY_EPS * mod:
                return v.imag > 0.0
            return v.real > 0.0
    return True


class UnimodularMatrix:
    """2x2 complex matrix of determinant 1, one representative of a {M, -M} pair.

    ``is_canonical`` records which representative is stored. Construction
    canonicalizes the sign by default; pass canonicalize=False to keep the
    given representative (used where similarity to another matrix must be
    preserved exactly).
    """

    __slots__ = ("m11", "m12", "m21", "m22", "is_canonical")

    def __init__(self, m11, m12, m21, m22, canonicalize: bool = True):
        entries = tuple(complex(v) for v in (m11, m12, m21, m22))
        for v in entries:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InvalidInputError("matrix entries must be finite")
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if abs(det - 1.0) > DEGENERACY_EPS:
            raise InvalidInputError(f"determinant must be 1, got {det!r}")
        if canonicalize and not _sign_canonical(entries):
            entries = tuple(-v for v in entries)
        self.m11, self.m12, self.m21, self.m22 = entries
        self.is_canonical = _sign_canonical(entries)

    @property
    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def rows(self) -> tuple:
        return ((self.m11, self.m12), (self.m21, self.m22))

    @property
    def trace(self) -> complex:
        return self.m11 + self.m22

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def canonical(self) -> "UnimodularMatrix":
        """The canonical-sign representative of this matrix's {M, -M} pair."""
        if self.is_canonical:
            return self
        return UnimodularMatrix(*(-v for v in self.entries), canonicalize=False)

    def inverse(self) -> "UnimodularMatrix":
        # Adjugate equals inverse at determinant 1.
        return UnimodularMatrix(self.m22, -self.m12, -self.m21, self.m11,
                                canonicalize=False)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        # The true product representative; canonicalizing here would flip
        # signs mid-computation. Callers compare +-classes via canonical().
        return UnimodularMatrix(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
            canonicalize=False,
        )

    def isclose(self, other: "UnimodularMatrix", tol: float = EPS_UNIT) -> bool:
        """Entrywise comparison of the two canonical representatives."""
        a = self.canonical()
        b = other.canonical()
        return max(abs(x - y) for x, y in zip(a.entries, b.entries)) <= tol

    def to_map(self) -> MoebiusMap:
        return MoebiusMap(*self.entries)

    def __repr__(self):
        cells = ", ".join(format_point(v) for v in self.entries)
        return f"UnimodularMatrix({cells})"


def parse_map(text: str) -> MoebiusMap:
    """Parse "a,b,c,d" where each coefficient is a complex literal."""
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError(
            f"a map needs four comma-separated coefficients, got {len(parts)}"
        )
    coeffs = []
    for index, part in enumerate(parts):
        value = parse_point(part)
        if isinstance(value, Infinity):
            raise InputError(f"coefficient {index + 1} must be finite, not 'inf'")
        coeffs.append(value)
    return MoebiusMap(*coeffs)


def format_map(f: MoebiusMap) -> str:
    """Coefficient text "a,b,c,d"; parse_map round-trips it."""
    return ",".join(format_point(v) for v in (f.a, f.b, f.c, f.d))
