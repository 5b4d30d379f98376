"""Spectral data of a Moebius map and the four-way classification.

Trace, eigenvalues, fixed points, multipliers, Jordan form, the conjugacy
canonical form (mu*z or z+1), and an explicit conjugating map between any two
conjugate maps. Two nonidentity maps are conjugate exactly when their
determinant-1 traces agree up to sign.

Conventions, all gated by ``eps`` (default 1e-9):
- a modulus m counts as 1 when |m - 1| <= eps;
- a trace or multiplier counts as real when |Im| <= eps * (1 + |value|);
- a map counts as parabolic when its trace is within eps of +2 or -2, even if
  the fixed-point quadratic yields two numerically distinct roots (the trace
  is the numerically stable discriminator);
- unit-modulus multipliers, including -1, are elliptic; real multipliers off
  the unit circle are hyperbolic (negative ones included), non-real ones
  loxodromic.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import IdentityMapError, VerificationError
from .extended_plane import INF, Point, as_point, chordal_distance
from .moebius import EPS_UNIT, MoebiusMap, UnimodularMatrix

__all__ = [
    "ConjugacyClass",
    "EigenPair",
    "FixedPointSet",
    "MultiplierPair",
    "canonical_conjugacy_form",
    "classify",
    "conjugation_residual",
    "conjugator",
    "eigenvalues",
    "fixed_points",
    "jordan_form",
    "multipliers",
    "preferred_multiplier",
]


class ConjugacyClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class EigenPair:
    """Unordered pair {lam, 1/lam} of eigenvalues of a determinant-1 matrix."""

    first: complex
    second: complex

    def as_tuple(self) -> tuple:
        return (self.first, self.second)


@dataclass(frozen=True)
class FixedPointSet:
    """One or two fixed points of a nonidentity map."""

    points: tuple

    @property
    def count(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class MultiplierPair:
    """Unordered derivative pair {mu, 1/mu} at the fixed points; {1, 1} for parabolic."""

    first: complex
    second: complex

    def as_tuple(self) -> tuple:
        return (self.first, self.second)


def _reject_identity(f: MoebiusMap, eps: float):
    if f.is_identity(eps):
        raise IdentityMapError("operation undefined for the identity map")


def _is_parabolic_trace(f: MoebiusMap, eps: float) -> bool:
    t = f.trace()
    return min(abs(t - 2.0), abs(t + 2.0)) <= eps


def eigenvalues(m: UnimodularMatrix, eps: float = EPS_UNIT) -> EigenPair:
    """Roots {lam, 1/lam} of x^2 - tr(m) x + 1 = 0.

    Traces within eps of +-2 yield the exact double root +-1: the square
    root would otherwise amplify a rounding-level trace error of e into an
    eigenvalue error of sqrt(e), so the trace gate is trusted. Otherwise the
    larger-modulus root is computed cancellation-free and its reciprocal is
    the other root (the product of the roots is the determinant, 1).
    """
    t = m.trace
    if abs(t - 2.0) <= eps:
        return EigenPair(complex(1.0), complex(1.0))
    if abs(t + 2.0) <= eps:
        return EigenPair(complex(-1.0), complex(-1.0))
    s = cmath.sqrt(t * t - 4.0)
    if (t.conjugate() * s).real < 0.0:
        s = -s
    lam = (t + s) / 2.0
    if lam == 0:
        lam = (t - s) / 2.0
    return EigenPair(lam, 1.0 / lam)


def fixed_points(f: MoebiusMap, eps: float = EPS_UNIT) -> FixedPointSet:
    """Solutions of c z^2 + (d - a) z - b = 0 on the sphere.

    Infinity is a fixed point exactly when c = 0. Parabolic maps (trace gate)
    report the quadratic's double root as a single fixed point.
    """
    _reject_identity(f, eps)
    a, b, c, d = f.a, f.b, f.c, f.d
    if _is_parabolic_trace(f, eps):
        if c == 0:
            return FixedPointSet((INF,))
        return FixedPointSet((as_point((a - d) / (2.0 * c)),))
    if c == 0:
        # Affine case: infinity plus one finite point (a != d, parabolic excluded).
        return FixedPointSet((as_point(b / (d - a)), INF))
    quad_b = d - a
    s = cmath.sqrt(quad_b * quad_b + 4.0 * c * b)
    if (quad_b.conjugate() * s).real < 0.0:
        s = -s
    q = -(quad_b + s) / 2.0
    if q == 0:
        return FixedPointSet((as_point(-quad_b / (2.0 * c)),))
    return FixedPointSet((as_point(q / c), as_point(-b / q)))


def _derivative_at(f: MoebiusMap, z: Point) -> complex:
    """Multiplier at a fixed point: f'(z), or lim 1/f'(z) at infinity."""
    if z is INF:
        # Only reachable when c == 0; the reciprocal-limit convention.
        return f.d / f.a
    den = f.c * z + f.d
    return f.det / (den * den)


def multipliers(f: MoebiusMap, eps: float = EPS_UNIT) -> MultiplierPair:
    """Derivatives at the fixed points; {1, 1} for parabolic maps."""
    fixed = fixed_points(f, eps)
    if fixed.count == 1:
        return MultiplierPair(complex(1.0), complex(1.0))
    mu1 = _derivative_at(f, fixed.points[0])
    mu2 = _derivative_at(f, fixed.points[1])
    return MultiplierPair(mu1, mu2)


def preferred_multiplier(f: MoebiusMap, eps: float = EPS_UNIT) -> complex:
    """Tie-broken representative of {mu, 1/mu}.

    Off the unit circle the representative with |mu| > 1 wins; on it (within
    eps) the one with Im mu >= 0 wins. Deterministic under the mu vs 1/mu
    ambiguity.
    """
    pair = multipliers(f, eps)
    mu1, mu2 = pair.first, pair.second
    if abs(abs(mu1) - 1.0) <= eps:
        # Unit pair: the reciprocal flips the sign of the imaginary part.
        return mu1 if mu1.imag >= 0.0 else mu2
    return mu1 if abs(mu1) > abs(mu2) else mu2


def classify(f: MoebiusMap, eps: float = EPS_UNIT) -> ConjugacyClass:
    """Identity, parabolic, elliptic, hyperbolic, or loxodromic.

    Precedence at unit-modulus real multipliers (mu = -1): elliptic, so the
    classes partition.
    """
    if f.is_identity(eps):
        return ConjugacyClass.IDENTITY
    if _is_parabolic_trace(f, eps):
        return ConjugacyClass.PARABOLIC
    mu = preferred_multiplier(f, eps)
    if abs(abs(mu) - 1.0) <= eps:
        return ConjugacyClass.ELLIPTIC
    if abs(mu.imag) <= eps * (1.0 + abs(mu)):
        return ConjugacyClass.HYPERBOLIC
    return ConjugacyClass.LOXODROMIC


def _near_scalar(m: UnimodularMatrix, sigma: float, eps: float) -> bool:
    return max(abs(m.m11 - sigma), abs(m.m12), abs(m.m21), abs(m.m22 - sigma)) <= eps


def _kernel_vector(rows) -> tuple:
    # Kernel direction of a (numerically) rank-1 matrix given by two rows.
    (p, q), (r, s) = rows
    if math.hypot(abs(p), abs(q)) >= math.hypot(abs(r), abs(s)):
        v = (-q, p)
    else:
        v = (-s, r)
    norm = math.hypot(abs(v[0]), abs(v[1]))
    if norm == 0.0:
        return (1.0 + 0j, 0j)
    return (v[0] / norm, v[1] / norm)


def _columns_to_unimodular(v1, v2) -> UnimodularMatrix:
    det = v1[0] * v2[1] - v2[0] * v1[1]
    if det == 0:
        raise VerificationError("transform columns are linearly dependent")
    root = cmath.sqrt(det)
    return UnimodularMatrix(v1[0] / root, v2[0] / root, v1[1] / root, v2[1] / root)


def jordan_form(m: UnimodularMatrix, eps: float = EPS_UNIT) -> tuple:
    """(canonical, transform) with transform^-1 @ m @ transform = canonical.

    canonical is diag(lam, 1/lam) for diagonalizable input, ordered by the
    multiplier tie-break (larger modulus first; on the unit circle the root
    whose square has Im >= 0 first), or the Jordan block [[s, 1], [0, s]]
    with s = +-1 matching the trace sign. The returned canonical keeps the
    representative that is actually similar to m, which need not be the
    canonical-sign representative of its {M, -M} pair.
    """
    t = m.trace
    if min(abs(t - 2.0), abs(t + 2.0)) <= eps:
        sigma = 1.0 if abs(t - 2.0) <= abs(t + 2.0) else -1.0
        if _near_scalar(m, sigma, eps):
            canonical = UnimodularMatrix(sigma, 0.0, 0.0, sigma, canonicalize=False)
            return canonical, UnimodularMatrix(1.0, 0.0, 0.0, 1.0)
        canonical = UnimodularMatrix(sigma, 1.0, 0.0, sigma, canonicalize=False)
        return canonical, _parabolic_transform(m, sigma)
    pair = eigenvalues(m)
    lam = _leading_eigenvalue(pair, eps)
    shifted_lam = ((m.m11 - lam, m.m12), (m.m21, m.m22 - lam))
    other = 1.0 / lam
    shifted_other = ((m.m11 - other, m.m12), (m.m21, m.m22 - other))
    v1 = _kernel_vector(shifted_lam)
    v2 = _kernel_vector(shifted_other)
    transform = _columns_to_unimodular(v1, v2)
    canonical = UnimodularMatrix(lam, 0.0, 0.0, other, canonicalize=False)
    return canonical, transform


def _leading_eigenvalue(pair: EigenPair, eps: float) -> complex:
    lam, other = pair.first, pair.second
    if abs(abs(lam) - 1.0) <= eps:
        return lam if (lam * lam).imag >= 0.0 else other
    return lam if abs(lam) > abs(other) else other


def _parabolic_transform(m: UnimodularMatrix, sigma: float) -> UnimodularMatrix:
    # Columns: eigenvector v of the double eigenvalue sigma, then a generalized
    # vector w with (m - sigma I) w = v. Since (m - sigma I)^2 = 0, the kernel
    # and the column space coincide, so the system is consistent.
    shifted = ((m.m11 - sigma, m.m12), (m.m21, m.m22 - sigma))
    v = _kernel_vector(shifted)
    (p, q), (r, s) = shifted
    if math.hypot(abs(p), abs(q)) >= math.hypot(abs(r), abs(s)):
        coeffs, target = (p, q), v[0]
    else:
        coeffs, target = (r, s), v[1]
    norm2 = abs(coeffs[0]) ** 2 + abs(coeffs[1]) ** 2
    if norm2 == 0.0:
        raise VerificationError("parabolic transform is degenerate")
    w = (coeffs[0].conjugate() * target / norm2, coeffs[1].conjugate() * target / norm2)
    return _columns_to_unimodular(v, w)


def canonical_conjugacy_form(f: MoebiusMap, eps: float = EPS_UNIT) -> MoebiusMap:
    """mu*z with the tie-broken multiplier, or z+1 for parabolic maps."""
    _reject_identity(f, eps)
    if _is_parabolic_trace(f, eps):
        return MoebiusMap.translation(1.0)
    return MoebiusMap.scaling(preferred_multiplier(f, eps))


# Spread candidates for the free third interpolation point.
_FAR_CANDIDATES = (0j, 1 + 0j, -1 + 0j, 1j, -1j, 2 + 0j, INF, 0.5 + 0.5j)


def _pick_far_point(avoid) -> Point:
    best = None
    best_d = -1.0
    for candidate in _FAR_CANDIDATES:
        d = min(chordal_distance(candidate, a) for a in avoid)
        if d > best_d:
            best, best_d = candidate, d
    return best


def _canonical_router(f: MoebiusMap, eps: float) -> MoebiusMap:
    """A map s with s^-1 o f o s equal to the conjugacy canonical form of f."""
    if _is_parabolic_trace(f, eps):
        z0 = fixed_points(f, eps).points[0]
        u = _pick_far_point((z0,))
        # s(inf) = fixed point, s(0) = u, s(1) = f(u): the conjugate then
        # fixes infinity and sends 0 to 1, which pins the translation z + 1.
        return MoebiusMap.from_three_points(INF, 0.0, 1.0, z0, u, f(u))
    mu = preferred_multiplier(f, eps)
    pts = fixed_points(f, eps).points
    if abs(_derivative_at(f, pts[0]) - mu) <= abs(_derivative_at(f, pts[1]) - mu):
        source, sink = pts[0], pts[1]
    else:
        source, sink = pts[1], pts[0]
    w = _pick_far_point((source, sink))
    # s(0) = fixed point carrying the tie-broken multiplier, s(inf) = the other.
    return MoebiusMap.from_three_points(0.0, 1.0, INF, source, w, sink)


def _random_point(rng: random.Random) -> complex:
    return complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))


def conjugation_residual(f: MoebiusMap, g: MoebiusMap, h: MoebiusMap,
                         samples: int = 20, seed: int = 0) -> float:
    """max over sample points z of chordal(g(z), (h^-1 o f o h)(z))."""
    rng = random.Random(seed)
    h_inv = h.inverse()
    worst = 0.0
    for _ in range(samples):
        z = _random_point(rng)
        worst = max(worst, chordal_distance(g(z), h_inv(f(h(z)))))
    return worst


def conjugator(f: MoebiusMap, g: MoebiusMap, eps: float = EPS_UNIT,
               seed: int = 0) -> MoebiusMap | None:
    """A map h with g = h^-1 o f o h, or None when no such Moebius map exists.

    None exactly when the determinant-1 traces differ beyond sign (within
    eps). Otherwise both maps are routed onto the shared canonical form and
    h is verified at 20 seeded sample points (chordal residual <= 1e-7); the
    fixed-point pairing follows the multipliers, so the multiplier at h(p)
    equals the multiplier at p.
    """
    _reject_identity(f, eps)
    _reject_identity(g, eps)
    tf = f.trace()
    tg = g.trace()
    if min(abs(tf - tg), abs(tf + tg)) > eps:
        return None
    s_f = _canonical_router(f, eps)
    s_g = _canonical_router(g, eps)
    h = s_f.compose(s_g.inverse())
    residual = conjugation_residual(f, g, h, samples=20, seed=seed)
    if residual > 1e-7:
        raise VerificationError(
            f"conjugating map failed verification (residual {residual:.3e})"
        )
    return h
