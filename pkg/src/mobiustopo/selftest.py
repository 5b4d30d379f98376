"""Seeded random ensembles and the cross-module property suite.

The suite exercises the package's strongest internal oracles: agreement of
the three topological-conjugacy criteria, the operator bridge, conjugator
round trips, the eigenvalue-multiplier law, the trace-interval law, the
matrix homomorphism, conjugation invariance of the classification, and the
canonical forms. Pairs whose gated quantities sit in the ambiguous band just
around a threshold are regenerated rather than judged.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .errors import IndeterminateError, VerificationError
from .moebius import EPS_UNIT, MoebiusMap, format_map
from .operators import moebius_operator_equiv
from .spectral import (
    ConjugacyClass,
    classify,
    conjugation_residual,
    conjugator,
    eigenvalues,
    multipliers,
)
from .topo import topo_canonical_form, topo_conjugate

# Gate values inside (STRUCTURAL_ZERO, threshold + BOUNDARY_BAND) are treated
# as boundary cases and regenerated; values at rounding level are robustly
# true, values beyond the band robustly false.
BOUNDARY_BAND = 1e-6
STRUCTURAL_ZERO = 1e-10

NONIDENTITY_CLASSES = (
    ConjugacyClass.HYPERBOLIC,
    ConjugacyClass.LOXODROMIC,
    ConjugacyClass.ELLIPTIC,
    ConjugacyClass.PARABOLIC,
)

__all__ = [
    "CheckResult",
    "SelftestReport",
    "random_class_map",
    "random_conjugating_map",
    "random_nonidentity_map",
    "run_selftest",
    "sample_decided_pairs",
]


def _rand_complex(rng: random.Random, spread: float = 2.0) -> complex:
    return complex(rng.uniform(-spread, spread), rng.uniform(-spread, spread))


def random_conjugating_map(rng: random.Random) -> MoebiusMap:
    """Random map with well-conditioned coefficients (|det| >= 0.3 scale^2)."""
    while True:
        a, b, c, d = (_rand_complex(rng) for _ in range(4))
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if scale == 0.0:
            continue
        if abs(a * d - b * c) >= 0.3 * scale * scale:
            return MoebiusMap(a, b, c, d)


def random_class_map(rng: random.Random, cls: ConjugacyClass) -> MoebiusMap:
    """A map of the requested class: a canonical core conjugated by a random
    well-conditioned map. Multipliers stay clear of the decision bands."""
    if cls is ConjugacyClass.HYPERBOLIC:
        mu = rng.uniform(1.3, 5.0)
        if rng.random() < 0.5:
            mu = -mu
        core = MoebiusMap.scaling(mu if rng.random() < 0.5 else 1.0 / mu)
    elif cls is ConjugacyClass.LOXODROMIC:
        r = rng.uniform(1.3, 4.0)
        theta = rng.choice((1.0, -1.0)) * rng.uniform(0.3, math.pi - 0.3)
        mu = cmath.rect(r, theta)
        core = MoebiusMap.scaling(mu if rng.random() < 0.5 else 1.0 / mu)
    elif cls is ConjugacyClass.ELLIPTIC:
        theta = rng.choice((1.0, -1.0)) * rng.uniform(0.2, math.pi - 0.2)
        core = MoebiusMap.scaling(cmath.rect(1.0, theta))
    elif cls is ConjugacyClass.PARABOLIC:
        beta = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * math.pi))
        core = MoebiusMap.translation(beta)
    else:
        raise ValueError(f"no random generator for class {cls}")
    h = random_conjugating_map(rng)
    return h.inverse().compose(core).compose(h)


def random_nonidentity_map(rng: random.Random) -> MoebiusMap:
    if rng.random() < 0.5:
        return random_class_map(rng, rng.choice(NONIDENTITY_CLASSES))
    while True:
        m = random_conjugating_map(rng)
        if not m.is_identity():
            return m


def random_pair(rng: random.Random) -> tuple:
    """A pair mixing relations: Moebius-conjugate, same class, unrelated,
    and elliptic pairs with equal/conjugate/unrelated rotation angles."""
    mode = rng.randrange(4)
    if mode == 0:
        f = random_nonidentity_map(rng)
        h = random_conjugating_map(rng)
        return f, h.inverse().compose(f).compose(h)
    if mode == 1:
        cls = rng.choice(NONIDENTITY_CLASSES)
        return random_class_map(rng, cls), random_class_map(rng, cls)
    if mode == 2:
        return random_nonidentity_map(rng), random_nonidentity_map(rng)
    theta = rng.uniform(0.2, math.pi - 0.2)
    mu = cmath.rect(1.0, theta)
    choice = rng.randrange(3)
    if choice == 0:
        nu = mu
    elif choice == 1:
        nu = mu.conjugate()
    else:
        nu = cmath.rect(1.0, rng.uniform(0.2, math.pi - 0.2))
    h1 = random_conjugating_map(rng)
    h2 = random_conjugating_map(rng)
    return (
        h1.inverse().compose(MoebiusMap.scaling(mu)).compose(h1),
        h2.inverse().compose(MoebiusMap.scaling(nu)).compose(h2),
    )


def _in_boundary_band(readings) -> bool:
    for r in readings:
        if abs(r.value - r.threshold) < BOUNDARY_BAND and r.value > STRUCTURAL_ZERO:
            return True
    return False


def sample_decided_pairs(rng: random.Random, count: int, eps: float = EPS_UNIT):
    """(f, g, decision) triples whose gated quantities avoid the threshold
    band. An IndeterminateError away from the band is a genuine failure and
    propagates."""
    out = []
    while len(out) < count:
        f, g = random_pair(rng)
        try:
            decision = topo_conjugate(f, g, eps)
        except IndeterminateError as exc:
            if exc.margin is not None and exc.margin < BOUNDARY_BAND:
                continue
            raise
        if _in_boundary_band(decision.readings):
            continue
        out.append((f, g, decision))
    return out


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    boundary: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail: str = "", inputs: dict | None = None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append({"detail": detail, "inputs": inputs or {}})


@dataclass
class SelftestReport:
    seed: int
    count: int
    eps: float
    checks: dict
    ok: bool
    note: str = ""


def _multiset_close(xs, ys, tol: float) -> bool:
    # Greedy tolerance matching; sort-and-zip is unstable for conjugate
    # pairs whose sort keys differ only by rounding dust.
    remaining = list(ys)
    for x in xs:
        for i, y in enumerate(remaining):
            if abs(x - y) <= tol:
                del remaining[i]
                break
        else:
            return False
    return not remaining


def run_selftest(seed: int = 42, count: int = 1000, eps: float = EPS_UNIT,
                 kmax: int = 64) -> SelftestReport:
    rng = random.Random(seed)
    checks = {
        name: CheckResult(name)
        for name in (
            "criterion_agreement",
            "operator_bridge",
            "conjugator_roundtrip",
            "eigenvalue_multiplier_law",
            "trace_interval_law",
            "matrix_homomorphism",
            "conjugation_invariance",
            "canonical_forms",
        )
    }

    pairs = sample_decided_pairs(rng, count, eps)
    for f, g, decision in pairs:
        inputs = {"f": format_map(f), "g": format_map(g)}

        agree = (decision.trace_verdict == decision.eigen_verdict
                 == decision.multiplier_verdict)
        checks["criterion_agreement"].record(agree, "criteria disagree", inputs)

        bridge = moebius_operator_equiv(f, g, eps)
        checks["operator_bridge"].record(
            bridge == decision.verdict,
            f"operator route says {bridge}, sphere route says {decision.verdict}",
            inputs,
        )

        tf, tg = f.trace(), g.trace()
        expect_map = min(abs(tf - tg), abs(tf + tg)) <= eps
        try:
            h = conjugator(f, g, eps, seed=seed)
        except VerificationError as exc:
            checks["conjugator_roundtrip"].record(False, str(exc), inputs)
        else:
            if (h is not None) != expect_map:
                checks["conjugator_roundtrip"].record(
                    False,
                    f"returned {'a map' if h else 'nothing'} while traces "
                    f"{'do' if expect_map else 'do not'} match up to sign",
                    inputs,
                )
            elif h is not None:
                residual = conjugation_residual(f, g, h, seed=seed + 1)
                checks["conjugator_roundtrip"].record(
                    residual <= 1e-7, f"round-trip residual {residual:.3e}", inputs)
            else:
                checks["conjugator_roundtrip"].record(True)

    singles = [random_nonidentity_map(rng) for _ in range(count)]
    for f in singles:
        inputs = {"f": format_map(f)}
        m = f.normalize()
        lam = eigenvalues(m).first
        mus = multipliers(f, eps)

        law = _multiset_close(
            mus.as_tuple(), (lam * lam, 1.0 / (lam * lam)), 1e-9)
        checks["eigenvalue_multiplier_law"].record(
            law, "multiplier pair differs from squared eigenvalues", inputs)

        t = m.trace
        unit = abs(abs(lam) - 1.0) <= eps
        in_interval = (abs(t.imag) <= eps * (1.0 + abs(t))
                       and abs(t.real) <= 2.0 + eps)
        checks["trace_interval_law"].record(
            unit == in_interval,
            f"|lam| unit={unit} but trace-in-interval={in_interval}", inputs)

        form = topo_canonical_form(f, eps)
        try:
            same = topo_conjugate(f, form, eps).verdict
        except IndeterminateError:
            checks["canonical_forms"].boundary += 1
        else:
            checks["canonical_forms"].record(
                same, "map is not topologically conjugate to its canonical form",
                inputs)

    for _ in range(count):
        f = random_nonidentity_map(rng)
        g = random_nonidentity_map(rng)
        inputs = {"f": format_map(f), "g": format_map(g)}
        product = (f.normalize() @ g.normalize()).canonical()
        composed = f.compose(g).normalize()
        checks["matrix_homomorphism"].record(
            product.isclose(composed, 1e-9),
            "canonical product differs from the composed map's matrix", inputs)

    invariance_rounds = max(1, count // 10)
    for _ in range(invariance_rounds):
        # Class-constructed base maps stay clear of the class boundaries, so
        # the class label is stable under conjugation noise.
        f = random_class_map(rng, rng.choice(NONIDENTITY_CLASSES))
        h = random_conjugating_map(rng)
        conj = h.inverse().compose(f).compose(h)
        inputs = {"f": format_map(f), "h": format_map(h)}
        same_class = classify(conj, eps) == classify(f, eps)
        same_mult = _multiset_close(
            multipliers(f, eps).as_tuple(), multipliers(conj, eps).as_tuple(), 1e-7)
        checks["conjugation_invariance"].record(
            same_class and same_mult,
            "class or multipliers changed under conjugation", inputs)

    ok = all(c.failed == 0 for c in checks.values())
    note = "vacuous run" if count == 0 else ""
    return SelftestReport(seed=seed, count=count, eps=eps, checks=checks,
                          ok=ok, note=note)
