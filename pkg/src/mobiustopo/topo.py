"""Topological-conjugacy decisions through three independent criteria.

For nonidentity maps f and g the following are equivalent, and each is
implemented as its own predicate:

- trace route: both determinant-1 traces lie outside the real interval
  [-2, 2], or the traces agree up to sign;
- eigenvalue route: for every eigenvalue lam of M_f and lam' of M_g, both
  moduli differ from 1, or lam = +-lam', or lam = +-conj(lam');
- multiplier route: for every multiplier mu of f and nu of g, both moduli
  differ from 1, or mu = nu, or mu = conj(nu).

All three are always computed and cross-checked; a disagreement (possible
only for inputs near a tolerance boundary) raises IndeterminateError instead
of guessing. Every gated quantity is reported with its distance to the
threshold, and the smallest such distance is the decision's margin.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IdentityMapError, IndeterminateError, InvalidInputError
from .moebius import EPS_UNIT, MoebiusMap
from .spectral import ConjugacyClass, classify, eigenvalues, multipliers, preferred_multiplier

__all__ = [
    "GateReading",
    "TopoDecision",
    "criterion_eigen",
    "criterion_multiplier",
    "criterion_trace",
    "scaling_topo_conjugate",
    "topo_canonical_form",
    "topo_conjugate",
]


@dataclass(frozen=True)
class GateReading:
    """One tolerance-gated quantity and the threshold it was tested against."""

    name: str
    value: float
    threshold: float

    @property
    def margin(self) -> float:
        return abs(self.value - self.threshold)


@dataclass(frozen=True)
class TopoDecision:
    verdict: bool
    trace_verdict: bool | None
    eigen_verdict: bool | None
    multiplier_verdict: bool | None
    margin: float
    notes: str = ""
    readings: tuple = ()


def _interval_membership(t: complex, eps: float, label: str, readings: list) -> bool:
    # Membership of a complex trace in [-2, 2]: imaginary part negligible
    # (relative gate) and |Re| <= 2 + eps.
    im = abs(t.imag)
    re = abs(t.real)
    readings.append(GateReading(f"{label}_imag", im, eps * (1.0 + abs(t))))
    readings.append(GateReading(f"{label}_real", re, 2.0 + eps))
    return im <= eps * (1.0 + abs(t)) and re <= 2.0 + eps


def _trace_criterion(f: MoebiusMap, g: MoebiusMap, eps: float):
    readings: list = []
    tf = f.trace()
    tg = g.trace()
    inside_f = _interval_membership(tf, eps, "trace_f", readings)
    inside_g = _interval_membership(tg, eps, "trace_g", readings)
    diff = min(abs(tf - tg), abs(tf + tg))
    readings.append(GateReading("trace_pm_equal", diff, eps))
    verdict = (not inside_f and not inside_g) or diff <= eps
    return verdict, readings


def _eigen_criterion(f: MoebiusMap, g: MoebiusMap, eps: float):
    readings: list = []
    ef = eigenvalues(f.normalize(), eps)
    eg = eigenvalues(g.normalize(), eps)
    flags = {}
    for label, lam in (("f1", ef.first), ("f2", ef.second),
                       ("g1", eg.first), ("g2", eg.second)):
        off = abs(abs(lam) - 1.0)
        readings.append(GateReading(f"eigen_{label}_unit", off, eps))
        flags[label] = off <= eps
    verdict = True
    for la, unit_a in ((ef.first, flags["f1"]), (ef.second, flags["f2"])):
        for lb, unit_b in ((eg.first, flags["g1"]), (eg.second, flags["g2"])):
            match = min(abs(la - lb), abs(la + lb),
                        abs(la - lb.conjugate()), abs(la + lb.conjugate()))
            readings.append(GateReading("eigen_match", match, eps))
            if not ((not unit_a and not unit_b) or match <= eps):
                verdict = False
    return verdict, readings


def _multiplier_criterion(f: MoebiusMap, g: MoebiusMap, eps: float):
    readings: list = []
    mf = multipliers(f, eps)
    mg = multipliers(g, eps)
    flags = {}
    for label, mu in (("f1", mf.first), ("f2", mf.second),
                      ("g1", mg.first), ("g2", mg.second)):
        off = abs(abs(mu) - 1.0)
        readings.append(GateReading(f"mult_{label}_unit", off, eps))
        flags[label] = off <= eps
    verdict = True
    for mu, unit_a in ((mf.first, flags["f1"]), (mf.second, flags["f2"])):
        for nu, unit_b in ((mg.first, flags["g1"]), (mg.second, flags["g2"])):
            match = min(abs(mu - nu), abs(mu - nu.conjugate()))
            readings.append(GateReading("mult_match", match, eps))
            if not ((not unit_a and not unit_b) or match <= eps):
                verdict = False
    return verdict, readings


def _reject_identities(f: MoebiusMap, g: MoebiusMap, eps: float):
    if f.is_identity(eps) or g.is_identity(eps):
        raise IdentityMapError("criteria are defined for nonidentity maps")


def criterion_trace(f: MoebiusMap, g: MoebiusMap, eps: float = EPS_UNIT) -> bool:
    """Trace route: both traces outside [-2, 2], or traces equal up to sign."""
    _reject_identities(f, g, eps)
    verdict, _ = _trace_criterion(f, g, eps)
    return verdict


def criterion_eigen(f: MoebiusMap, g: MoebiusMap, eps: float = EPS_UNIT) -> bool:
    """Eigenvalue route, quantified over all eigenvalue pairs."""
    _reject_identities(f, g, eps)
    verdict, _ = _eigen_criterion(f, g, eps)
    return verdict


def criterion_multiplier(f: MoebiusMap, g: MoebiusMap, eps: float = EPS_UNIT) -> bool:
    """Multiplier route, quantified over all multiplier pairs."""
    _reject_identities(f, g, eps)
    verdict, _ = _multiplier_criterion(f, g, eps)
    return verdict


def topo_conjugate(f: MoebiusMap, g: MoebiusMap, eps: float = EPS_UNIT) -> TopoDecision:
    """Shared verdict of the three criteria, with margins.

    Identity maps bypass the criteria: two identities are conjugate, an
    identity and a nonidentity map are not. Raises IndeterminateError when
    the criteria disagree; the caller should then adjust eps.
    """
    dist_f = f.identity_distance()
    dist_g = g.identity_distance()
    f_id = dist_f <= eps
    g_id = dist_g <= eps
    if f_id or g_id:
        readings = (
            GateReading("identity_f", dist_f, eps),
            GateReading("identity_g", dist_g, eps),
        )
        margin = min(r.margin for r in readings)
        return TopoDecision(
            verdict=f_id and g_id,
            trace_verdict=None,
            eigen_verdict=None,
            multiplier_verdict=None,
            margin=margin,
            notes="identity special case",
            readings=readings,
        )
    tv, tr = _trace_criterion(f, g, eps)
    ev, er = _eigen_criterion(f, g, eps)
    mv, mr = _multiplier_criterion(f, g, eps)
    readings = tuple(tr + er + mr)
    tightest = min(readings, key=lambda r: r.margin)
    margin = tightest.margin
    if not (tv == ev == mv):
        raise IndeterminateError(
            "criteria disagree near a tolerance boundary "
            f"(trace={tv}, eigen={ev}, multiplier={mv}); adjust eps",
            trace_verdict=tv,
            eigen_verdict=ev,
            multiplier_verdict=mv,
            margin=margin,
        )
    return TopoDecision(
        verdict=tv,
        trace_verdict=tv,
        eigen_verdict=ev,
        multiplier_verdict=mv,
        margin=margin,
        notes=f"tightest gate: {tightest.name}",
        readings=readings,
    )


def topo_canonical_form(f: MoebiusMap, eps: float = EPS_UNIT) -> MoebiusMap:
    """2z for hyperbolic and loxodromic maps, mu*z (Im mu >= 0, |mu| = 1) for
    elliptic maps, z+1 for parabolic maps."""
    cls = classify(f, eps)
    if cls is ConjugacyClass.IDENTITY:
        raise IdentityMapError("the identity map has no canonical form here")
    if cls is ConjugacyClass.PARABOLIC:
        return MoebiusMap.translation(1.0)
    if cls is ConjugacyClass.ELLIPTIC:
        # The tie-broken multiplier already carries Im >= 0 on the unit circle.
        return MoebiusMap.scaling(preferred_multiplier(f, eps))
    return MoebiusMap.scaling(2.0)


def scaling_topo_conjugate(a, b, eps: float = EPS_UNIT) -> bool:
    """Direct test for z -> a z versus z -> b z.

    True exactly when both moduli differ from 1, or a = b, or a = conj(b).
    The mixed case |a| < 1 < |b| is covered by the first branch: the two maps
    are conjugate through z -> 1/z.
    """
    a = complex(a)
    b = complex(b)
    if a == 0 or a == 1 or b == 0 or b == 1:
        raise InvalidInputError("scaling coefficients must avoid 0 and 1")
    off_a = abs(abs(a) - 1.0) > eps
    off_b = abs(abs(b) - 1.0) > eps
    return (off_a and off_b) or abs(a - b) <= eps or abs(a - b.conjugate()) <= eps
