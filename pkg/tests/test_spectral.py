"""Eigenvalues, fixed points, multipliers, Jordan form, classification, and
the explicit conjugator, checked against independent routes (numpy eigvals,
central differences, direct evaluation)."""

import cmath
import math
import random

import numpy as np
import pytest

from mobiustopo.errors import IdentityMapError
from mobiustopo.extended_plane import INF, chordal_distance
from mobiustopo.moebius import MoebiusMap, UnimodularMatrix
from mobiustopo.spectral import (
    ConjugacyClass,
    canonical_conjugacy_form,
    classify,
    conjugation_residual,
    conjugator,
    eigenvalues,
    fixed_points,
    jordan_form,
    multipliers,
    preferred_multiplier,
)

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)
GOLDEN = (1 + SQRT5) / 2
PHI4 = (7 + 3 * SQRT5) / 2  # ((1+sqrt5)/2 + 1)^2, the golden-map multiplier


def random_map(rng, spread=2.0):
    while True:
        coeffs = [complex(rng.uniform(-spread, spread), rng.uniform(-spread, spread))
                  for _ in range(4)]
        scale = max(abs(v) for v in coeffs)
        if scale == 0.0:
            continue
        det = coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2]
        if abs(det) >= 0.3 * scale * scale:
            m = MoebiusMap(*coeffs)
            if not m.is_identity():
                return m


def matset(pair):
    return sorted(pair.as_tuple(), key=lambda z: (abs(z), z.real, z.imag))


# --- eigenvalues -------------------------------------------------------------

def test_eigenvalues_of_scaling_two():
    pair = eigenvalues(MoebiusMap.scaling(2).normalize())
    got = matset(pair)
    assert got[0] == pytest.approx(1 / SQRT2, abs=1e-12)
    assert got[1] == pytest.approx(SQRT2, abs=1e-12)
    # trace equals 3/sqrt(2)
    assert MoebiusMap.scaling(2).trace() == pytest.approx(3 / SQRT2, abs=1e-12)


def test_eigenvalues_of_unipotent_triangular():
    m = UnimodularMatrix(1, 1, 0, 1)
    pair = eigenvalues(m)
    assert pair.as_tuple() == (1, 1)


def test_eigenvalues_of_golden_map():
    pair = eigenvalues(MoebiusMap(2, 1, 1, 1).normalize())
    got = matset(pair)
    assert got[1] == pytest.approx((3 + SQRT5) / 2, abs=1e-9)
    assert got[0] == pytest.approx((3 - SQRT5) / 2, abs=1e-9)


def test_eigenvalue_invariants_product_and_sum():
    rng = random.Random(23)
    for _ in range(300):
        m = random_map(rng).normalize()
        pair = eigenvalues(m)
        assert abs(pair.first * pair.second - 1) <= 1e-9
        assert abs(pair.first + pair.second - m.trace) <= 1e-9


def test_eigenvalues_match_numpy_oracle():
    rng = random.Random(29)
    checked = 0
    while checked < 200:
        m = random_map(rng).normalize()
        t = m.trace
        if min(abs(t - 2), abs(t + 2)) < 1e-6:
            continue  # the snap convention intentionally differs there
        ours = sorted(eigenvalues(m).as_tuple(), key=lambda z: (z.real, z.imag))
        ref = sorted(np.linalg.eigvals(np.array(m.rows)),
                     key=lambda z: (z.real, z.imag))
        assert all(abs(a - b) <= 1e-9 for a, b in zip(ours, ref))
        checked += 1


# --- fixed points ------------------------------------------------------------

def test_fixed_points_of_scaling():
    fps = fixed_points(MoebiusMap.scaling(2))
    assert fps.count == 2
    assert fps.points[0] == 0
    assert fps.points[1] is INF


def test_fixed_points_of_translation_is_single_infinity():
    fps = fixed_points(MoebiusMap.translation(1))
    assert fps.count == 1
    assert fps.points[0] is INF


def test_fixed_points_of_golden_map():
    fps = fixed_points(MoebiusMap(2, 1, 1, 1))
    got = sorted(p.real for p in fps.points)
    assert got[1] == pytest.approx(GOLDEN, abs=1e-9)
    assert got[0] == pytest.approx(1 - GOLDEN, abs=1e-9)


def test_fixed_point_residuals():
    rng = random.Random(31)
    for _ in range(300):
        f = random_map(rng)
        for p in fixed_points(f).points:
            assert chordal_distance(f(p), p) <= 1e-9


def test_fixed_points_rejects_identity():
    with pytest.raises(IdentityMapError):
        fixed_points(MoebiusMap.identity())


# --- multipliers -------------------------------------------------------------

def test_multipliers_of_scaling_two():
    mus = matset(multipliers(MoebiusMap.scaling(2)))
    assert mus[0] == pytest.approx(0.5, abs=1e-12)
    assert mus[1] == pytest.approx(2.0, abs=1e-12)


def test_multipliers_of_inversion_are_minus_one():
    mus = multipliers(MoebiusMap(0, 1, 1, 0))
    assert mus.first == pytest.approx(-1.0, abs=1e-12)
    assert mus.second == pytest.approx(-1.0, abs=1e-12)


def test_multipliers_of_golden_map():
    mus = matset(multipliers(MoebiusMap(2, 1, 1, 1)))
    assert mus[1] == pytest.approx(PHI4, abs=1e-9)
    assert mus[0] == pytest.approx(1 / PHI4, abs=1e-9)


def test_multipliers_match_central_difference_oracle():
    rng = random.Random(37)
    checked = 0
    while checked < 100:
        f = random_map(rng)
        fps = fixed_points(f)
        if fps.count != 2:
            continue
        mus = multipliers(f)
        step = 1e-6
        for p, mu in zip(fps.points, mus.as_tuple()):
            if p is INF or abs(p) > 10:
                continue
            num = (f(p + step) - f(p - step)) / (2 * step)
            assert abs(num - mu) <= 1e-4 * (1 + abs(mu))
        checked += 1


def test_multiplier_product_is_one():
    rng = random.Random(41)
    for _ in range(300):
        mus = multipliers(random_map(rng))
        assert abs(mus.first * mus.second - 1) <= 1e-9


def test_parabolic_multipliers_are_one():
    assert multipliers(MoebiusMap.translation(1)).as_tuple() == (1, 1)


# --- Jordan form -------------------------------------------------------------

def _assert_jordan_contract(m, eps=1e-9):
    canonical, transform = jordan_form(m)
    t_inv = transform.inverse()
    prod = t_inv @ (m @ transform)
    assert max(abs(x - y) for x, y in zip(prod.entries, canonical.entries)) <= eps


def test_jordan_of_diagonal_is_itself():
    m = MoebiusMap.scaling(2).normalize()
    canonical, transform = jordan_form(m)
    assert canonical.isclose(m, 1e-12)
    assert transform.isclose(UnimodularMatrix(1, 0, 0, 1), 1e-12)
    _assert_jordan_contract(m)


def test_jordan_of_unipotent_is_itself():
    m = UnimodularMatrix(1, 1, 0, 1)
    canonical, _ = jordan_form(m)
    assert canonical.entries == (1, 1, 0, 1)
    _assert_jordan_contract(m)


def test_jordan_of_golden_matrix():
    m = MoebiusMap(2, 1, 1, 1).normalize()
    canonical, transform = jordan_form(m)
    assert canonical.m11 == pytest.approx((3 + SQRT5) / 2, abs=1e-9)
    assert canonical.m22 == pytest.approx((3 - SQRT5) / 2, abs=1e-9)
    assert canonical.m12 == canonical.m21 == 0
    _assert_jordan_contract(m)
    # numpy cross-check of the similarity
    t = np.array(transform.rows)
    mm = np.array(m.rows)
    cc = np.array(canonical.rows)
    assert np.allclose(np.linalg.solve(t, mm @ t), cc, atol=1e-9)


def test_jordan_contract_on_random_maps():
    rng = random.Random(43)
    for _ in range(200):
        _assert_jordan_contract(random_map(rng).normalize())


def test_jordan_contract_on_parabolic_conjugates():
    rng = random.Random(47)
    for _ in range(100):
        h = random_map(rng)
        f = h.inverse().compose(MoebiusMap.translation(1)).compose(h)
        m = f.normalize()
        canonical, _ = jordan_form(m)
        assert abs(abs(canonical.m11) - 1) <= 1e-9
        assert canonical.m12 == 1
        _assert_jordan_contract(m, eps=1e-7)


# --- classification ----------------------------------------------------------

@pytest.mark.parametrize(
    "map_args, expected",
    [
        ((1, 1, 0, 1), ConjugacyClass.PARABOLIC),
        ((1j, 0, 0, 1), ConjugacyClass.ELLIPTIC),
        ((2, 1, 1, 1), ConjugacyClass.HYPERBOLIC),
        ((1, 0, 0, 1), ConjugacyClass.IDENTITY),
        ((-1, 0, 0, 1), ConjugacyClass.ELLIPTIC),     # mu = -1: elliptic wins
        ((-3, 0, 0, 1), ConjugacyClass.HYPERBOLIC),   # negative real mu, |mu| != 1
        ((2j, 0, 0, 1), ConjugacyClass.LOXODROMIC),
        ((1, 0, -1, 1), ConjugacyClass.PARABOLIC),
    ],
)
def test_classify_examples(map_args, expected):
    assert classify(MoebiusMap(*map_args)) is expected


def test_classify_is_conjugation_invariant():
    rng = random.Random(53)
    cores = {
        ConjugacyClass.HYPERBOLIC: MoebiusMap.scaling(3),
        ConjugacyClass.LOXODROMIC: MoebiusMap.scaling(2j),
        ConjugacyClass.ELLIPTIC: MoebiusMap.scaling(cmath.exp(1j)),
        ConjugacyClass.PARABOLIC: MoebiusMap.translation(1),
    }
    for expected, core in cores.items():
        for _ in range(50):
            h = random_map(rng)
            assert classify(h.inverse().compose(core).compose(h)) is expected


# --- canonical form and conjugator -------------------------------------------

def test_canonical_form_of_scaling_is_itself():
    form = canonical_conjugacy_form(MoebiusMap.scaling(2))
    assert form.equivalent(MoebiusMap.scaling(2))


def test_canonical_form_of_golden_map_picks_large_multiplier():
    form = canonical_conjugacy_form(MoebiusMap(2, 1, 1, 1))
    assert form.c == 0 and form.b == 0
    assert form.a / form.d == pytest.approx(PHI4, abs=1e-9)


def test_canonical_form_of_parabolic():
    form = canonical_conjugacy_form(MoebiusMap(1, 0, -1, 1))
    assert (form.a, form.b, form.c, form.d) == (1, 1, 0, 1)
    # single fixed point at 0, determinant-1 trace at +-2
    fps = fixed_points(MoebiusMap(1, 0, -1, 1))
    assert fps.count == 1 and abs(fps.points[0]) <= 1e-12
    t = MoebiusMap(1, 0, -1, 1).trace()
    assert min(abs(t - 2), abs(t + 2)) <= 1e-12


def test_canonical_form_idempotent():
    rng = random.Random(59)
    for _ in range(100):
        f = random_map(rng)
        once = canonical_conjugacy_form(f)
        twice = canonical_conjugacy_form(once)
        assert once.equivalent(twice, 1e-9)


def test_canonical_form_rejects_identity():
    with pytest.raises(IdentityMapError):
        canonical_conjugacy_form(MoebiusMap.identity())


def test_preferred_multiplier_tie_breaks():
    assert preferred_multiplier(MoebiusMap.scaling(0.5)) == pytest.approx(2.0)
    # unit modulus: upper half-plane representative
    mu = preferred_multiplier(MoebiusMap.scaling(cmath.exp(-1j)))
    assert mu.imag >= 0
    assert abs(mu - cmath.exp(1j)) <= 1e-12


def test_conjugator_same_map_verifies():
    f = MoebiusMap.scaling(2)
    h = conjugator(f, f)
    assert h is not None
    assert conjugation_residual(f, f, h) <= 1e-9


def test_conjugator_rotation_pair_gives_inversion():
    f = MoebiusMap.scaling(1j)
    g = MoebiusMap.scaling(-1j)
    h = conjugator(f, g)
    assert h is not None
    # verification is by the conjugation equation, not by h's coefficients,
    # but here the construction lands exactly on 1/z
    assert conjugation_residual(f, g, h) <= 1e-9
    assert h.equivalent(MoebiusMap(0, 1, 1, 0))


def test_conjugator_absent_for_different_traces():
    # traces 3/sqrt(2) vs 4/sqrt(3)
    assert conjugator(MoebiusMap.scaling(2), MoebiusMap.scaling(3)) is None
    t2 = MoebiusMap.scaling(2).trace()
    t3 = MoebiusMap.scaling(3).trace()
    assert t2 == pytest.approx(3 / SQRT2, abs=1e-12)
    assert t3 == pytest.approx(4 / math.sqrt(3), abs=1e-12)


def test_conjugator_iff_trace_matches():
    rng = random.Random(61)
    for _ in range(200):
        if rng.random() < 0.5:
            f = random_map(rng)
            h0 = random_map(rng)
            g = h0.inverse().compose(f).compose(h0)
        else:
            f = random_map(rng)
            g = random_map(rng)
        tf, tg = f.trace(), g.trace()
        expected = min(abs(tf - tg), abs(tf + tg)) <= 1e-9
        h = conjugator(f, g)
        assert (h is not None) == expected
        if h is not None:
            assert conjugation_residual(f, g, h, seed=5) <= 1e-7


def test_conjugator_matches_multiplier_at_paired_fixed_points():
    rng = random.Random(67)
    from mobiustopo.spectral import _derivative_at

    for _ in range(50):
        f = random_map(rng)
        h0 = random_map(rng)
        g = h0.inverse().compose(f).compose(h0)
        if fixed_points(f).count != 2:
            continue
        h = conjugator(f, g)
        for p in fixed_points(g).points:
            image = h(p)
            mu_g = _derivative_at(g, p)
            candidates = [_derivative_at(f, q) for q in fixed_points(f).points]
            distances = [chordal_distance(image, q) for q in fixed_points(f).points]
            paired = candidates[distances.index(min(distances))]
            assert abs(paired - mu_g) <= 1e-6 * (1 + abs(mu_g))


def test_conjugator_rejects_identity_inputs():
    with pytest.raises(IdentityMapError):
        conjugator(MoebiusMap.identity(), MoebiusMap.scaling(2))


def test_multiplier_pair_conjugation_invariance():
    rng = random.Random(71)
    for _ in range(100):
        f = random_map(rng)
        h = random_map(rng)
        g = h.inverse().compose(f).compose(h)
        a = sorted(multipliers(f).as_tuple(), key=lambda z: (abs(z), z.real, z.imag))
        b = sorted(multipliers(g).as_tuple(), key=lambda z: (abs(z), z.real, z.imag))
        assert all(abs(x - y) <= 1e-7 * (1 + abs(x)) for x, y in zip(a, b))
