"""Sphere arithmetic: chordal metric and the complex-literal grammar."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobiustopo.errors import InputError
from mobiustopo.extended_plane import (
    INF,
    as_point,
    chordal_distance,
    format_point,
    parse_point,
)

finite_floats = st.floats(min_value=-1e8, max_value=1e8,
                          allow_nan=False, allow_infinity=False)
finite_complexes = st.builds(complex, finite_floats, finite_floats)
points = st.one_of(finite_complexes, st.just(INF))


def test_chordal_identity_case():
    assert chordal_distance(0, 0) == 0.0


def test_chordal_antipodal_points():
    assert chordal_distance(0, INF) == 2.0


def test_chordal_one_minus_one():
    # 2|1-(-1)| / (sqrt(2) * sqrt(2)) = 2
    assert chordal_distance(1, -1) == pytest.approx(2.0, abs=1e-15)


def test_chordal_is_symmetric_and_bounded():
    samples = [0, 1, -1, 1j, 3 - 4j, INF, 100 + 100j]
    for p in samples:
        for q in samples:
            d = chordal_distance(p, q)
            assert 0.0 <= d <= 2.0 + 1e-15
            assert d == chordal_distance(q, p)
            if d == 0.0:
                assert (p is INF and q is INF) or p == q


@settings(max_examples=300)
@given(points, points, points)
def test_chordal_triangle_inequality(p, q, r):
    assert chordal_distance(p, q) <= (
        chordal_distance(p, r) + chordal_distance(r, q) + 1e-12
    )


@settings(max_examples=300)
@given(finite_complexes, finite_complexes)
def test_chordal_inversion_isometry(p, q):
    # z -> 1/z is a rotation of the sphere, with 1/0 = inf and 1/inf = 0.
    def invert(z):
        return INF if z == 0 else 1.0 / z

    assert chordal_distance(invert(p), invert(q)) == pytest.approx(
        chordal_distance(p, q), abs=1e-9
    )


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", 0j),
        ("1-2i", 1 - 2j),
        ("inf", INF),
        ("-3.5", -3.5 + 0j),
        ("2i", 2j),
        ("-2i", -2j),
        ("+1.5i", 1.5j),
        ("1e3", 1000 + 0j),
        ("1e+3-2.5e-1i", complex(1000, -0.25)),
        (".5+.25i", 0.5 + 0.25j),
        (" 1+1i ", 1 + 1j),
    ],
)
def test_parse_point_examples(text, expected):
    got = parse_point(text)
    if expected is INF:
        assert got is INF
    else:
        assert got == expected


@pytest.mark.parametrize(
    "text",
    ["", "i", "1+i", "1 + 2i", "1+2j", "nan", "infinity", "1+2i3", "--1", "1e999"],
)
def test_parse_point_rejects_malformed(text):
    with pytest.raises(InputError):
        parse_point(text)


def test_parse_error_carries_position():
    with pytest.raises(InputError, match="position 1"):
        parse_point("1$2i")


@settings(max_examples=300)
@given(points)
def test_format_parse_round_trip(p):
    back = parse_point(format_point(p))
    if p is INF:
        assert back is INF
    else:
        assert back == p


def test_format_uses_shortest_round_trip_digits():
    z = complex(0.1, -1 / 3)
    assert parse_point(format_point(z)) == z


def test_as_point_rejects_ieee_infinities():
    with pytest.raises(InputError):
        as_point(complex(math.inf, 0))
    with pytest.raises(InputError):
        as_point(complex(0, math.nan))
