import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadsheaf import sheafalg as sa
from quadsheaf.exactpoly import BiPoly
from quadsheaf.sheafalg import (
    O,
    CurveSheaf,
    DirectSum,
    Extension,
    LinPoly,
    Resolution,
    SheafParseError,
    Skyscraper,
    compare_reduced,
    format_sheaf,
    h_dims,
    h_intervals,
    hilbert,
    parse_sheaf,
    slope,
    table1_kernel,
    twist_hilbert,
)
from quadsheaf.surfcoh import LINE_01, LINE_10, chi_surface, hilbert_curve

TARGET = BiPoly.linear(4, 2, 1)


@pytest.mark.parametrize(
    "F",
    [sa.RES_M0, sa.RES_M2, sa.RES_M2_PRIME, sa.EXT_M2, sa.EXT_M4, sa.EXT_M4_PRIME, sa.EXT_M4_DPRIME],
)
def test_defining_sheaves_have_target_polynomial(F):
    assert hilbert(F) == TARGET


def test_quintic_extension_polynomial():
    assert hilbert(sa.E_QUINTIC) == BiPoly.linear(3, 2, 0)
    # E is an extension of a point by O_Q
    assert hilbert(sa.E_QUINTIC) == hilbert(sa.O_Q) + hilbert(Skyscraper(1))


def test_line_bundle_hilbert_is_chi():
    P = hilbert(O(1, -2))
    for u, v in itertools.product(range(-3, 4), repeat=2):
        assert P(u, v) == chi_surface((1 + u, -2 + v))


# random sheaf trees for additivity
leaf = st.one_of(
    st.builds(lambda a, b: O(a, b), st.integers(-3, 3), st.integers(-3, 3)),
    st.builds(lambda c, d, a, b: CurveSheaf((c, d), (a, b)),
              st.integers(0, 2), st.integers(1, 3), st.integers(-2, 2), st.integers(-2, 2)),
    st.builds(lambda a, b: sa.LineSheaf(LINE_10, (a, b)), st.integers(-2, 2), st.integers(-2, 2)),
    st.builds(Skyscraper, st.integers(1, 3)),
)
trees = st.recursive(
    leaf,
    lambda kids: st.one_of(
        st.builds(Extension, kids, kids),
        st.lists(kids, min_size=1, max_size=3).map(lambda xs: DirectSum(tuple(xs))),
    ),
    max_leaves=6,
)


@given(trees)
@settings(max_examples=80, deadline=None)
def test_hilbert_is_additive(F):
    if isinstance(F, Extension):
        assert hilbert(F) == hilbert(F.sub) + hilbert(F.quot)
    if isinstance(F, DirectSum):
        assert hilbert(F) == sum((hilbert(p) for p in F.parts), BiPoly())


@given(trees)
@settings(max_examples=60, deadline=None)
def test_format_parse_roundtrip(F):
    assert parse_sheaf(format_sheaf(F)) == F


def test_resolution_hilbert_is_alternating_sum():
    rng = random.Random(3)
    for _ in range(50):
        left = tuple((rng.randint(-3, 0), rng.randint(-3, 0)) for _ in range(rng.randint(1, 3)))
        right = tuple((rng.randint(-3, 1), rng.randint(-3, 1)) for _ in range(len(left) + rng.randint(0, 1)))
        R = Resolution(left, right)
        expected = sum((hilbert(O(*d)) for d in right), BiPoly()) - sum((hilbert(O(*d)) for d in left), BiPoly())
        assert hilbert(R) == expected


@pytest.mark.parametrize(
    "F, expected",
    [
        (sa.RES_M0, (1, 0, 0)),
        (sa.RES_M2, (2, 1, 0)),
        (sa.EXT_M4, (2, 1, 0)),
        (sa.EXT_M4_PRIME, (1, 0, 0)),
        (sa.EXT_M4_DPRIME, (1, 0, 0)),
        (sa.RES_M2_PRIME, (1, 0, 0)),
        (sa.E_QUINTIC, (1, 1, 0)),
        (O(1, 2), (6, 0, 0)),
        (DirectSum((O(1, 0), Skyscraper(2))), (4, 0, 0)),
    ],
)
def test_h_dims(F, expected):
    assert tuple(h_dims(F)) == expected


@pytest.mark.parametrize("twist, h0", [((1, 2), 7), ((2, 2), 10), ((1, 3), 9), ((0, 1), 2)])
def test_quintic_extension_twists(twist, h0):
    assert h_dims(sa.E_QUINTIC.twist(*twist)).h0 == h0


def test_unforced_cohomology_gives_interval():
    ivs = h_intervals(sa.EXT_M2)
    assert (ivs[0].lo, ivs[0].hi) == (2, 3)
    assert h_dims(sa.EXT_M2).h0 is None


@pytest.mark.parametrize("F", [sa.RES_M0, sa.RES_M2, sa.EXT_M4, sa.E_QUINTIC, O(2, -1), sa.O_Q])
def test_euler_characteristic_matches_hilbert(F):
    assert h_dims(F).euler() == hilbert(F)(0, 0)


def test_one_dimensional_support_has_no_h2():
    for F in [sa.O_Q, sa.O_L, sa.E_QUINTIC, sa.RES_M2]:
        assert sa.support_dim_le_one(F)
        assert h_dims(F).h2 == 0
    assert not sa.support_dim_le_one(O(0, 0))


def test_linpoly_roundtrip_and_render():
    P = LinPoly.of(sa.RES_M0)
    assert P == LinPoly(4, 2, 1)
    assert P.bipoly() == TARGET
    assert LinPoly(3, 2, 0).render() == "3m+2n+0"
    assert LinPoly(1, 1, 1).render() == "m+n+1"
    assert LinPoly(0, 0, 2).render() == "2"
    assert LinPoly(4, 2, 1) - LinPoly(1, 0, 2) == LinPoly(3, 2, -1)
    with pytest.raises(ValueError):
        LinPoly.of(BiPoly({(1, 1): 1}))


@pytest.mark.parametrize(
    "P, expected",
    [(LinPoly(4, 2, 1), Fraction(1, 6)), (LinPoly(1, 1, 1), Fraction(1, 2)), (LinPoly(3, 2, -1), Fraction(-1, 5))],
)
def test_slope(P, expected):
    assert slope(P) == expected


def test_slope_of_zero_dimensional_rejected():
    with pytest.raises(ValueError):
        slope(LinPoly(0, 0, 3))


def test_curve_slopes_match_closed_form():
    # a (c, d) curve has slope 1 - c d / (c + d)
    below = set()
    for c, d in itertools.product(range(3), range(5)):
        if (c, d) == (0, 0):
            continue
        s = slope(hilbert_curve((c, d), (0, 0)))
        assert s == 1 - Fraction(c * d, c + d)
        if s < -Fraction(1, 6):
            below.add((c, d))
    assert below == {(2, 3), (2, 4)}


def test_compare_reduced_and_twist():
    assert compare_reduced(LinPoly(1, 0, 1), LinPoly(4, 2, 1)) == 1
    assert compare_reduced(LinPoly(2, 1, 0), LinPoly(4, 2, 0)) == 0
    P = LinPoly(4, 2, 1)
    for u, v in itertools.product(range(-2, 3), repeat=2):
        assert twist_hilbert(P, u, v).t == P.bipoly()(u, v)


TABLE1 = [
    ((0, 1), (-2, -3), "3m+2n-1"),
    ((1, 0), (-1, -4), "4m+n+1"),
    ((0, 2), (-2, -2), "2m+2n"),
    ((1, 1), (-1, -3), "3m+n+1"),
    ((0, 3), (-2, -1), "m+2n+1"),
    ((1, 2), (-1, -2), "2m+n+1"),
    ((1, 3), (-1, -1), "m+n+1"),
]


@pytest.mark.parametrize("deg_g, ij, coker", TABLE1)
def test_table1_rows(deg_g, ij, coker):
    got_ij, P = table1_kernel(deg_g)
    assert tuple(got_ij) == ij
    assert str(P) == coker


@pytest.mark.parametrize("deg_g", [(0, 0), (2, 0), (0, 4), (-1, 1)])
def test_table1_rejects_out_of_range(deg_g):
    with pytest.raises(ValueError):
        table1_kernel(deg_g)


def test_parse_shorthand_and_hyps():
    assert parse_sheaf("O(1,-2)") == O(1, -2)
    F = parse_sheaf("(ext (curve 2 3 0 0) (line 0 1 1 0) (hyp 0 YZ zero))")
    assert F == sa.EXT_M4_PRIME
    assert parse_sheaf(format_sheaf(sa.RES_M0)) == sa.RES_M0


def test_twist_drops_hypotheses():
    assert sa.RES_M0.twist(1, 0).hyps == ()
    assert hilbert(sa.RES_M0.twist(1, 0)) == TARGET.shift(1, 0)


@pytest.mark.parametrize("text", ["(foo 1)", "(O 1)", "(curve 2 3", "", "(O 1 2) extra", "(hyp 0 XY zero)"])
def test_parse_errors(text):
    with pytest.raises(SheafParseError):
        parse_sheaf(text)


def test_line_sheaf_is_on_a_ruling():
    assert hilbert(sa.O_L) == BiPoly.linear(1, 0, 1)
    assert hilbert(sa.LineSheaf(LINE_01, (-1, 0))) == BiPoly.linear(1, 0, 0)
