import itertools
from fractions import Fraction

import pytest

from quadsheaf.extcalc import HomFacts
from quadsheaf.sheafalg import LinPoly
from quadsheaf.spaces import Prod, Proj, UniversalCurve
from quadsheaf.wallfind import (
    NOT_IN_TABLE,
    WHOLE_MINUS,
    WHOLE_PLUS,
    Kind,
    PairPoly,
    Verdict,
    default_table,
    find_walls,
    flip_data,
    known_moduli,
    pair_slope,
    wall_alpha,
    wall_candidates,
    wall_values,
)


@pytest.mark.parametrize(
    "pp, alpha, expected",
    [
        (PairPoly.of(4, 2, 1, 1), 5, Fraction(1)),
        (PairPoly.of(4, 2, 1, 0), 5, Fraction(1, 6)),
        (PairPoly.of(1, 0, 2, 0), 0, Fraction(2)),
        (PairPoly.of(3, 2, -1, 1), Fraction(1, 2), Fraction(-1, 10)),
    ],
)
def test_pair_slope(pp, alpha, expected):
    assert pair_slope(pp, alpha) == expected


def test_pair_slope_rejects_zero_dimensional():
    with pytest.raises(ValueError):
        pair_slope(PairPoly.of(0, 0, 1, 1), 1)


def test_gamma_validated():
    with pytest.raises(ValueError):
        PairPoly.of(1, 0, 0, 2)


def test_wall_alpha_examples():
    assert wall_alpha(WHOLE_PLUS, PairPoly.of(3, 2, 0, 1)) == 5
    assert wall_alpha(WHOLE_PLUS, PairPoly.of(3, 2, -1, 1)) == 11
    assert wall_alpha(WHOLE_MINUS, PairPoly.of(3, 2, -1, 1)) == 1


def test_walls_of_target():
    assert wall_values(find_walls(WHOLE_PLUS)) == [5, 11]
    assert wall_values(find_walls(WHOLE_MINUS)) == [1]


def test_alpha_two_candidate_filtered_by_emptiness():
    before = wall_candidates(WHOLE_PLUS)
    assert 2 in {c.alpha for c in before}
    assert 2 not in wall_values(find_walls(WHOLE_PLUS))
    unfiltered = find_walls(WHOLE_PLUS, filter_empty=False)
    two = [w for w in unfiltered if w.alpha == 2]
    assert [w.verdict for w in two] == [Verdict.REJECTED_EMPTY]
    assert two[0].quot.P == LinPoly(2, 0, 1)


def test_missing_table_entry_is_unverified_not_dropped():
    table = default_table()
    del table[(2, 0, 1, 0, None)]
    walls = find_walls(WHOLE_PLUS, table=table)
    assert wall_values(walls) == [2, 5, 11]
    assert [w.verdict for w in walls if w.alpha == 2] == [Verdict.UNVERIFIED]
    assert "UNVERIFIED" in [w for w in walls if w.alpha == 2][0].render()


def test_render():
    text = ", ".join(w.render() for w in find_walls(WHOLE_PLUS))
    assert text == "α = 5 [sub 3m+2n+0 | quot m+1], α = 11 [sub 3m+2n-1 | quot m+2]"


def _brute_force(whole, span=60):
    """Every positive-alpha split found by scanning a wide t range directly."""
    R, S, T = whole.P.r, whole.P.s, whole.P.t
    found = set()
    for r, s in itertools.product(range(R + 1), range(S + 1)):
        if (r, s) in ((0, 0), (R, S)):
            continue
        for t in range(-span, span + 1):
            if t < r + s - r * s:
                continue
            # equal slopes: (t + a) / (r + s) == (T + a) / (R + S)
            alpha = Fraction(T * (r + s) - t * (R + S), (R + S) - (r + s))
            if alpha > 0:
                found.add((alpha, r, s, t))
    return found


@pytest.mark.parametrize("r, s, t", [(4, 2, 1), (4, 2, -1), (3, 2, 2), (2, 2, 3), (5, 1, 0), (3, 3, 4), (2, 1, 5)])
def test_candidates_are_exhaustive(r, s, t):
    whole = PairPoly.of(r, s, t, 1)
    got = {(c.alpha, c.sub.P.r, c.sub.P.s, c.sub.P.t) for c in wall_candidates(whole)}
    assert got == _brute_force(whole)


@pytest.mark.parametrize("whole", [WHOLE_PLUS, WHOLE_MINUS, PairPoly.of(3, 3, 4, 1)])
def test_all_three_slopes_agree_at_the_wall(whole):
    for c in wall_candidates(whole):
        a = c.alpha
        assert pair_slope(c.sub, a) == pair_slope(whole, a) == pair_slope(c.quot, a)
        assert c.sub.P + c.quot.P == whole.P


def test_excluded_pieces_never_give_positive_alpha():
    # a section-free piece with the whole (r, s) leaves a section-carrying
    # complement of length T - t > 0; find where its slope meets the whole's
    for whole in (WHOLE_PLUS, WHOLE_MINUS):
        for t in range(-30, whole.P.t):
            piece = PairPoly.of(whole.P.r, whole.P.s, t, 0)
            meets = [a for a in range(-40, 41) if pair_slope(piece, a) == pair_slope(whole, a)]
            assert len(meets) == 1 and meets[0] < 0


def test_bounds():
    assert wall_values(find_walls(WHOLE_PLUS, bounds=(3, 2))) == [5, 11]
    with pytest.raises(ValueError):
        wall_candidates(WHOLE_PLUS, bounds=(5, 2))
    with pytest.raises(ValueError):
        wall_candidates(PairPoly.of(4, 2, 1, 0))


def test_known_moduli_lookup():
    assert known_moduli(LinPoly(2, 0, 1)).empty
    assert known_moduli(LinPoly(3, 2, -1), 1).space == Proj(11)
    assert known_moduli(LinPoly(7, 7, 7)) is NOT_IN_TABLE
    assert known_moduli(LinPoly(1, 0, 1)).kind is Kind.SPACE


@pytest.mark.parametrize(
    "whole, alpha, minus, plus, base",
    [
        (WHOLE_PLUS, 11, 3, 1, Prod((Proj(11), Proj(1)))),
        (WHOLE_PLUS, 5, 2, 1, Prod((UniversalCurve(2, 3), Proj(1)))),
        (WHOLE_MINUS, 1, 1, 1, Prod((Proj(11), Proj(1)))),
    ],
)
def test_flip_data(whole, alpha, minus, plus, base):
    w = next(w for w in find_walls(whole) if w.alpha == alpha)
    w = flip_data(w)
    assert (w.fiber_minus, w.fiber_plus, w.base) == (minus, plus, base)


def test_flip_data_needs_facts():
    w = next(w for w in find_walls(WHOLE_PLUS) if w.alpha == 11)
    with pytest.raises(ValueError):
        flip_data(w, HomFacts())


def test_flip_data_needs_table_entries():
    table = default_table()
    del table[(2, 0, 1, 0, None)]
    w = next(w for w in find_walls(WHOLE_PLUS, table=table) if w.alpha == 2)
    with pytest.raises(ValueError):
        flip_data(w)
