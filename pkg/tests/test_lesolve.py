import itertools
import random

import pytest

from quadsheaf.lesolve import Annot, ExactSeq, Interval, Status, Term, describe, solve, solve_system


def seq(*dims, maps=None, **kw):
    return ExactSeq(tuple(Term(f"V{i}", d) for i, d in enumerate(dims)), maps, **kw)


def test_rank_nullity_middle():
    sol = solve(seq(1, None, 2))
    assert sol.status is Status.UNIQUE
    assert sol.dims == (1, 3, 2)


def test_zero_flanks_force_isomorphism():
    sol = solve(seq(0, None, 2, 0))
    assert sol.dims[1] == 2


def test_underdetermined_is_unbounded():
    sol = solve(seq(1, None, None, 1))
    assert sol.status is Status.AMBIGUOUS
    assert sol.intervals[1] == Interval(1, None)
    assert sol.intervals[2] == Interval(1, None)
    assert sol.unbounded
    assert str(sol.intervals[1]) == "[1, inf]"


def test_inconsistent_is_a_value():
    assert solve(seq(1, 0)).status is Status.INCONSISTENT
    assert solve(seq(2, 1)).status is Status.INCONSISTENT


def test_fully_known_is_idempotent():
    s = seq(1, 3, 4, 2)
    sol = solve(s)
    assert sol.status is Status.UNIQUE
    assert sol.dims == (1, 3, 4, 2)
    assert sol.ranks == (0, 1, 2, 2, 0)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        ExactSeq((Term("a", 1), Term("b", 1)), (Annot.NONE, Annot.NONE))


def test_annotations():
    # 0 -> 2 -> ? -> 3 -> 0 with the first map injective and the last surjective is fixed anyway
    assert solve(seq(2, None, 3)).dims[1] == 5
    # a zero map splits the sequence
    s = seq(None, 2, None, 1, maps=(Annot.NONE, Annot.ZERO, Annot.NONE))
    sol = solve(s)
    assert sol.dims == (2, 2, 1, 1)


def test_injective_and_surjective():
    s = seq(None, 3, None, maps=(Annot.INJECTIVE, Annot.SURJECTIVE))
    sol = solve(s)
    assert sol.status is Status.AMBIGUOUS
    # V0 -> V1 injective, V1 -> V2 surjective: dims add up to 3
    s2 = seq(1, 3, None, maps=(Annot.INJECTIVE, Annot.SURJECTIVE))
    assert solve(s2).dims == (1, 3, 2)


def test_open_ends():
    sol = solve(seq(None, 2, open_left=True))
    assert sol.dims[0] is None
    assert sol.intervals[0] == Interval(2, None)
    sol = solve(seq(2, None, open_right=True))
    assert sol.intervals[1] == Interval(2, None)


def test_describe_mentions_status():
    s = seq(1, None, 2)
    assert describe(s, solve(s)).startswith("[UNIQUE] 0 -> V0=1")


def test_label_lookup():
    s = seq(1, None, 2)
    sol = solve(s)
    assert sol.dim("V1") == 3
    assert sol.interval("V2") == Interval(2, 2)
    with pytest.raises(KeyError):
        sol.dim("nope")


def _random_true_sequence(rng, k):
    ranks = [0] + [rng.randint(0, 4) for _ in range(k - 1)] + [0]
    dims = [ranks[i] + ranks[i + 1] for i in range(k)]
    maps = []
    for j in range(k - 1):
        r = rng.random()
        if r < 0.15 and ranks[j + 1] == 0:
            maps.append(Annot.ZERO)
        elif r < 0.3 and ranks[j] == 0:
            maps.append(Annot.INJECTIVE)
        elif r < 0.45 and ranks[j + 2] == 0:
            maps.append(Annot.SURJECTIVE)
        else:
            maps.append(Annot.NONE)
    return ranks, dims, maps


def _brute_force(dims, maps, cap):
    """All rank vectors up to ``cap`` consistent with the known dims."""
    k = len(dims)
    out = []
    for inner in itertools.product(range(cap + 1), repeat=k - 1):
        r = (0,) + inner + (0,)
        if any(d is not None and r[i] + r[i + 1] != d for i, d in enumerate(dims)):
            continue
        bad = False
        for j, a in enumerate(maps):
            if (a is Annot.ZERO and r[j + 1]) or (a is Annot.INJECTIVE and r[j]) or (a is Annot.SURJECTIVE and r[j + 2]):
                bad = True
        if not bad:
            out.append(r)
    return out


def test_random_oracle_1200_sequences():
    rng = random.Random(2024)
    checked = 0
    for _ in range(1200):
        k = rng.randint(2, 6)
        ranks, dims, maps = _random_true_sequence(rng, k)
        hidden = [d if rng.random() < 0.6 else None for d in dims]
        sol = solve(seq(*hidden, maps=tuple(maps)))
        assert sol.status is not Status.INCONSISTENT
        for i, d in enumerate(dims):
            assert d in sol.intervals[i]
            if sol.dims[i] is not None:
                assert sol.dims[i] == d
        checked += 1
    assert checked >= 1000


def test_random_intervals_are_tight():
    rng = random.Random(99)
    cap = 9  # dims reach 8, so ranks up to 9 cover every feasible vector that matters
    for _ in range(150):
        k = rng.randint(2, 5)
        _, dims, maps = _random_true_sequence(rng, k)
        hidden = [d if rng.random() < 0.5 else None for d in dims]
        sol = solve(seq(*hidden, maps=tuple(maps)))
        feasible = _brute_force(hidden, maps, cap)
        for i in range(k):
            values = [r[i] + r[i + 1] for r in feasible]
            assert sol.intervals[i].lo == min(values)
            if sol.intervals[i].hi is not None:
                assert sol.intervals[i].hi == max(values)
            else:
                assert max(values) >= cap


def test_mirror_symmetry():
    rng = random.Random(5)
    for _ in range(300):
        k = rng.randint(2, 6)
        _, dims, maps = _random_true_sequence(rng, k)
        hidden = [d if rng.random() < 0.5 else None for d in dims]
        s = seq(*hidden, maps=tuple(maps))
        a, b = solve(s), solve(s.mirrored())
        assert a.status == b.status
        assert a.intervals == tuple(reversed(b.intervals))


def test_shared_unknowns_link_sequences():
    s1 = ExactSeq((Term("a", 1), Term("x", var="x"), Term("b", None), Term("c", 1)))
    s2 = ExactSeq((Term("x", var="x"), Term("d", 2)))
    res = solve_system([s1, s2])
    assert res.vars["x"] == Interval(2, 2)
    assert res.solutions[0].dims == (1, 2, 2, 1)


def test_shared_unknowns_contradiction():
    s1 = ExactSeq((Term("x", var="x"), Term("d", 2)))
    s2 = ExactSeq((Term("x", var="x"), Term("d", 3)))
    assert solve_system([s1, s2]).status is Status.INCONSISTENT


def test_known_pins_named_unknown():
    s = ExactSeq((Term("x", var="x"), Term("y", None), Term("z", 1)))
    res = solve_system([s], known={"x": 4})
    assert res.solutions[0].dims == (4, 5, 1)


def test_joint_system_beats_each_route():
    # one route alone leaves x in [2, 4]; the other pins it
    r1 = ExactSeq((Term("x", var="x"), Term("a", 4), Term("b", None), Term("c", 2)), open_right=True)
    r2 = ExactSeq((Term("x", var="x"), Term("e", 2)))
    assert solve(r1).intervals[0].lo <= 2
    assert solve_system([r1, r2]).vars["x"] == Interval(2, 2)
