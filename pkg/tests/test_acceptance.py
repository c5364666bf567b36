"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them)."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from quadsheaf import sheafalg, surfcoh
from quadsheaf.betticalc import THEOREM_TARGET, assemble_theorem12
from quadsheaf.exactpoly import UPoly, X
from quadsheaf.extcalc import PAIRS, ext_dims_pair, paper_facts
from quadsheaf.lesolve import Annot, ExactSeq, Term, solve
from quadsheaf.report import CheckStatus, summary, verify_all
from quadsheaf.sheafalg import table1_kernel
from quadsheaf.spaces import Bundle, Hilb, Proj, UniversalCurve, dim, goettsche
from quadsheaf.wallfind import WHOLE_MINUS, WHOLE_PLUS, find_walls, wall_candidates, wall_values


class Criterion:
    def __init__(self):
        self.n, self.text, self.ok = None, "", False
        self.t0 = time.perf_counter()

    def begin(self, n, text):
        self.n, self.text = n, text


@pytest.fixture
def criterion():
    """Print one PASS/FAIL line for the criterion, with timing."""
    c = Criterion()
    yield c
    ms = 1000 * (time.perf_counter() - c.t0)
    print(f"\n{'PASS' if c.ok else 'FAIL'} criterion {c.n}: {c.text} ({ms:.0f} ms)")


TABLE1 = [
    ((0, 1), (-2, -3), "3m+2n-1"),
    ((1, 0), (-1, -4), "4m+n+1"),
    ((0, 2), (-2, -2), "2m+2n"),
    ((1, 1), (-1, -3), "3m+n+1"),
    ((0, 3), (-2, -1), "m+2n+1"),
    ((1, 2), (-1, -2), "2m+n+1"),
    ((1, 3), (-1, -1), "m+n+1"),
]


def test_criterion_1_table1(criterion):
    criterion.begin(1, "kernel table reproduced, 7 rows")
    rows = [(tuple(ij), str(P)) for ij, P in (table1_kernel(g) for g, _, _ in TABLE1)]
    assert rows == [(ij, coker) for _, ij, coker in TABLE1]
    criterion.ok = True


def test_criterion_2_walls(criterion):
    criterion.begin(2, "walls {5, 11} for 4m+2n+1 and {1} for 4m+2n-1; alpha = 2 filtered by emptiness")
    assert wall_values(find_walls(WHOLE_PLUS)) == [5, 11]
    assert wall_values(find_walls(WHOLE_MINUS)) == [1]
    assert 2 in {c.alpha for c in wall_candidates(WHOLE_PLUS)}
    assert 2 not in wall_values(find_walls(WHOLE_PLUS))
    criterion.ok = True


PAIR_EXT1 = [("L1", "L2", 4), ("L2", "L1", 2), ("L3", "L4", 3), ("L4", "L3", 2), ("L1", "L5", 2), ("L5", "L1", 2)]
PAIR_EXT2 = [("L1", "L2"), ("L2", "L1"), ("L2", "L2"), ("L1", "L1"), ("L3", "L4"), ("L4", "L3"),
             ("L4", "L4"), ("L3", "L3"), ("L1", "L5"), ("L5", "L1"), ("L5", "L5")]


def test_criterion_3_pair_ext(criterion):
    criterion.begin(3, "six pair Ext^1 values (4, 2, 3, 2, 2, 2) and eleven Ext^2 vanishings resolve uniquely")
    facts = paper_facts()
    for a, b, v in PAIR_EXT1:
        res = ext_dims_pair(PAIRS[a], PAIRS[b], facts)
        assert res.is_unique(1) and res.dim(1) == v, (a, b)
    for a, b in PAIR_EXT2:
        res = ext_dims_pair(PAIRS[a], PAIRS[b], facts)
        assert res.is_unique(2) and res.dim(2) == 0, (a, b)
    criterion.ok = True


def test_criterion_4_goettsche(criterion):
    criterion.begin(4, "Hilb^1, Hilb^2, Hilb^3 of the quadric")
    betti = (1, 0, 2, 0, 1)
    assert goettsche(betti, 1) == (X + 1) ** 2
    assert goettsche(betti, 2) == UPoly([1, 3, 6, 3, 1])
    assert goettsche(betti, 3) == UPoly([1, 3, 9, 14, 9, 3, 1])
    criterion.ok = True


def test_criterion_5_theorem_polynomial(criterion):
    criterion.begin(5, "degree-17 Poincare polynomial, palindromic, value 288")
    v = assemble_theorem12()
    assert v.ok
    assert v.computed == THEOREM_TARGET
    assert v.computed.is_palindromic()
    assert v.computed(1) == 288
    assert v.computed.degree == 17 == 2 * 4 * 2 + 1
    criterion.ok = True


def test_criterion_6_strata(criterion):
    criterion.begin(6, "stratum dims (17, 15, 15, 13, 13, 13), codims (0, 2, 2, 4, 4, 4), Hilbert polynomials 4m+2n+1")
    checks = {c.id: c for c in verify_all()}
    names = ["M_0", "M_2", "M_2p", "M_4", "M_4p", "M_4pp"]
    for n in names:
        assert checks[f"stratum.{n}.hilbert"].status is CheckStatus.PASS
        assert checks[f"stratum.{n}.dim"].status is CheckStatus.PASS
    # bundle arithmetic where a description exists
    assert dim(Bundle(Proj(11), Hilb(3))) == 17
    assert dim(UniversalCurve(2, 4)) == 15
    assert checks["stratum.M_4.dim"].computed == [13, 4]
    assert checks["stratum.M_4p.dim"].computed == [13, 4]
    for F in (sheafalg.RES_M0, sheafalg.RES_M2, sheafalg.RES_M2_PRIME, sheafalg.EXT_M4,
              sheafalg.EXT_M4_PRIME, sheafalg.EXT_M4_DPRIME):
        assert str(sheafalg.hilbert(F)) == "4m+2n+1"
    criterion.ok = True


def _random_exact(rng):
    k = rng.randint(2, 6)
    ranks = [0] + [rng.randint(0, 4) for _ in range(k - 1)] + [0]
    dims = [ranks[i] + ranks[i + 1] for i in range(k)]
    maps = tuple(Annot.ZERO if ranks[j + 1] == 0 and rng.random() < 0.2 else Annot.NONE for j in range(k - 1))
    hidden = [d if rng.random() < 0.6 else None for d in dims]
    return dims, ExactSeq(tuple(Term(f"V{i}", d) for i, d in enumerate(hidden)), maps)


def test_criterion_7_property_suites(criterion):
    criterion.begin(7, "Serre sweep, Kunneth sweep, 1000 random exact sequences, exhaustive wall scan")
    triples = 0
    for a, b in itertools.product(range(-6, 7), repeat=2):
        h = surfcoh.h_surface((a, b))
        hd = surfcoh.h_surface(surfcoh.serre_dual((a, b)))
        for i in range(3):
            assert h[i] == hd[2 - i]
            triples += 1
        assert h.euler() == (a + 1) * (b + 1)
    assert triples == 3 * 13 * 13
    rng = random.Random(1)
    for _ in range(1000):
        dims, s = _random_exact(rng)
        sol = solve(s)
        assert all(d in iv for d, iv in zip(dims, sol.intervals))
    R, S, T = 4, 2, 1
    brute = set()
    for r, s in itertools.product(range(R + 1), range(S + 1)):
        if (r, s) in ((0, 0), (R, S)):
            continue
        for t in range(max(-60, r + s - r * s), 61):
            alpha = Fraction(T * (r + s) - t * (R + S), (R + S) - (r + s))
            if alpha > 0:
                brute.add((alpha, r, s, t))
    got = {(c.alpha, c.sub.P.r, c.sub.P.s, c.sub.P.t) for c in wall_candidates(WHOLE_PLUS)}
    assert got == brute
    criterion.ok = True


def test_criterion_8_documented_discrepancy(criterion):
    criterion.begin(8, "M_2 Brill-Noether h0 is NOT_FORCED (2 vs 3) and the suite still passes")
    checks = verify_all()
    c = {c.id: c for c in checks}["stratum.M_2.h0"]
    assert c.status is CheckStatus.NOT_FORCED
    assert (c.computed, c.expected) == (2, 3)
    assert "Theorem 1.1" in c.citation and "final sentence" in c.citation
    assert summary(checks)["fail"] == 0
    criterion.ok = True
