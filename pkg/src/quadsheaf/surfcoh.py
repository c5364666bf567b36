"""
Cohomology of line bundles on P^1 and P^1 x P^1, their restrictions to
curves and lines, and Hilbert polynomials.

Conventions
-----------
``O(a, b)`` is ``O_{P^1}(a) (x) O_{P^1}(b)``; the canonical bundle is
``O(-2, -2)``.  A curve of class ``(c, d)`` is the zero locus of a nonzero
section of ``O(c, d)``, so its structure sheaf has Hilbert polynomial
``d*m + c*n + (c + d - c*d)``.  Restricting ``O(a, b)`` to a line of class
``(0, 1)`` gives ``O_{P^1}(a)``; to a line of class ``(1, 0)`` gives
``O_{P^1}(b)``.

Unknown cohomology dimensions are ``None``.
"""

from __future__ import annotations

from typing import NamedTuple

from .exactpoly import BiPoly
from .lesolve import Annot, ExactSeq, Term, solve


class BiDegree(NamedTuple):
    a: int
    b: int

    def __add__(self, other):
        return BiDegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return BiDegree(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return BiDegree(-self.a, -self.b)


class CurveClass(NamedTuple):
    c: int
    d: int

    def check(self):
        if self.c < 0 or self.d < 0 or (self.c, self.d) == (0, 0):
            raise ValueError(f"invalid curve class {tuple(self)}")
        return self

    @property
    def is_line(self):
        return self.c + self.d == 1


LINE_01 = CurveClass(0, 1)
LINE_10 = CurveClass(1, 0)
OMEGA = BiDegree(-2, -2)


class CohDims(NamedTuple):
    h0: int | None
    h1: int | None
    h2: int | None

    @property
    def known(self):
        return None not in self

    def euler(self):
        if not self.known:
            return None
        return self.h0 - self.h1 + self.h2

    def __add__(self, other):
        return CohDims(*(None if x is None or y is None else x + y for x, y in zip(self, other)))


ZERO_DIMS = CohDims(0, 0, 0)


def h_p1(a):
    """``(h^0, h^1)`` of ``O_{P^1}(a)``."""
    return (a + 1 if a >= 0 else 0, -a - 1 if a <= -2 else 0)


def h_surface(t) -> CohDims:
    """Kunneth formula for ``O(a, b)``."""
    a, b = t
    x0, x1 = h_p1(a)
    y0, y1 = h_p1(b)
    return CohDims(x0 * y0, x0 * y1 + x1 * y0, x1 * y1)


def chi_surface(t):
    a, b = t
    return (a + 1) * (b + 1)


def serre_dual(t):
    a, b = t
    return BiDegree(-2 - a, -2 - b)


def restricted_degree(line, t):
    """Degree of ``O(a, b)`` restricted to a line of the given class."""
    line = CurveClass(*line)
    if line == LINE_01:
        return t[0]
    if line == LINE_10:
        return t[1]
    raise ValueError(f"{tuple(line)} is not a line class")


def h_line(line, t):
    return h_p1(restricted_degree(line, t))


ARROW_OFFSET = {"XY": 0, "YZ": 1, "ZX": 2}


def nine_term(terms, hyps=()):
    """``ExactSeq`` over nine ``Term`` objects laid out ``X0 Y0 Z0 X1 ... Z2``.

    ``hyps`` holds ``(degree, arrow, Annot)`` triples; arrow is ``"XY"``,
    ``"YZ"`` or ``"ZX"`` (the connecting map from degree ``i`` to ``i + 1``).
    """
    maps = [Annot.NONE] * 8
    for degree, arrow, annot in hyps:
        idx = 3 * degree + ARROW_OFFSET[arrow]
        if idx > 7:
            raise ValueError(f"no map {arrow} in degree {degree}")
        maps[idx] = annot
    return ExactSeq(tuple(terms), tuple(maps))


def les_nine(x, y, z, hyps=(), labels=("X", "Y", "Z"), z_vanishes_h2=False):
    """Long exact cohomology sequence of ``0 -> X -> Y -> Z -> 0``.

    ``x, y, z`` are ``CohDims``; see :func:`nine_term` for ``hyps``.
    Returns ``(ExactSeq, Solution)``.
    """
    terms = []
    for i in range(3):
        for name, dims in zip(labels, (x, y, z)):
            terms.append(Term(f"H{i}({name})", dims[i]))
    if z_vanishes_h2:
        terms[8] = Term(terms[8].label, 0)
    seq = nine_term(terms, hyps)
    return seq, solve(seq)


def _dims_of(sol, start):
    if sol.dims:
        return CohDims(sol.dims[start], sol.dims[start + 3], sol.dims[start + 6])
    return CohDims(None, None, None)


def h_curve(curve, t) -> CohDims:
    """Cohomology of ``O_C(a, b)`` from ``0 -> O(t - C) -> O(t) -> O_C(t) -> 0``."""
    curve = CurveClass(*curve).check()
    t = BiDegree(*t)
    k = t - curve
    _, sol = les_nine(
        h_surface(k),
        h_surface(t),
        CohDims(None, None, None),
        hyps=[(0, "XY", Annot.INJECTIVE)],
        labels=("K", "O", "O_C"),
        z_vanishes_h2=True,
    )
    return _dims_of(sol, 2)


def hilbert_line_bundle(t) -> BiPoly:
    a, b = t
    return BiPoly({(1, 1): 1, (1, 0): b + 1, (0, 1): a + 1, (0, 0): (a + 1) * (b + 1)})


def hilbert_curve(curve, t) -> BiPoly:
    curve = CurveClass(*curve).check()
    t = BiDegree(*t)
    return hilbert_line_bundle(t) - hilbert_line_bundle(t - curve)


def hilbert_line(line, t) -> BiPoly:
    line = CurveClass(*line)
    if line == LINE_01:
        return BiPoly.linear(1, 0, t[0] + 1)
    if line == LINE_10:
        return BiPoly.linear(0, 1, t[1] + 1)
    raise ValueError(f"{tuple(line)} is not a line class")


def hilbert_skyscraper(length) -> BiPoly:
    return BiPoly.const(length)
