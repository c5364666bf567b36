"""
Poincare polynomials of the pair moduli and of M(4m+2n+1).

The large-alpha moduli are read from the known-moduli table.  Each wall,
taken in decreasing alpha, replaces a ``P^a``-bundle over the wall's base by
a ``P^b``-bundle; the fibre dimensions come from pair Ext groups.  The
result for ``4m+2n+1`` and the one for ``4m+2n-1`` combine as

    P(M) = P(M^{0+}(4m+2n+1)) - x * P(M^{0+}(4m+2n-1)).

Each wall delta is also compared with an independently written product;
the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import wallfind
from .exactpoly import UPoly, X, geometric_poly
from .spaces import (
    Blowup,
    Bundle,
    CrossWall,
    Proj,
    SpaceExpr,
    cross_wall_delta,
    poincare,
)

P = geometric_poly

# Expected polynomial, lowest degree first; used only for comparison.
THEOREM_TARGET = UPoly([1, 3, 8, 16, 21, 23, 24, 24, 24, 24, 24, 24, 23, 21, 16, 8, 3, 1])

# The wall deltas written out as products of projective spaces, keyed by
# (whole t, alpha).  These are compared with what flip_data produces.
DISPLAYED_DELTAS = {
    (1, 11): (P(1) - P(3)) * P(11) * P(1),
    (1, 5): (P(1) - P(2)) * P(10) * P(1) * P(1) * P(1),
    (-1, 1): (P(1) - P(1)) * P(11) * P(1),
}


class AssemblyMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class Assembly:
    space: SpaceExpr
    poly: UPoly
    walls: tuple


def _assemble(whole, table=None, facts=None, check_display=True):
    table = wallfind.default_table() if table is None else table
    start = wallfind.known_moduli(whole.P, 1, "inf", table)
    if start.kind is not wallfind.Kind.SPACE:
        raise ValueError(f"no large-alpha description for {whole.P}")
    space = start.space
    walls = wallfind.find_walls(whole, table=table)
    done = []
    for w in sorted(walls, key=lambda w: -w.alpha):
        w = wallfind.flip_data(w, facts)
        delta = cross_wall_delta(w.fiber_minus, w.fiber_plus, w.base)
        key = (whole.P.t, w.alpha)
        if check_display and key in DISPLAYED_DELTAS and DISPLAYED_DELTAS[key] != delta:
            raise AssemblyMismatch(
                f"wall {w.alpha}: flip data gives {delta}, displayed product is {DISPLAYED_DELTAS[key]}"
            )
        space = CrossWall(space, w.fiber_minus, w.fiber_plus, w.base)
        done.append(w)
    return Assembly(space, poincare(space), tuple(done))


def assemble_M0plus_4m2n1(table=None, facts=None, betti=None) -> Assembly:
    if betti is not None and table is None:
        table = wallfind.default_table(betti)
    return _assemble(wallfind.WHOLE_PLUS, table, facts)


def assemble_M0plus_4m2n_minus1(table=None, facts=None) -> Assembly:
    return _assemble(wallfind.WHOLE_MINUS, table, facts)


@dataclass(frozen=True)
class Verdict:
    computed: UPoly
    expected: UPoly
    ok: bool
    first_mismatch: int | None

    def describe(self):
        if self.ok:
            return "matches"
        e = self.first_mismatch
        return f"differs at x^{e}: computed {self.computed[e]}, expected {self.expected[e]}"


def compare(computed: UPoly, expected: UPoly) -> Verdict:
    top = max(computed.degree, expected.degree)
    for e in range(top + 1):
        if computed[e] != expected[e]:
            return Verdict(computed, expected, False, e)
    return Verdict(computed, expected, True, None)


def assemble_theorem12(table=None, facts=None, betti=None) -> Verdict:
    plus = assemble_M0plus_4m2n1(table, facts, betti).poly
    minus = assemble_M0plus_4m2n_minus1(table, facts).poly
    return compare(plus - X * minus, THEOREM_TARGET)


def blowup_crossing(X_space: SpaceExpr, fiber_from, fiber_to, base) -> UPoly:
    """Poincare polynomial of the far side of a flip, via a common blow-up.

    Blowing up ``X`` along the ``P^fiber_from``-bundle over ``base``
    (codimension ``fiber_to + 1``) gives the same space as blowing up the far
    side along the ``P^fiber_to``-bundle (codimension ``fiber_from + 1``).
    Solving for the far side must reproduce the cross-wall delta.
    """
    blown = Blowup(X_space, Bundle(Proj(fiber_from), base), fiber_to + 1)
    other_centre = Bundle(Proj(fiber_to), base)
    return poincare(blown) - (P(fiber_from) - 1) * poincare(other_centre)
