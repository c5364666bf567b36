"""
Walls for alpha-semistable pairs with linear Hilbert polynomial.

A pair ``(Gamma, F)`` with ``dim Gamma = gamma`` and ``P_F = rm + sn + t``
has alpha-slope ``(t + gamma*alpha) / (r + s)``.  For a whole pair with
``gamma = 1`` a wall is a positive ``alpha`` at which the whole splits into
a piece carrying the section and a piece without, both of the same
alpha-slope.  Writing the section-carrying piece as ``(r, s, t)`` and the
whole as ``(R, S, T)``,

    alpha * ((R + S) - (r + s)) = T*(r + s) - t*(R + S).

The section-carrying piece contains the structure sheaf of a curve of
class ``(s, r)``, so ``t >= r + s - r*s``.  Since ``r + s < R + S``
positivity of ``alpha`` bounds ``t`` above, so the scan is finite.

Candidates are then checked against a small table of known moduli spaces:
an empty factor removes the candidate; a factor missing from the table
keeps it, flagged ``UNVERIFIED``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from . import extcalc, sheafalg
from .extcalc import PairExpr
from .sheafalg import LinPoly
from .spaces import Bundle, Hilb, Prod, Proj, SpaceExpr, UniversalCurve, format_space


@dataclass(frozen=True)
class PairPoly:
    P: LinPoly
    gamma: int

    def __post_init__(self):
        if self.gamma not in (0, 1):
            raise ValueError("gamma must be 0 or 1")

    @classmethod
    def of(cls, r, s, t, gamma):
        return cls(LinPoly(r, s, t), gamma)

    def __str__(self):
        return f"{self.P}" + (" with section" if self.gamma else "")


def pair_slope(pp: PairPoly, alpha) -> Fraction:
    d = pp.P.r + pp.P.s
    if d == 0:
        raise ValueError("pair slope undefined for r + s = 0")
    return Fraction(pp.P.t + pp.gamma * Fraction(alpha), d)


def wall_alpha(whole: PairPoly, piece: PairPoly):
    """The ``alpha`` where ``piece`` and ``whole`` have equal slope, or None."""
    R, S, T = whole.P.r, whole.P.s, whole.P.t
    r, s, t = piece.P.r, piece.P.s, piece.P.t
    coef = (R + S) * piece.gamma - (r + s) * whole.gamma
    rhs = T * (r + s) - t * (R + S)
    if coef == 0:
        return None
    return Fraction(rhs, coef)


# -- known moduli ----------------------------------------------------------


class Kind(Enum):
    EMPTY = "EMPTY"
    SPACE = "SPACE"
    NOT_IN_TABLE = "NOT_IN_TABLE"


@dataclass(frozen=True)
class ModuliFact:
    kind: Kind
    space: SpaceExpr | None = None
    rep: PairExpr | None = None
    citation: str = ""

    @property
    def empty(self):
        return self.kind is Kind.EMPTY

    def describe(self):
        if self.kind is Kind.SPACE:
            return format_space(self.space)
        return self.kind.value


NOT_IN_TABLE = ModuliFact(Kind.NOT_IN_TABLE)


def default_table(betti=None):
    """Known moduli keyed by ``(r, s, t, gamma, chamber)``; chamber is None for gamma = 0."""
    hilb3 = Hilb(3) if betti is None else Hilb(3, betti)
    table = {
        (2, 0, 1, 0, None): ModuliFact(Kind.EMPTY, citation="no semistable sheaf with P = 2m+1"),
        (3, 2, -1, 1, "0+"): ModuliFact(
            Kind.SPACE, Proj(11), extcalc.LAMBDA1, "small-alpha pairs with P = 3m+2n-1 form P^11"
        ),
        (3, 2, 0, 1, "0+"): ModuliFact(
            Kind.SPACE, UniversalCurve(2, 3), extcalc.LAMBDA3, "small-alpha pairs with P = 3m+2n: universal (2,3)-curve"
        ),
        (4, 2, 1, 1, "inf"): ModuliFact(
            Kind.SPACE, Bundle(Proj(11), hilb3), None, "large-alpha pairs: P^11-bundle over Hilb^3"
        ),
        (4, 2, -1, 1, "inf"): ModuliFact(
            Kind.SPACE, UniversalCurve(2, 4), None, "large-alpha pairs with P = 4m+2n-1: universal (2,4)-curve"
        ),
    }
    for t in range(3):
        table[(1, 0, t, 0, None)] = ModuliFact(
            Kind.SPACE, Proj(1), PairExpr(0, sheafalg.O_Lt(t - 1)), f"O_L({t - 1},0) over the P^1 of (0,1)-lines"
        )
    return table


def known_moduli(P: LinPoly, gamma=0, chamber=None, table=None) -> ModuliFact:
    table = default_table() if table is None else table
    key = (P.r, P.s, P.t, gamma, None if gamma == 0 else (chamber or "0+"))
    return table.get(key, NOT_IN_TABLE)


# -- walls -----------------------------------------------------------------


class Verdict(Enum):
    OK = "OK"
    UNVERIFIED = "UNVERIFIED"
    REJECTED_EMPTY = "REJECTED_EMPTY"


@dataclass(frozen=True)
class Candidate:
    alpha: Fraction
    sub: PairPoly
    quot: PairPoly
    verdict: Verdict = Verdict.OK
    sub_fact: ModuliFact = NOT_IN_TABLE
    quot_fact: ModuliFact = NOT_IN_TABLE


@dataclass(frozen=True)
class Wall:
    alpha: Fraction
    whole: PairPoly
    sub: PairPoly
    quot: PairPoly
    verdict: Verdict = Verdict.OK
    sub_fact: ModuliFact = NOT_IN_TABLE
    quot_fact: ModuliFact = NOT_IN_TABLE
    fiber_minus: int | None = None
    fiber_plus: int | None = None
    base: SpaceExpr | None = None

    def render(self):
        a = self.alpha
        alpha = str(a.numerator) if a.denominator == 1 else str(a)
        text = f"α = {alpha} [sub {_show(self.sub.P)} | quot {_show(self.quot.P)}]"
        if self.verdict is Verdict.UNVERIFIED:
            text += " UNVERIFIED"
        return text


def _show(P):
    """``3m+2n+0`` style: the constant is always printed with its sign."""
    head = LinPoly(P.r, P.s, 0).render()
    head = head[: -len("+0")] if head.endswith("+0") else head
    return f"{head}{P.t:+d}"


EXCLUDED_NOTE = (
    "pieces without a section whose (r, s) equals the whole (r, s) are not enumerated; "
    "their wall equation has no alpha term"
)


def wall_candidates(whole: PairPoly, bounds=None):
    """Every positive-alpha split before consulting the moduli table."""
    if whole.gamma != 1:
        raise ValueError("walls are enumerated for pairs with a section")
    R, S = bounds if bounds is not None else (whole.P.r, whole.P.s)
    if R > whole.P.r or S > whole.P.s:
        raise ValueError("bounds exceed the whole polynomial")
    T = whole.P.t
    out = []
    for r in range(R + 1):
        for s in range(S + 1):
            if (r, s) in ((0, 0), (whole.P.r, whole.P.s)):
                continue
            t_lo = r + s - r * s
            # alpha > 0  <=>  t * (R+S) < T * (r+s)
            t_hi = math.ceil(Fraction(T * (r + s), whole.P.r + whole.P.s)) - 1
            for t in range(t_lo, t_hi + 1):
                sub = PairPoly.of(r, s, t, 1)
                alpha = wall_alpha(whole, sub)
                if alpha is None or alpha <= 0:
                    continue
                quot = PairPoly(whole.P - sub.P, 0)
                out.append(Candidate(alpha, sub, quot))
    out.sort(key=lambda c: (c.alpha, c.sub.P.r, c.sub.P.s, c.sub.P.t))
    return out


def classify(c: Candidate, table=None) -> Candidate:
    sub_fact = known_moduli(c.sub.P, 1, "0+", table)
    quot_fact = known_moduli(c.quot.P, 0, None, table)
    if sub_fact.empty or quot_fact.empty:
        verdict = Verdict.REJECTED_EMPTY
    elif Kind.NOT_IN_TABLE in (sub_fact.kind, quot_fact.kind):
        verdict = Verdict.UNVERIFIED
    else:
        verdict = Verdict.OK
    return replace(c, verdict=verdict, sub_fact=sub_fact, quot_fact=quot_fact)


def find_walls(whole: PairPoly, bounds=None, table=None, filter_empty=True):
    """Walls sorted by increasing alpha."""
    walls = []
    for c in wall_candidates(whole, bounds):
        c = classify(c, table)
        if filter_empty and c.verdict is Verdict.REJECTED_EMPTY:
            continue
        walls.append(Wall(c.alpha, whole, c.sub, c.quot, c.verdict, c.sub_fact, c.quot_fact))
    return walls


def wall_values(walls):
    return sorted({w.alpha for w in walls})


def flip_data(w: Wall, facts=None) -> Wall:
    """Fill the projective fibres of the two flip loci and their common base.

    ``fiber_minus`` is ``dim P(Ext^1(sub, quot))``: the locus present for alpha
    just above the wall.  ``fiber_plus`` is ``dim P(Ext^1(quot, sub))``: the
    locus that replaces it below the wall.
    """
    if w.sub_fact.kind is not Kind.SPACE or w.quot_fact.kind is not Kind.SPACE:
        raise ValueError(f"wall at {w.alpha}: moduli of the pieces not in the table")
    L_sub, L_quot = w.sub_fact.rep, w.quot_fact.rep
    if L_sub is None or L_quot is None:
        raise ValueError(f"wall at {w.alpha}: no representative pair recorded")
    facts = extcalc.paper_facts() if facts is None else facts
    down = extcalc.ext_dims_pair(L_sub, L_quot, facts).dim(1)
    up = extcalc.ext_dims_pair(L_quot, L_sub, facts).dim(1)
    if down is None or up is None:
        raise ValueError(f"wall at {w.alpha}: Ext^1 not forced (UNKNOWN)")
    base = Prod((w.sub_fact.space, w.quot_fact.space))
    return replace(w, fiber_minus=down - 1, fiber_plus=up - 1, base=base)


WHOLE_PLUS = PairPoly.of(4, 2, 1, 1)
WHOLE_MINUS = PairPoly.of(4, 2, -1, 1)
