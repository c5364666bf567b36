"""
Space expressions and their Poincare polynomials.

Every space here has cohomology only in even degrees, so a Poincare
polynomial is a ``UPoly`` in ``x`` with ``x`` standing for degree 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import UPoly, geometric_poly, trunc_product
from .sheafalg import SheafParseError, read_tree, tokenize

QUADRIC_BETTI = (1, 0, 2, 0, 1)


class SpaceExpr:
    def __str__(self):
        return format_space(self)


@dataclass(frozen=True)
class Proj(SpaceExpr):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("projective space needs n >= 0")


@dataclass(frozen=True)
class Prod(SpaceExpr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Bundle(SpaceExpr):
    """Zariski-locally trivial bundle; Poincare polynomial multiplies."""

    fiber: SpaceExpr
    base: SpaceExpr


@dataclass(frozen=True)
class Hilb(SpaceExpr):
    """Hilbert scheme of ``n`` points on a surface with Betti numbers ``betti``."""

    n: int
    betti: tuple = QUADRIC_BETTI

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        if len(self.betti) != 5:
            raise ValueError("surface Betti vector needs five entries b0..b4")
        if self.n < 0:
            raise ValueError("number of points must be nonnegative")


@dataclass(frozen=True)
class UniversalCurve(SpaceExpr):
    """Incidence ``{(C, p) : p in C}`` for curves of class ``(c, d)`` on the quadric.

    Curves through a point form a hyperplane in ``|O(c, d)|``, so this is a
    ``P^{(c+1)(d+1)-2}``-bundle over ``P^1 x P^1``.
    """

    c: int
    d: int

    def as_bundle(self):
        return Bundle(Proj((self.c + 1) * (self.d + 1) - 2), QUADRIC)


@dataclass(frozen=True)
class Blowup(SpaceExpr):
    X: SpaceExpr
    Z: SpaceExpr
    codim: int

    def __post_init__(self):
        if self.codim < 1:
            raise ValueError("blow-up centre needs codimension >= 1")


@dataclass(frozen=True)
class CrossWall(SpaceExpr):
    """Replace a ``P^fiber_from``-bundle over ``base`` by a ``P^fiber_to``-bundle."""

    X: SpaceExpr
    fiber_from: int
    fiber_to: int
    base: SpaceExpr


@dataclass(frozen=True)
class Literal(SpaceExpr):
    poly: UPoly
    name: str = ""


P1 = Proj(1)
QUADRIC = Prod((P1, P1))


def goettsche_series(betti, order):
    """Generating series ``sum_n P(Hilb^n S) z^n`` up to ``z^order``.

    Only even Betti numbers are allowed.
    """
    betti = tuple(betti)
    if betti[1] or betti[3]:
        raise ValueError("surfaces with odd cohomology are not supported")
    if any(b < 0 for b in betti):
        raise ValueError("Betti numbers must be nonnegative")
    factors = []
    for k in range(1, order + 1):
        for shift, b in ((-1, betti[0]), (0, betti[2]), (1, betti[4])):
            pattern = UPoly.monomial(k + shift)
            factors += [(True, pattern, k)] * b
    return trunc_product(factors, order)


def goettsche(betti, n):
    return goettsche_series(betti, n)[n]


def poincare(S: SpaceExpr) -> UPoly:
    if isinstance(S, Proj):
        return geometric_poly(S.n)
    if isinstance(S, Prod):
        out = UPoly.const(1)
        for f in S.factors:
            out = out * poincare(f)
        return out
    if isinstance(S, Bundle):
        return poincare(S.fiber) * poincare(S.base)
    if isinstance(S, Hilb):
        return goettsche(S.betti, S.n)
    if isinstance(S, UniversalCurve):
        return poincare(S.as_bundle())
    if isinstance(S, Blowup):
        return poincare(S.X) + (geometric_poly(S.codim - 1) - 1) * poincare(S.Z)
    if isinstance(S, CrossWall):
        return poincare(S.X) + cross_wall_delta(S.fiber_from, S.fiber_to, S.base)
    if isinstance(S, Literal):
        return S.poly
    raise TypeError(f"not a space expression: {S!r}")


def cross_wall_delta(fiber_from, fiber_to, base):
    return (geometric_poly(fiber_to) - geometric_poly(fiber_from)) * poincare(base)


def dim(S: SpaceExpr) -> int:
    if isinstance(S, Proj):
        return S.n
    if isinstance(S, Prod):
        return sum(dim(f) for f in S.factors)
    if isinstance(S, Bundle):
        return dim(S.fiber) + dim(S.base)
    if isinstance(S, Hilb):
        return 2 * S.n
    if isinstance(S, UniversalCurve):
        return dim(S.as_bundle())
    if isinstance(S, (Blowup, CrossWall)):
        return dim(S.X)
    if isinstance(S, Literal):
        return S.poly.degree
    raise TypeError(f"not a space expression: {S!r}")


def format_space(S):
    if isinstance(S, Proj):
        return f"(proj {S.n})"
    if isinstance(S, Prod):
        return "(prod " + " ".join(format_space(f) for f in S.factors) + ")"
    if isinstance(S, Bundle):
        return f"(bundle {format_space(S.fiber)} {format_space(S.base)})"
    if isinstance(S, Hilb):
        if S.betti == QUADRIC_BETTI:
            return f"(hilb {S.n})"
        return "(hilb " + " ".join(map(str, S.betti)) + f" {S.n})"
    if isinstance(S, UniversalCurve):
        return f"(ucurve {S.c} {S.d})"
    if isinstance(S, Blowup):
        return f"(blowup {format_space(S.X)} {format_space(S.Z)} {S.codim})"
    if isinstance(S, CrossWall):
        return f"(crosswall {format_space(S.X)} {S.fiber_from} {S.fiber_to} {format_space(S.base)})"
    if isinstance(S, Literal):
        return f"(poly {' '.join(map(str, S.poly.coeffs))})"
    raise TypeError(f"not a space expression: {S!r}")


class SpaceParseError(ValueError):
    pass


def _int(tok):
    try:
        return int(tok)
    except (TypeError, ValueError):
        raise SpaceParseError(f"expected an integer, got {tok!r}") from None


def space_from_tree(node):
    if not isinstance(node, list) or not node:
        if node in ("quadric", "P1xP1"):
            return QUADRIC
        raise SpaceParseError(f"expected a parenthesised space, got {node!r}")
    head, args = node[0], node[1:]
    if head == "proj" and len(args) == 1:
        return Proj(_int(args[0]))
    if head == "prod":
        return Prod(tuple(space_from_tree(a) for a in args))
    if head == "bundle" and len(args) == 2:
        return Bundle(space_from_tree(args[0]), space_from_tree(args[1]))
    if head == "hilb" and len(args) == 1:
        return Hilb(_int(args[0]))
    if head == "hilb" and len(args) == 6:
        return Hilb(_int(args[5]), tuple(_int(a) for a in args[:5]))
    if head == "ucurve" and len(args) == 2:
        return UniversalCurve(_int(args[0]), _int(args[1]))
    if head == "blowup" and len(args) == 3:
        return Blowup(space_from_tree(args[0]), space_from_tree(args[1]), _int(args[2]))
    if head == "crosswall" and len(args) == 4:
        return CrossWall(space_from_tree(args[0]), _int(args[1]), _int(args[2]), space_from_tree(args[3]))
    if head == "poly":
        return Literal(UPoly([_int(a) for a in args]))
    raise SpaceParseError(f"cannot read space {node}")


def parse_space(text):
    """Read a space expression; ``hilb 3`` and ``proj 11`` may omit parentheses."""
    tokens = tokenize(text)
    if tokens and tokens[0] != "(" and len(tokens) > 1:
        tokens = ["("] + tokens + [")"]
    try:
        tree = read_tree(tokens)
    except SheafParseError as exc:
        raise SpaceParseError(str(exc)) from None
    if tokens:
        raise SpaceParseError(f"trailing input: {' '.join(tokens)}")
    try:
        return space_from_tree(tree)
    except SpaceParseError:
        raise
    except ValueError as exc:
        raise SpaceParseError(str(exc)) from None

