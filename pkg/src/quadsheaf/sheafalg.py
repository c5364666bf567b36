"""
Symbolic sheaves on P^1 x P^1.

A sheaf is a small expression tree: line bundles, twisted structure sheaves
of curves and lines, skyscrapers, direct sums, two-term locally free
resolutions and extensions.  Resolutions and extensions may carry
``Hypothesis`` items: named facts about maps in their cohomology sequence
which are handed to the dimension solver as annotations.

Text form (whitespace-insensitive)::

    (O a b)                      line bundle O(a, b); ``O(a,b)`` also accepted
    (curve c d a b)              O_C(a, b), C of class (c, d)
    (line c d a b)               O_L(a, b), L of class (0, 1) or (1, 0)
    (pt k)                       skyscraper of length k
    (sum X Y ...)
    (res (O ..) ... => (O ..) ... (hyp DEG ARROW ANNOT) ...)
    (ext SUB QUOT (hyp DEG ARROW ANNOT) ...)

In a hypothesis ARROW is ``XY``, ``YZ`` or ``ZX`` for the cohomology
sequence of ``0 -> X -> Y -> Z -> 0`` (for ``res``: left, right, F; for
``ext``: sub, F, quot) and ANNOT is ``zero``, ``inj`` or ``surj``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import surfcoh
from .exactpoly import BiPoly
from .lesolve import Annot
from .surfcoh import BiDegree, CohDims, CurveClass


@dataclass(frozen=True)
class Hypothesis:
    degree: int
    arrow: str
    annot: Annot
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if self.arrow not in ("XY", "YZ", "ZX"):
            raise ValueError(f"bad arrow {self.arrow!r}")
        if not 0 <= self.degree <= 2 or (self.degree == 2 and self.arrow == "ZX"):
            raise ValueError(f"no map {self.arrow} in degree {self.degree}")


class SheafExpr:
    """Base class; concrete variants are frozen dataclasses below."""

    def twist(self, u, v):
        raise NotImplementedError

    def __str__(self):
        return format_sheaf(self)


@dataclass(frozen=True)
class LineBundle(SheafExpr):
    deg: BiDegree

    def __post_init__(self):
        object.__setattr__(self, "deg", BiDegree(*self.deg))

    def twist(self, u, v):
        return LineBundle(self.deg + (u, v))


@dataclass(frozen=True)
class CurveSheaf(SheafExpr):
    curve: CurveClass
    deg: BiDegree = BiDegree(0, 0)

    def __post_init__(self):
        object.__setattr__(self, "curve", CurveClass(*self.curve).check())
        object.__setattr__(self, "deg", BiDegree(*self.deg))

    def twist(self, u, v):
        return CurveSheaf(self.curve, self.deg + (u, v))


@dataclass(frozen=True)
class LineSheaf(SheafExpr):
    line: CurveClass
    deg: BiDegree = BiDegree(0, 0)

    def __post_init__(self):
        line = CurveClass(*self.line)
        if not line.is_line:
            raise ValueError(f"{tuple(line)} is not a line class")
        object.__setattr__(self, "line", line)
        object.__setattr__(self, "deg", BiDegree(*self.deg))

    def twist(self, u, v):
        return LineSheaf(self.line, self.deg + (u, v))


@dataclass(frozen=True)
class Skyscraper(SheafExpr):
    length: int = 1

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("skyscraper length must be nonnegative")

    def twist(self, u, v):
        return self


@dataclass(frozen=True)
class DirectSum(SheafExpr):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def twist(self, u, v):
        return DirectSum(tuple(p.twist(u, v) for p in self.parts))


@dataclass(frozen=True)
class Resolution(SheafExpr):
    """``0 -> (+) O(left) -> (+) O(right) -> F -> 0`` with an injective map."""

    left: tuple
    right: tuple
    hyps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(BiDegree(*d) for d in self.left))
        object.__setattr__(self, "right", tuple(BiDegree(*d) for d in self.right))
        object.__setattr__(self, "hyps", tuple(self.hyps))

    def twist(self, u, v):
        # hypotheses describe maps of this particular twist; they do not transfer
        return Resolution(tuple(d + (u, v) for d in self.left), tuple(d + (u, v) for d in self.right))


@dataclass(frozen=True)
class Extension(SheafExpr):
    """``0 -> sub -> F -> quot -> 0``; no extension class is recorded."""

    sub: SheafExpr
    quot: SheafExpr
    hyps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "hyps", tuple(self.hyps))

    def twist(self, u, v):
        return Extension(self.sub.twist(u, v), self.quot.twist(u, v))


def O(a, b):  # noqa: E743
    return LineBundle(BiDegree(a, b))


def as_resolution(F):
    """A locally free two-term resolution of ``F``, or None.

    Curves and lines use ``0 -> O(t - C) -> O(t) -> O_C(t) -> 0``.
    """
    if isinstance(F, Resolution):
        return F
    if isinstance(F, LineBundle):
        return Resolution((), (F.deg,))
    if isinstance(F, (CurveSheaf, LineSheaf)):
        cls = F.curve if isinstance(F, CurveSheaf) else F.line
        return Resolution((F.deg - cls,), (F.deg,))
    if isinstance(F, DirectSum):
        left, right = [], []
        for p in F.parts:
            r = as_resolution(p)
            if r is None:
                return None
            left += r.left
            right += r.right
        return Resolution(tuple(left), tuple(right))
    return None


# -- Hilbert polynomials ---------------------------------------------------


def hilbert(F) -> BiPoly:
    if isinstance(F, LineBundle):
        return surfcoh.hilbert_line_bundle(F.deg)
    if isinstance(F, CurveSheaf):
        return surfcoh.hilbert_curve(F.curve, F.deg)
    if isinstance(F, LineSheaf):
        return surfcoh.hilbert_line(F.line, F.deg)
    if isinstance(F, Skyscraper):
        return surfcoh.hilbert_skyscraper(F.length)
    if isinstance(F, DirectSum):
        return sum((hilbert(p) for p in F.parts), BiPoly())
    if isinstance(F, Resolution):
        total = BiPoly()
        for d in F.right:
            total = total + surfcoh.hilbert_line_bundle(d)
        for d in F.left:
            total = total - surfcoh.hilbert_line_bundle(d)
        return total
    if isinstance(F, Extension):
        return hilbert(F.sub) + hilbert(F.quot)
    raise TypeError(f"not a sheaf expression: {F!r}")


def support_dim_le_one(F):
    return hilbert(F).coeff(1, 1) == 0


# -- cohomology ------------------------------------------------------------


def _sum_dims(degs):
    total = surfcoh.ZERO_DIMS
    for d in degs:
        total = total + surfcoh.h_surface(d)
    return total


def cohomology_sequence(F):
    """``(ExactSeq, Solution, slot)`` for the sequence determining ``H^*(F)``.

    ``slot`` is ``"Z"`` for resolutions and ``"Y"`` for extensions.  Atomic
    sheaves have no sequence of their own and return None.
    """
    hyps = [(h.degree, h.arrow, h.annot) for h in getattr(F, "hyps", ())]
    if isinstance(F, Resolution):
        seq, sol = surfcoh.les_nine(
            _sum_dims(F.left),
            _sum_dims(F.right),
            CohDims(None, None, None),
            hyps,
            labels=("left", "right", "F"),
            z_vanishes_h2=support_dim_le_one(F),
        )
        return seq, sol, "Z"
    if isinstance(F, Extension):
        x, z = h_dims(F.sub), h_dims(F.quot)
        y = CohDims(None, None, 0 if support_dim_le_one(F) else None)
        seq, sol = surfcoh.les_nine(x, y, z, hyps, labels=("sub", "F", "quot"))
        return seq, sol, "Y"
    return None


def h_dims(F) -> CohDims:
    if isinstance(F, LineBundle):
        return surfcoh.h_surface(F.deg)
    if isinstance(F, CurveSheaf):
        return surfcoh.h_curve(F.curve, F.deg)
    if isinstance(F, LineSheaf):
        h0, h1 = surfcoh.h_line(F.line, F.deg)
        return CohDims(h0, h1, 0)
    if isinstance(F, Skyscraper):
        return CohDims(F.length, 0, 0)
    if isinstance(F, DirectSum):
        total = surfcoh.ZERO_DIMS
        for p in F.parts:
            total = total + h_dims(p)
        return total
    found = cohomology_sequence(F)
    if found is None:
        raise TypeError(f"not a sheaf expression: {F!r}")
    _, sol, slot = found
    start = {"Y": 1, "Z": 2}[slot]
    if not sol.dims:
        return CohDims(None, None, None)
    return CohDims(sol.dims[start], sol.dims[start + 3], sol.dims[start + 6])


def h_intervals(F):
    """Like ``h_dims`` but returns solver intervals for sequence-backed sheaves."""
    found = cohomology_sequence(F)
    if found is None:
        from .lesolve import Interval

        return tuple(Interval(v, v) for v in h_dims(F))
    _, sol, slot = found
    start = {"Y": 1, "Z": 2}[slot]
    return tuple(sol.intervals[start + 3 * i] for i in range(3)) if sol.intervals else ()


# -- linear Hilbert polynomials and slopes ---------------------------------


@dataclass(frozen=True)
class LinPoly:
    r: int
    s: int
    t: int

    @classmethod
    def of(cls, P):
        """Convert a linear ``BiPoly`` (or a sheaf) to ``LinPoly``."""
        if isinstance(P, SheafExpr):
            P = hilbert(P)
        if any(i + j > 1 for i, j in P.coeffs):
            raise ValueError(f"{P} is not linear")
        vals = [P.coeff(1, 0), P.coeff(0, 1), P.coeff(0, 0)]
        if any(v.denominator != 1 for v in vals):
            raise ValueError(f"{P} has non-integer coefficients")
        return cls(*(int(v) for v in vals))

    def bipoly(self):
        return BiPoly.linear(self.r, self.s, self.t)

    def __add__(self, other):
        return LinPoly(self.r + other.r, self.s + other.s, self.t + other.t)

    def __sub__(self, other):
        return LinPoly(self.r - other.r, self.s - other.s, self.t - other.t)

    def render(self):
        out = ""
        for coef, var in ((self.r, "m"), (self.s, "n")):
            if coef == 0:
                continue
            body = var if abs(coef) == 1 else f"{abs(coef)}{var}"
            out += ("-" if coef < 0 else ("+" if out else "")) + body
        if not out:
            return str(self.t)
        return out + f"{self.t:+d}"

    def __str__(self):
        return self.render()


def slope(P):
    if not isinstance(P, LinPoly):
        P = LinPoly.of(P)
    if P.r + P.s == 0:
        raise ValueError("slope undefined for r + s = 0")
    return Fraction(P.t, P.r + P.s)


def compare_reduced(P1, P2):
    """-1, 0 or 1 as the reduced polynomial of P1 is below, equal or above P2's."""
    a, b = slope(P1), slope(P2)
    return (a > b) - (a < b)


def twist_hilbert(P, u, v):
    return LinPoly(P.r, P.s, P.t + P.r * u + P.s * v)


def table1_kernel(deg_g):
    """Kernel twist and cokernel polynomial for a common factor of bidegree ``deg_g``.

    The kernel is ``O(i, j)`` with ``(i + 2, j + 4) = deg_g`` and the
    cokernel of ``O(i, j) -> O`` has Hilbert polynomial
    ``(m+1)(n+1) - (m+i+1)(n+j+1)``.
    """
    g0, g1 = deg_g
    if not (0 <= g0 <= 1 and 0 <= g1 <= 3) or (g0, g1) == (0, 0):
        raise ValueError(f"common factor bidegree {deg_g} out of range")
    ij = BiDegree(g0 - 2, g1 - 4)
    return ij, surfcoh.hilbert_line_bundle((0, 0)) - surfcoh.hilbert_line_bundle(ij)


# -- text form --------------------------------------------------------------


class SheafParseError(ValueError):
    pass


_ANNOT_WORDS = {"zero": Annot.ZERO, "inj": Annot.INJECTIVE, "surj": Annot.SURJECTIVE, "none": Annot.NONE}


def _fmt_deg(d):
    return f"(O {d[0]} {d[1]})"


def _fmt_hyps(hyps):
    return "".join(f" (hyp {h.degree} {h.arrow} {h.annot.value})" for h in hyps)


def format_sheaf(F):
    if isinstance(F, LineBundle):
        return _fmt_deg(F.deg)
    if isinstance(F, CurveSheaf):
        return f"(curve {F.curve.c} {F.curve.d} {F.deg.a} {F.deg.b})"
    if isinstance(F, LineSheaf):
        return f"(line {F.line.c} {F.line.d} {F.deg.a} {F.deg.b})"
    if isinstance(F, Skyscraper):
        return f"(pt {F.length})"
    if isinstance(F, DirectSum):
        return "(sum " + " ".join(format_sheaf(p) for p in F.parts) + ")"
    if isinstance(F, Resolution):
        left = " ".join(_fmt_deg(d) for d in F.left)
        right = " ".join(_fmt_deg(d) for d in F.right)
        return f"(res {left} => {right}{_fmt_hyps(F.hyps)})".replace("res  =>", "res =>")
    if isinstance(F, Extension):
        return f"(ext {format_sheaf(F.sub)} {format_sheaf(F.quot)}{_fmt_hyps(F.hyps)})"
    raise TypeError(f"not a sheaf expression: {F!r}")


_SHORTHAND = re.compile(r"\bO\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def tokenize(text):
    text = _SHORTHAND.sub(r"(O \1 \2)", text)
    return text.replace("(", " ( ").replace(")", " ) ").split()


def read_tree(tokens):
    """Nested lists from tokens; raises on unbalanced parentheses."""
    if not tokens:
        raise SheafParseError("unexpected end of input")
    tok = tokens.pop(0)
    if tok == "(":
        out = []
        while tokens and tokens[0] != ")":
            out.append(read_tree(tokens))
        if not tokens:
            raise SheafParseError("missing ')'")
        tokens.pop(0)
        return out
    if tok == ")":
        raise SheafParseError("unexpected ')'")
    return tok


def _ints(items, n, what):
    if len(items) != n:
        raise SheafParseError(f"{what} expects {n} integers, got {len(items)}")
    try:
        return [int(x) for x in items]
    except (TypeError, ValueError):
        raise SheafParseError(f"{what} expects integers, got {items}") from None


def _hyp(node):
    if not (isinstance(node, list) and node and node[0] == "hyp" and len(node) == 4):
        raise SheafParseError(f"bad hypothesis {node}")
    _, deg, arrow, word = node
    if word not in _ANNOT_WORDS:
        raise SheafParseError(f"unknown annotation {word!r}")
    try:
        return Hypothesis(int(deg), arrow, _ANNOT_WORDS[word])
    except ValueError as exc:
        raise SheafParseError(str(exc)) from None


def from_tree(node):
    if not isinstance(node, list) or not node:
        raise SheafParseError(f"expected a parenthesised sheaf, got {node!r}")
    head, args = node[0], node[1:]
    try:
        if head == "O":
            return O(*_ints(args, 2, "O"))
        if head == "curve":
            vals = _ints(args, 4, "curve") if len(args) == 4 else _ints(args, 2, "curve") + [0, 0]
            return CurveSheaf(CurveClass(vals[0], vals[1]), BiDegree(vals[2], vals[3]))
        if head == "line":
            vals = _ints(args, 4, "line") if len(args) == 4 else _ints(args, 2, "line") + [0, 0]
            return LineSheaf(CurveClass(vals[0], vals[1]), BiDegree(vals[2], vals[3]))
        if head == "pt":
            return Skyscraper(*_ints(args, 1, "pt")) if args else Skyscraper(1)
        if head == "sum":
            return DirectSum(tuple(from_tree(a) for a in args))
        if head == "res":
            if "=>" not in args:
                raise SheafParseError("res needs '=>' between left and right terms")
            k = args.index("=>")
            left = [from_tree(a) for a in args[:k]]
            rest = args[k + 1 :]
            right = [from_tree(a) for a in rest if not (isinstance(a, list) and a and a[0] == "hyp")]
            hyps = [_hyp(a) for a in rest if isinstance(a, list) and a and a[0] == "hyp"]
            for t in left + right:
                if not isinstance(t, LineBundle):
                    raise SheafParseError("resolution terms must be line bundles (O a b)")
            return Resolution(tuple(t.deg for t in left), tuple(t.deg for t in right), tuple(hyps))
        if head == "ext":
            body = [a for a in args if not (isinstance(a, list) and a and a[0] == "hyp")]
            hyps = [_hyp(a) for a in args if isinstance(a, list) and a and a[0] == "hyp"]
            if len(body) != 2:
                raise SheafParseError("ext needs exactly a sub and a quotient")
            return Extension(from_tree(body[0]), from_tree(body[1]), tuple(hyps))
    except SheafParseError:
        raise
    except ValueError as exc:
        raise SheafParseError(str(exc)) from None
    raise SheafParseError(f"unknown sheaf constructor {head!r}")


def parse_sheaf(text):
    tokens = tokenize(text)
    tree = read_tree(tokens)
    if tokens:
        raise SheafParseError(f"trailing input: {' '.join(tokens)}")
    return from_tree(tree)


# -- named sheaves used throughout ----------------------------------------

Q_CLASS = CurveClass(2, 3)
C_CLASS = CurveClass(2, 4)

O_Q = CurveSheaf(Q_CLASS)
O_L = LineSheaf(surfcoh.LINE_01)


def O_Lt(a, b=0):
    return LineSheaf(surfcoh.LINE_01, BiDegree(a, b))


# 0 -> O(-2,-2) + O(-1,-3) -> O(-1,-2) + O -> E -> 0 ; E extends C_p by O_Q
E_QUINTIC = Resolution(((-2, -2), (-1, -3)), ((-1, -2), (0, 0)))

RES_M0 = Resolution(
    ((-1, -3), (0, -3), (-1, -2)),
    ((0, -2), (0, -2), (0, 0)),
    (Hypothesis(1, "XY", Annot.INJECTIVE, "phi12, phi22 linearly independent"),),
)
RES_M2 = Resolution(((-2, -2), (-1, -3)), ((-1, -2), (0, 1)))
RES_M2_PRIME = Resolution(((-2, -1), (-1, -4)), ((-1, -1), (0, 0)))

EXT_M2 = Extension(CurveSheaf(C_CLASS, (0, 1)), Skyscraper(1))
EXT_M4 = Extension(CurveSheaf(Q_CLASS, (0, 1)), O_Lt(-1))
_H0_TO_QUOT_ZERO = Hypothesis(0, "YZ", Annot.ZERO, "H^0(F) -> H^0(quotient) is zero")
EXT_M4_PRIME = Extension(O_Q, O_Lt(1), (_H0_TO_QUOT_ZERO,))
EXT_M4_DPRIME = Extension(E_QUINTIC, O_L, (_H0_TO_QUOT_ZERO,))
