"""
Dimension chasing in exact sequences of finite-dimensional vector spaces.

A sequence ``V_0 -> V_1 -> ... -> V_{k-1}`` is described by its terms (known
dimension, unknown, or a named unknown shared with other sequences) and one
annotation per map.  The solver variables are the ranks ``r_0 .. r_k``:
``r_i`` is the rank of the map into ``V_i``, so exactness reads

    dim V_i = r_i + r_{i+1}.

A closed end has ``r_0 = 0`` (resp. ``r_k = 0``); an open end leaves that
rank free, which is how fragments of longer sequences are entered.

Annotations become vanishing conditions on neighbouring ranks:

    ZERO        rank of the map itself is 0
    INJECTIVE   the map into its source has rank 0
    SURJECTIVE  the map out of its target has rank 0

Along a run of known dimensions every rank is ``c +/- p`` for a single
integer parameter ``p``.  Without shared names the parameters are
independent and intervals are exact.  Shared names add linear equations
between parameters; those systems are eliminated exactly and the remaining
free parameters are searched.

No "generic rank" assumption is made anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product


class Annot(Enum):
    NONE = "none"
    ZERO = "zero"
    INJECTIVE = "inj"
    SURJECTIVE = "surj"

    def mirrored(self):
        if self is Annot.INJECTIVE:
            return Annot.SURJECTIVE
        if self is Annot.SURJECTIVE:
            return Annot.INJECTIVE
        return self


class Status(Enum):
    UNIQUE = "UNIQUE"
    AMBIGUOUS = "AMBIGUOUS"
    INCONSISTENT = "INCONSISTENT"


@dataclass(frozen=True)
class Term:
    label: str
    dim: int | None = None
    var: str | None = None

    def __post_init__(self):
        if self.dim is not None and self.dim < 0:
            raise ValueError(f"negative dimension for {self.label}")


@dataclass(frozen=True)
class ExactSeq:
    terms: tuple
    maps: tuple = None
    open_left: bool = False
    open_right: bool = False

    def __post_init__(self):
        terms = tuple(t if isinstance(t, Term) else Term(str(i), t) for i, t in enumerate(self.terms))
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("exact sequence needs at least one term")
        maps = self.maps
        if maps is None:
            maps = (Annot.NONE,) * (len(terms) - 1)
        maps = tuple(maps)
        if len(maps) != len(terms) - 1:
            raise ValueError(f"{len(terms)} terms need {len(terms) - 1} map annotations, got {len(maps)}")
        object.__setattr__(self, "maps", maps)

    def mirrored(self):
        return ExactSeq(
            tuple(reversed(self.terms)),
            tuple(a.mirrored() for a in reversed(self.maps)),
            open_left=self.open_right,
            open_right=self.open_left,
        )


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int | None  # None: unbounded above

    @property
    def exact(self):
        return self.hi is not None and self.lo == self.hi

    def __contains__(self, v):
        return v >= self.lo and (self.hi is None or v <= self.hi)

    def __str__(self):
        if self.exact:
            return str(self.lo)
        return f"[{self.lo}, {'inf' if self.hi is None else self.hi}]"


@dataclass(frozen=True)
class Solution:
    status: Status
    dims: tuple = ()
    ranks: tuple = ()
    intervals: tuple = ()
    rank_intervals: tuple = ()

    @property
    def unbounded(self):
        return any(iv.hi is None for iv in self.intervals)

    def dim(self, label):
        """Resolved dimension of the term carrying ``label`` (None if not forced)."""
        return self.dims[self._index(label)]

    def interval(self, label):
        return self.intervals[self._index(label)]

    def _index(self, label):
        for i, lab in enumerate(self._labels):
            if lab == label:
                return i
        raise KeyError(label)

    _labels: tuple = field(default=(), repr=False, compare=False)


@dataclass(frozen=True)
class SystemSolution:
    status: Status
    solutions: tuple
    vars: dict


class _Affine:
    """``const + sum(coef * p_k)`` over component parameters."""

    __slots__ = ("const", "coefs")

    def __init__(self, const=0, coefs=None):
        self.const = const
        self.coefs = {k: v for k, v in (coefs or {}).items() if v}

    def __add__(self, other):
        coefs = dict(self.coefs)
        for k, v in other.coefs.items():
            coefs[k] = coefs.get(k, 0) + v
        return _Affine(self.const + other.const, coefs)

    def __sub__(self, other):
        return self + _Affine(-other.const, {k: -v for k, v in other.coefs.items()})

    def value(self, point):
        return self.const + sum(c * point[k] for k, c in self.coefs.items())


_ENUM_LIMIT = 400_000


def solve(seq: ExactSeq, known=None) -> Solution:
    """Solve a single sequence; see :func:`solve_system`."""
    return solve_system([seq], known).solutions[0]


def solve_system(seqs, known=None) -> SystemSolution:
    """Jointly solve exact sequences whose terms may share named unknowns.

    ``known`` optionally pins named unknowns to values.
    """
    seqs = list(seqs)
    known = dict(known or {})

    var_value = dict(known)
    for seq in seqs:
        for t in seq.terms:
            if t.var is not None and t.dim is not None:
                if var_value.setdefault(t.var, t.dim) != t.dim:
                    return _inconsistent(seqs)

    def term_dim(t):
        if t.dim is not None:
            return t.dim
        if t.var is not None:
            return var_value.get(t.var)
        return None

    # rank (s, i) -> (component id, const, sign)
    rank_of = {}
    comp_lo, comp_hi, comp_pin = [], [], []

    def new_comp():
        comp_lo.append(0)
        comp_hi.append(None)
        comp_pin.append(None)
        return len(comp_lo) - 1

    for s, seq in enumerate(seqs):
        comp = new_comp()
        const, sign = 0, 1
        rank_of[(s, 0)] = (comp, const, sign)
        for i, t in enumerate(seq.terms):
            d = term_dim(t)
            if d is None:
                comp = new_comp()
                const, sign = 0, 1
            else:
                const, sign = d - const, -sign
            rank_of[(s, i + 1)] = (comp, const, sign)

    # nonnegativity of every rank bounds its component parameter
    for (comp, const, sign) in rank_of.values():
        if sign > 0:
            comp_lo[comp] = max(comp_lo[comp], -const)
        else:
            hi = const
            comp_hi[comp] = hi if comp_hi[comp] is None else min(comp_hi[comp], hi)

    forced_zero = set()
    for s, seq in enumerate(seqs):
        k = len(seq.terms)
        if not seq.open_left:
            forced_zero.add((s, 0))
        if not seq.open_right:
            forced_zero.add((s, k))
        for j, a in enumerate(seq.maps):
            if a is Annot.ZERO:
                forced_zero.add((s, j + 1))
            elif a is Annot.INJECTIVE:
                forced_zero.add((s, j))
            elif a is Annot.SURJECTIVE:
                forced_zero.add((s, j + 2))

    for key in forced_zero:
        comp, const, sign = rank_of[key]
        p = -const * sign
        if comp_pin[comp] is not None and comp_pin[comp] != p:
            return _inconsistent(seqs)
        comp_pin[comp] = p

    for c in range(len(comp_lo)):
        if comp_pin[c] is not None:
            p = comp_pin[c]
            if p < comp_lo[c] or (comp_hi[c] is not None and p > comp_hi[c]):
                return _inconsistent(seqs)
            comp_lo[c] = comp_hi[c] = p
        elif comp_hi[c] is not None and comp_lo[c] > comp_hi[c]:
            return _inconsistent(seqs)

    def rank_expr(key):
        comp, const, sign = rank_of[key]
        if comp_lo[comp] == comp_hi[comp]:
            return _Affine(const + sign * comp_lo[comp])
        return _Affine(const, {comp: sign})

    def term_expr(s, i):
        return rank_expr((s, i)) + rank_expr((s, i + 1))

    # shared unknown names link components
    occurrences = {}
    for s, seq in enumerate(seqs):
        for i, t in enumerate(seq.terms):
            if t.var is not None and term_dim(t) is None:
                occurrences.setdefault(t.var, []).append((s, i))
    links = []
    for occ in occurrences.values():
        first = term_expr(*occ[0])
        for other in occ[1:]:
            eq = first - term_expr(*other)
            if eq.coefs or eq.const:
                links.append(eq)

    targets = {}
    for s, seq in enumerate(seqs):
        for i, t in enumerate(seq.terms):
            targets[("dim", s, i)] = term_expr(s, i)
        for i in range(len(seq.terms) + 1):
            targets[("rank", s, i)] = rank_expr((s, i))
    for name, occ in occurrences.items():
        targets[("var", name)] = term_expr(*occ[0])

    bounds = {c: (comp_lo[c], comp_hi[c]) for c in range(len(comp_lo))}
    if links:
        ranges = _search(links, bounds, targets, rank_of)
        if ranges is None:
            return _inconsistent(seqs)
    else:
        ranges = {key: _box_range(expr, bounds) for key, expr in targets.items()}

    solutions = []
    all_exact = True
    for s, seq in enumerate(seqs):
        dims, ivs = [], []
        for i, t in enumerate(seq.terms):
            d = term_dim(t)
            iv = Interval(d, d) if d is not None else ranges[("dim", s, i)]
            ivs.append(iv)
            dims.append(iv.lo if iv.exact else None)
            if not iv.exact:
                all_exact = False
        rivs = [ranges[("rank", s, i)] for i in range(len(seq.terms) + 1)]
        solutions.append(
            Solution(
                Status.UNIQUE,
                tuple(dims),
                tuple(r.lo if r.exact else None for r in rivs),
                tuple(ivs),
                tuple(rivs),
                _labels=tuple(t.label for t in seq.terms),
            )
        )
    var_ivs = {name: Interval(v, v) for name, v in var_value.items()}
    for name in occurrences:
        var_ivs[name] = ranges[("var", name)]
    status = Status.UNIQUE if all_exact else Status.AMBIGUOUS
    solutions = tuple(
        Solution(status, sol.dims, sol.ranks, sol.intervals, sol.rank_intervals, _labels=sol._labels)
        for sol in solutions
    )
    return SystemSolution(status, solutions, var_ivs)


def _inconsistent(seqs):
    sols = tuple(
        Solution(Status.INCONSISTENT, _labels=tuple(t.label for t in seq.terms)) for seq in seqs
    )
    return SystemSolution(Status.INCONSISTENT, sols, {})


def _box_range(expr, bounds):
    lo, hi = expr.const, expr.const
    for comp, c in expr.coefs.items():
        clo, chi = bounds[comp]
        if c > 0:
            lo += c * clo
            hi = None if hi is None or chi is None else hi + c * chi
        else:
            hi = None if hi is None else hi + c * clo
            lo = None if lo is None or chi is None else lo + c * chi
    if lo is None:
        raise ValueError("expression unbounded below")  # ranks are nonnegative; cannot happen
    return Interval(lo, hi)


def _eliminate(links, params):
    """Row-reduce ``links`` (each ``expr == 0``) over the rationals.

    Returns ``(pivots, free, consistent)`` where ``pivots`` maps a pivot
    parameter to ``(const, {free_param: coef})``.
    """
    rows = []
    for eq in links:
        row = {p: Fraction(c) for p, c in eq.coefs.items()}
        rows.append([row, Fraction(-eq.const)])  # sum(row) = rhs
    pivots = {}
    for row, rhs in rows:
        for p, (pc, pcoefs) in pivots.items():
            if p in row:
                c = row.pop(p)
                rhs -= c * pc
                for q, qc in pcoefs.items():
                    row[q] = row.get(q, 0) + c * qc
        row = {p: c for p, c in row.items() if c}
        if not row:
            if rhs != 0:
                return None, None, False
            continue
        piv = min(row)
        pc = row.pop(piv)
        const = rhs / pc
        coefs = {q: -c / pc for q, c in row.items()}
        for p, (oc, ocoefs) in list(pivots.items()):
            if piv in ocoefs:
                c = ocoefs.pop(piv)
                oc += c * const
                for q, qc in coefs.items():
                    ocoefs[q] = ocoefs.get(q, 0) + c * qc
                pivots[p] = (oc, {q: v for q, v in ocoefs.items() if v})
        pivots[piv] = (const, coefs)
    free = [p for p in params if p not in pivots]
    return pivots, free, True


def _search(links, bounds, targets, rank_of):
    params = sorted({p for eq in links for p in eq.coefs})
    pivots, free, ok = _eliminate(links, params)
    if not ok:
        return None

    finite_total = sum(abs(c) for _, c, _ in rank_of.values()) + 1

    def run(cap):
        axes = []
        for p in free:
            lo, hi = bounds[p]
            if hi is None:
                hi = lo + cap
            axes.append(range(lo, hi + 1))
        size = 1
        for ax in axes:
            size *= len(ax)
        if size > _ENUM_LIMIT:
            raise ValueError(f"dimension system too large to search ({size} points)")
        lo_v, hi_v = {}, {}
        for values in product(*axes):
            point = dict(zip(free, values))
            good = True
            for p, (const, coefs) in pivots.items():
                v = const + sum(c * point[q] for q, c in coefs.items())
                if v.denominator != 1:
                    good = False
                    break
                v = int(v)
                lo, hi = bounds[p]
                if v < lo or (hi is not None and v > hi):
                    good = False
                    break
                point[p] = v
            if not good:
                continue
            for key, expr in targets.items():
                val = expr.const
                outside = {}
                for comp, c in expr.coefs.items():
                    if comp in point:
                        val += c * point[comp]
                    else:
                        outside[comp] = c
                if outside:
                    r = _box_range(_Affine(val, outside), bounds)
                    vlo, vhi = r.lo, r.hi
                else:
                    vlo = vhi = val
                lo_v[key] = vlo if key not in lo_v else min(lo_v[key], vlo)
                if vhi is None or hi_v.get(key, 0) is None:
                    hi_v[key] = None
                else:
                    hi_v[key] = max(hi_v.get(key, vhi), vhi)
        return lo_v, hi_v

    lo1, hi1 = run(finite_total)
    if not lo1:
        return None
    unbounded_free = any(bounds[p][1] is None for p in free)
    if unbounded_free:
        _, hi2 = run(2 * finite_total)
        for key in hi1:
            if hi1[key] != hi2[key]:
                hi1[key] = None
    return {key: Interval(lo1[key], hi1[key]) for key in targets}


def describe(seq: ExactSeq, sol: Solution) -> str:
    """One-line human rendering of a solved sequence."""
    parts = []
    for t, iv in zip(seq.terms, sol.intervals or [None] * len(seq.terms)):
        parts.append(f"{t.label}={iv if iv is not None else '?'}")
    head = "... -> " if seq.open_left else "0 -> "
    tail = " -> ..." if seq.open_right else " -> 0"
    return f"[{sol.status.value}] " + head + " -> ".join(parts) + tail
