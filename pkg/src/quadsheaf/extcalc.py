"""
Ext dimensions between sheaves and between pairs.

Sheaves.  If ``F`` has a locally free resolution
``0 -> (+) O(l) -> (+) O(r) -> F -> 0``, applying ``Hom(-, G)`` gives

    0 -> Hom(F,G) -> H0(G(-r)) -> H0(G(-l)) -> Ext1(F,G) -> H1(G(-r)) -> ...
      -> Ext2(F,G) -> H2(G(-r)) -> H2(G(-l)) -> 0.

Serre duality on P^1 x P^1 turns ``Ext^i(F, G)`` into the dual of
``Ext^{2-i}(G, F(-2,-2))``, so the same construction applies when only
``G`` is resolvable.  When both routes exist they are solved together:
the Ext groups carry shared variable names and each route constrains the
other.  Cohomology of extension or resolution sheaves that appears inside
these sequences is linked to that sheaf's own cohomology sequence the same
way.

Pairs.  For pairs ``L = (Gamma, F)`` and ``L' = (Gamma', F')`` with
``dim Gamma = gamma`` the sequence

    0 -> Hom(L,L') -> Hom(F,F') -> gamma*(h0(F') - gamma') -> Ext1(L,L')
      -> Ext1(F,F') -> gamma*h1(F') -> Ext2(L,L') -> Ext2(F,F') -> gamma*h2(F') -> ...

is added to the sheaf system for ``(F, F')``.  Recorded facts (``HomFacts``)
pin named unknowns; nothing about stability is derived here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from . import sheafalg
from .lesolve import ExactSeq, Status, Term, solve_system
from .sheafalg import (
    Extension,
    Resolution,
    SheafExpr,
    as_resolution,
    format_sheaf,
    h_dims,
)
from .surfcoh import OMEGA, CohDims, nine_term


@dataclass(frozen=True)
class ExtProblem:
    i: int
    source: SheafExpr
    target: SheafExpr
    dual_applied: bool = False

    def __post_init__(self):
        if self.i not in (0, 1, 2):
            raise ValueError(f"Ext degree must be 0, 1 or 2, got {self.i}")


def serre_reduce(p: ExtProblem) -> ExtProblem:
    """``Ext^i(F, G) -> Ext^{2-i}(G, F(-2,-2))`` (dual); applying twice is the identity."""
    if not p.dual_applied:
        return ExtProblem(2 - p.i, p.target, p.source.twist(*OMEGA), True)
    return ExtProblem(2 - p.i, p.target.twist(-OMEGA.a, -OMEGA.b), p.source, False)


_HYP_RE = re.compile(r" \(hyp [^)]*\)")


def sheaf_key(F):
    """Text form without hypotheses: Ext groups do not depend on them."""
    return _HYP_RE.sub("", format_sheaf(F))


def ext_var(i, F, G):
    """Canonical unknown name for ``Ext^i(F, G)``, shared with its Serre dual."""
    direct = (i, sheaf_key(F), sheaf_key(G))
    dual = (2 - i, sheaf_key(G), sheaf_key(F.twist(*OMEGA)))
    a, b, c = min(direct, dual)
    return f"Ext{a}({b}, {c})"


def h_var(k, F):
    return f"h{k}{sheaf_key(F)}"


ROUTES = ("joint", "direct", "serre")


class _Builder:
    """Collects sequences and fixed values for one joint solve."""

    def __init__(self):
        self.seqs = []
        self.known = {}
        self._seen = set()

    def once(self, key):
        if key in self._seen:
            return False
        self._seen.add(key)
        return True

    def coh_terms(self, F):
        """Three ``Term`` objects standing for ``H^k(F)``."""
        dims = h_dims(F)
        if dims.known or not isinstance(F, (Resolution, Extension)):
            return [Term(f"H{k}{sheaf_key(F)}", dims[k]) for k in range(3)]
        terms = [Term(f"H{k}{sheaf_key(F)}", var=h_var(k, F)) for k in range(3)]
        if self.once(("coh", sheaf_key(F), format_sheaf(F))):
            self._add_cohomology_sequence(F, terms)
        return terms

    def _add_cohomology_sequence(self, F, f_terms):
        hyps = [(h.degree, h.arrow, h.annot) for h in F.hyps]
        low_dim = sheafalg.support_dim_le_one(F)
        if isinstance(F, Resolution):
            x = self._sum_terms(F.left, "left")
            y = self._sum_terms(F.right, "right")
            z = list(f_terms)
            if low_dim:
                z[2] = Term(z[2].label, 0, z[2].var)
        else:
            x = self.coh_terms(F.sub)
            z = self.coh_terms(F.quot)
            y = list(f_terms)
            if low_dim:
                y[2] = Term(y[2].label, 0, y[2].var)
        terms = [t for k in range(3) for t in (x[k], y[k], z[k])]
        self.seqs.append(nine_term(terms, hyps))

    @staticmethod
    def _sum_terms(degs, label):
        total = sheafalg._sum_dims(degs)
        return [Term(f"H{k}({label})", total[k]) for k in range(3)]

    def twisted_sum(self, G, degs, label):
        """Terms for ``H^k`` of ``(+) G(-d)`` over ``d`` in ``degs``."""
        parts = [self.coh_terms(G.twist(-d[0], -d[1])) for d in degs]
        out = []
        for k in range(3):
            col = [p[k] for p in parts]
            lab = f"H{k}({label})"
            if not col:
                out.append(Term(lab, 0))
            elif all(t.dim is not None for t in col):
                out.append(Term(lab, sum(t.dim for t in col)))
            elif len(col) == 1:
                out.append(col[0])
            else:
                out.append(Term(lab))
        return out

    def ext_route(self, F, G, ext_names, hyps=()):
        """Add ``Hom(-, G)`` applied to a resolution of ``F``; ``ext_names[k]`` names Ext^k."""
        res = as_resolution(F)
        ext_terms = [Term(f"Ext{k}", var=ext_names[k]) for k in range(3)]
        y = self.twisted_sum(G, res.right, "G(-right)")
        z = self.twisted_sum(G, res.left, "G(-left)")
        terms = [t for k in range(3) for t in (ext_terms[k], y[k], z[k])]
        self.seqs.append(nine_term(terms, hyps))

    def sheaf_ext(self, F, G, route="joint", hyps=()):
        if route not in ROUTES:
            raise ValueError(f"route must be one of {', '.join(ROUTES)}, got {route!r}")
        names = [ext_var(k, F, G) for k in range(3)]
        if not self.once(("ext", names[0], route)):
            return names
        direct_ok = as_resolution(F) is not None
        dual_ok = as_resolution(G) is not None
        if route in ("joint", "direct") and direct_ok:
            self.ext_route(F, G, names, hyps)
        elif route == "direct":
            raise ValueError(f"{format_sheaf(F)} has no locally free resolution")
        if route in ("joint", "serre") and dual_ok:
            dual_names = [names[2 - k] for k in range(3)]
            self.ext_route(G, F.twist(*OMEGA), dual_names, hyps if route == "serre" else ())
        elif route == "serre":
            raise ValueError(f"{format_sheaf(G)} has no locally free resolution")
        if route == "joint" and not (direct_ok or dual_ok):
            raise ValueError(f"neither {format_sheaf(F)} nor {format_sheaf(G)} has a locally free resolution")
        return names

    def solve(self):
        return solve_system(self.seqs, self.known)


@dataclass(frozen=True)
class ExtResult:
    """Per-degree intervals; ``dims[i]`` is the integer value or None (unknown)."""

    status: Status
    intervals: tuple

    @property
    def dims(self):
        return tuple(iv.lo if iv is not None and iv.exact else None for iv in self.intervals)

    def dim(self, i):
        return self.dims[i]

    def is_unique(self, i):
        return self.intervals[i] is not None and self.intervals[i].exact

    def render(self):
        return ", ".join(
            f"Ext{i}=" + (str(iv) if iv.exact else f"UNKNOWN {iv}") if iv is not None else f"Ext{i}=UNKNOWN"
            for i, iv in enumerate(self.intervals)
        )


def _result(sys_sol, names):
    if sys_sol.status is Status.INCONSISTENT:
        return ExtResult(Status.INCONSISTENT, (None, None, None))
    ivs = tuple(sys_sol.vars.get(n) for n in names)
    status = Status.UNIQUE if all(iv is not None and iv.exact for iv in ivs) else Status.AMBIGUOUS
    return ExtResult(status, ivs)


def ext_dims_sheaf(F, G, hyps=(), route="joint", facts=None) -> ExtResult:
    """``Ext^0..2(F, G)``.

    ``route`` is ``"direct"`` (resolve ``F``), ``"serre"`` (resolve ``G`` and
    dualise) or ``"joint"`` (both when available).  ``hyps`` annotate the
    maps of the nine-term sequence of the route used, laid out
    ``Ext / H(G(-right)) / H(G(-left))`` as arrows ``XY / YZ / ZX``; with
    ``route="joint"`` they apply to the direct route.
    """
    hyps = [(h.degree, h.arrow, h.annot) if isinstance(h, sheafalg.Hypothesis) else h for h in hyps]
    b = _Builder()
    if facts is not None:
        b.known.update(facts.known_vars())
    names = b.sheaf_ext(F, G, route, hyps)
    return _result(b.solve(), names)


def ext_dim(i, F, G, **kwargs):
    return ext_dims_sheaf(F, G, **kwargs).dim(i)


def ext_problem_dims(p: ExtProblem, **kwargs) -> ExtResult:
    return ext_dims_sheaf(p.source, p.target, **kwargs)


# -- pairs -----------------------------------------------------------------


@dataclass(frozen=True)
class PairExpr:
    gamma: int
    sheaf: SheafExpr
    known_h: CohDims | None = None

    def __post_init__(self):
        if self.gamma not in (0, 1):
            raise ValueError("gamma must be 0 or 1")
        h0 = self.h().h0
        if h0 is not None and self.gamma > h0:
            raise ValueError(f"gamma = {self.gamma} exceeds h0 = {h0}")

    def h(self):
        return self.known_h if self.known_h is not None else h_dims(self.sheaf)

    def __str__(self):
        return f"({self.gamma}, {format_sheaf(self.sheaf)})"


def pair_var(i, L1, L2):
    return f"PExt{i}({L1.gamma}, {sheaf_key(L1.sheaf)}; {L2.gamma}, {sheaf_key(L2.sheaf)})"


class Tag(Enum):
    STABILITY = "STABILITY"
    PAPER = "PAPER"
    COMPUTED = "COMPUTED"


@dataclass(frozen=True)
class Fact:
    value: int
    tag: Tag
    citation: str


@dataclass
class HomFacts:
    """Recorded dimensions of Hom/Ext groups, each with a justification."""

    pair_facts: dict = field(default_factory=dict)  # (i, L1, L2) -> Fact
    sheaf_facts: dict = field(default_factory=dict)  # (i, F, G) -> Fact

    def add_pair(self, i, L1, L2, value, tag, citation):
        if not citation:
            raise ValueError("every fact needs a citation")
        self.pair_facts[(i, L1, L2)] = Fact(value, Tag(tag), citation)
        return self

    def add_sheaf(self, i, F, G, value, tag, citation):
        if not citation:
            raise ValueError("every fact needs a citation")
        self.sheaf_facts[(i, F, G)] = Fact(value, Tag(tag), citation)
        return self

    def known_vars(self):
        out = {}
        for (i, L1, L2), f in self.pair_facts.items():
            out[pair_var(i, L1, L2)] = f.value
        for (i, F, G), f in self.sheaf_facts.items():
            out[ext_var(i, F, G)] = f.value
        return out

    def entries(self):
        for (i, L1, L2), f in self.pair_facts.items():
            yield f"Ext{i}({L1}, {L2})", f
        for (i, F, G), f in self.sheaf_facts.items():
            yield f"Ext{i}({format_sheaf(F)}, {format_sheaf(G)})", f


def ext_dims_pair(L1: PairExpr, L2: PairExpr, facts: HomFacts | None = None) -> ExtResult:
    """``Ext^0..2(L1, L2)`` for pairs, solved jointly with the sheaf-level system."""
    b = _Builder()
    if facts is not None:
        b.known.update(facts.known_vars())
    _add_pair_sequence(b, L1, L2)
    names = [pair_var(k, L1, L2) for k in range(3)]
    return _result(b.solve(), names)


def _add_pair_sequence(b, L1, L2):
    F, G = L1.sheaf, L2.sheaf
    sheaf_names = b.sheaf_ext(F, G)
    h = L2.h()
    g_terms = []
    for k in range(3):
        label = f"Hom(Gamma, H{k}')"
        if L1.gamma == 0:
            g_terms.append(Term(label, 0))
            continue
        shift = L2.gamma if k == 0 else 0
        if h[k] is not None:
            g_terms.append(Term(label, h[k] - shift))
        elif shift == 0 and L2.known_h is None and isinstance(G, (Resolution, Extension)):
            g_terms.append(Term(label, var=b.coh_terms(G)[k].var))
        else:
            g_terms.append(Term(label))
    terms = []
    for k in range(3):
        terms.append(Term(f"Ext{k}(L,L')", var=pair_var(k, L1, L2)))
        terms.append(Term(f"Ext{k}(F,F')", var=sheaf_names[k]))
        terms.append(g_terms[k])
    b.seqs.append(ExactSeq(tuple(terms), open_right=True))


# -- the pairs used in the flip computations ------------------------------

LAMBDA1 = PairExpr(1, sheafalg.O_Q)
LAMBDA2 = PairExpr(0, sheafalg.O_Lt(1))
LAMBDA3 = PairExpr(1, sheafalg.E_QUINTIC)
LAMBDA4 = PairExpr(0, sheafalg.O_L)
LAMBDA5 = PairExpr(0, sheafalg.O_Lt(-1))

PAIRS = {"L1": LAMBDA1, "L2": LAMBDA2, "L3": LAMBDA3, "L4": LAMBDA4, "L5": LAMBDA5}


def paper_facts() -> HomFacts:
    """Facts the flip computations rely on and do not derive."""
    facts = HomFacts()
    facts.add_pair(0, LAMBDA1, LAMBDA2, 0, "STABILITY", "stable pairs of different slope: Hom(L1, L2) = 0")
    facts.add_pair(0, LAMBDA3, LAMBDA4, 0, "STABILITY", "stable pairs of different slope: Hom(L3, L4) = 0")
    facts.add_pair(1, LAMBDA1, LAMBDA1, 11, "PAPER", "tangent space of the 11-dimensional pair moduli at L1")
    facts.add_pair(1, LAMBDA3, LAMBDA3, 12, "PAPER", "tangent space of the 12-dimensional pair moduli at L3")
    facts.add_sheaf(0, sheafalg.O_Q, sheafalg.O_Q, 1, "STABILITY", "O_Q is stable, so simple")
    facts.add_sheaf(0, sheafalg.E_QUINTIC, sheafalg.E_QUINTIC, 1, "PAPER", "E is stable, so simple")
    return facts
