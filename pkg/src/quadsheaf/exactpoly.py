"""
Exact polynomial arithmetic.

Three carriers, all immutable:

* ``UPoly``  -- dense univariate integer polynomial in the Betti variable
  ``x`` (one unit of ``x`` = two units of cohomological degree).
* ``BiPoly`` -- sparse bivariate rational polynomial in the twist variables
  ``m, n`` (Hilbert polynomials).
* ``TruncSeries`` -- power series in a counting variable ``z`` with ``UPoly``
  coefficients, truncated above ``z^order``.

Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from numbers import Rational


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UPoly:
    """Dense integer polynomial, coefficients indexed by exponent."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = _trim(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"UPoly coefficients must be int, got {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = UPoly.const(other)
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UPoly", self.coeffs))

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, int):
            return UPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = UPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def truncate(self, k):
        """Drop every power above ``x^k``."""
        return UPoly(self.coeffs[: k + 1])

    def reversed(self):
        return UPoly(reversed(self.coeffs))

    def is_palindromic(self):
        return self.coeffs == tuple(reversed(self.coeffs))

    def to_json(self):
        return list(self.coeffs)

    def render(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UPoly({list(self.coeffs)})"


X = UPoly((0, 1))


def geometric_poly(n):
    """``1 + x + ... + x^n``, the Poincare polynomial of projective n-space."""
    if n < 0:
        raise ValueError(f"geometric_poly needs n >= 0, got {n}")
    return UPoly((1,) * (n + 1))


class BiPoly:
    """Sparse polynomial in ``m, n`` with exact rational coefficients.

    ``coeffs`` maps ``(i, j)`` (exponent of m, exponent of n) to a Fraction;
    zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for key, c in (coeffs or {}).items():
            if not isinstance(c, Rational):
                raise TypeError(f"BiPoly coefficients must be rational, got {c!r}")
            c = Fraction(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def linear(cls, r, s, t):
        """``r*m + s*n + t``."""
        return cls({(1, 0): r, (0, 1): s, (0, 0): t})

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i, j):
        return self.coeffs.get((i, j), Fraction(0))

    @property
    def total_degree(self):
        return max((i + j for i, j in self.coeffs), default=-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("BiPoly", frozenset(self.coeffs.items())))

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, Rational):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __call__(self, m, n):
        total = Fraction(0)
        for (i, j), c in self.coeffs.items():
            total += c * Fraction(m) ** i * Fraction(n) ** j
        return total

    def shift(self, u, v):
        """Substitute ``m -> m + u``, ``n -> n + v``."""
        out = BiPoly()
        mu = BiPoly({(1, 0): 1, (0, 0): u})
        nv = BiPoly({(0, 1): 1, (0, 0): v})
        for (i, j), c in self.coeffs.items():
            term = BiPoly.const(c)
            for _ in range(i):
                term = term * mu
            for _ in range(j):
                term = term * nv
            out = out + term
        return out

    def render(self):
        if not self.coeffs:
            return "0"
        keys = sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0]))
        s = ""
        for key in keys:
            c = self.coeffs[key]
            i, j = key
            mono = "*".join(
                (["m" if i == 1 else f"m^{i}"] if i else []) + (["n" if j == 1 else f"n^{j}"] if j else [])
            )
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}{mono}"
            else:
                body = str(a)
            if not s:
                s = ("-" if c < 0 else "") + body
            else:
                s += ("-" if c < 0 else "+") + body
        return s

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BiPoly({self.render()!r})"


M = BiPoly({(1, 0): 1})
N = BiPoly({(0, 1): 1})


class TruncSeries:
    """Power series in ``z`` with ``UPoly`` coefficients, modulo ``z^(order+1)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = [c if isinstance(c, UPoly) else UPoly.const(c) for c in list(coeffs)[: order + 1]]
        coeffs += [UPoly()] * (order + 1 - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def one(cls, order):
        return cls(order, [UPoly.const(1)])

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and (self.order, self.coeffs) == (other.order, other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncSeries(order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        order = min(self.order, other.order)
        out = [UPoly()] * (order + 1)
        for i in range(order + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return TruncSeries(order, out)

    def inverse(self):
        """Multiplicative inverse; the constant term must be 1."""
        if self.coeffs[0] != UPoly.const(1):
            raise ValueError("series inverse needs constant term 1")
        out = [UPoly.const(1)]
        for k in range(1, self.order + 1):
            acc = UPoly()
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc)
        return TruncSeries(self.order, out)

    def __repr__(self):
        return f"TruncSeries({self.order}, {[str(c) for c in self.coeffs]})"


def trunc_product(factors, order):
    """Exact product of binomial factors truncated at ``z^order``.

    Each factor is ``(is_denominator, pattern, zpow)`` and stands for
    ``(1 - pattern * z^zpow)`` or its reciprocal.  A factor whose ``zpow`` is
    0 contributes a constant term ``1 - pattern``; denominators must keep
    that constant term equal to 1.
    """
    result = TruncSeries.one(order)
    for is_den, pattern, zpow in factors:
        if zpow < 0:
            raise ValueError("negative z-power in factor")
        if not isinstance(pattern, UPoly):
            pattern = UPoly.const(pattern)
        coeffs = [UPoly.const(1)] + [UPoly()] * order
        if zpow == 0:
            coeffs[0] = UPoly.const(1) - pattern
        elif zpow <= order:
            coeffs[zpow] = coeffs[zpow] - pattern
        series = TruncSeries(order, coeffs)
        if is_den:
            if series.coeffs[0] != UPoly.const(1):
                raise ValueError("denominator factor has constant term != 1 in z")
            series = series.inverse()
        result = result * series
    return result
