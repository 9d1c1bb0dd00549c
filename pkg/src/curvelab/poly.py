"""Exact sparse bivariate polynomials over the integers.

A polynomial is a finite map from monomials ``(i, j)`` to nonzero integer
coefficients, together with an ordered pair of variable names, so
``{(4, 0): 1, (0, 2): 1, (2, 0): -1}`` over ``("x", "z")`` is
``x^4 + z^2 - x^2``.  Coefficients are plain Python integers, hence
arbitrary precision; all arithmetic is exact.

Arithmetic (``+``, ``-``, ``*``, ``**``) never rescales its result, so the
ring axioms hold on the nose.  :meth:`BivarPoly.normalize` produces the
canonical representative used for curve equality: integer content divided
out and the coefficient of the graded-lexicographically greatest monomial
(``var_u`` before ``var_v``) made positive.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple, Union

from .errors import DegreeLimitExceeded, DegreeOfZero, VariableMismatch

Monomial = Tuple[int, int]
RationalLike = Union[int, str, Fraction]
PointLike = Tuple[RationalLike, RationalLike]

# Results whose total degree exceeds this are rejected to keep the
# interactive tools responsive.  The largest curve built here is degree 8.
MAX_TOTAL_DEGREE = 64

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def set_max_total_degree(limit: int) -> int:
    """Change the global degree guard; returns the previous limit."""
    global MAX_TOTAL_DEGREE
    if limit < 1:
        raise ValueError("degree limit must be positive")
    previous = MAX_TOTAL_DEGREE
    MAX_TOTAL_DEGREE = limit
    return previous


def as_fraction(value: RationalLike) -> Fraction:
    """Exact rational from an int, Fraction, or a string like ``-3`` or ``5/7``.

    Decimal notation is rejected: this package never rounds.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an integer or p/q fraction: {value!r}")
        return Fraction(text)
    raise ValueError(f"not an exact rational: {value!r}")


def as_point(at: PointLike) -> Tuple[Fraction, Fraction]:
    """Pair of exact rationals from any acceptable point spelling."""
    u, v = at
    return as_fraction(u), as_fraction(v)


def _grlex_key(monomial: Monomial) -> Tuple[int, int]:
    i, j = monomial
    return (i + j, i)


class BivarPoly:
    """Immutable sparse polynomial in two named variables.

    Instances compare equal iff they have the same variable pair and the
    identical term map; use :meth:`normalize` before comparing two
    polynomials as *curves* (i.e. up to a nonzero scalar).
    """

    __slots__ = ("_vars", "_terms")

    def __init__(self, var_u: str, var_v: str,
                 terms: Union[Mapping[Monomial, int],
                              Iterable[Tuple[Monomial, int]]] = ()):
        if not isinstance(var_u, str) or not isinstance(var_v, str) \
                or not var_u or not var_v:
            raise VariableMismatch("variable names must be nonempty strings")
        if var_u == var_v:
            raise VariableMismatch(f"variables must be distinct, got {var_u!r} twice")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for (eu, ev), c in items:
            if not isinstance(eu, int) or not isinstance(ev, int) \
                    or eu < 0 or ev < 0:
                raise ValueError(f"bad monomial exponents ({eu}, {ev})")
            if not isinstance(c, int):
                raise ValueError(f"coefficient {c!r} is not an integer")
            if c == 0:
                continue
            key = (eu, ev)
            acc = clean.get(key, 0) + c
            if acc:
                clean[key] = acc
            elif key in clean:
                del clean[key]
        for eu, ev in clean:
            if eu + ev > MAX_TOTAL_DEGREE:
                raise DegreeLimitExceeded(
                    f"total degree {eu + ev} exceeds the limit {MAX_TOTAL_DEGREE}")
        object.__setattr__(self, "_vars", (var_u, var_v))
        object.__setattr__(self, "_terms", clean)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, var_u: str, var_v: str) -> "BivarPoly":
        return cls(var_u, var_v)

    @classmethod
    def constant(cls, value: int, var_u: str, var_v: str) -> "BivarPoly":
        return cls(var_u, var_v, {(0, 0): value})

    @classmethod
    def variable(cls, name: str, var_u: str, var_v: str) -> "BivarPoly":
        if name == var_u:
            return cls(var_u, var_v, {(1, 0): 1})
        if name == var_v:
            return cls(var_u, var_v, {(0, 1): 1})
        raise VariableMismatch(f"{name!r} is not one of ({var_u!r}, {var_v!r})")

    # -- basic inspection ------------------------------------------------------

    @property
    def vars(self) -> Tuple[str, str]:
        return self._vars

    @property
    def var_u(self) -> str:
        return self._vars[0]

    @property
    def var_v(self) -> str:
        return self._vars[1]

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(monomial, 0)

    def total_degree(self) -> int:
        if not self._terms:
            raise DegreeOfZero("the zero polynomial has no degree")
        return max(i + j for i, j in self._terms)

    def degree_in(self, var: str) -> int:
        """Highest exponent of ``var`` among stored terms."""
        if not self._terms:
            raise DegreeOfZero("the zero polynomial has no degree")
        slot = self._slot(var)
        return max(m[slot] for m in self._terms)

    def lowest_degree(self) -> int:
        """Smallest total degree among stored terms (order at the origin)."""
        if not self._terms:
            raise DegreeOfZero("the zero polynomial has no order")
        return min(i + j for i, j in self._terms)

    def homogeneous_part(self, degree: int) -> "BivarPoly":
        """Sum of the terms of the given total degree."""
        picked = {m: c for m, c in self._terms.items() if m[0] + m[1] == degree}
        return BivarPoly(*self._vars, picked)

    def leading_term(self) -> Tuple[Monomial, int]:
        """Graded-lex greatest monomial and its coefficient."""
        if not self._terms:
            raise DegreeOfZero("the zero polynomial has no leading term")
        monomial = max(self._terms, key=_grlex_key)
        return monomial, self._terms[monomial]

    def content(self) -> int:
        """GCD of the coefficients; 0 for the zero polynomial."""
        return math.gcd(*self._terms.values()) if self._terms else 0

    def sorted_terms(self) -> list[Tuple[Monomial, int]]:
        """Terms in descending graded-lex order (display order)."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]),
                      reverse=True)

    def _slot(self, var: str) -> int:
        if var == self._vars[0]:
            return 0
        if var == self._vars[1]:
            return 1
        raise VariableMismatch(f"{var!r} is not one of {self._vars}")

    def _require_same_vars(self, other: "BivarPoly") -> None:
        if self._vars != other._vars:
            raise VariableMismatch(
                f"variable pairs differ: {self._vars} vs {other._vars}")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = BivarPoly.constant(other, *self._vars)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        self._require_same_vars(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            elif m in acc:
                del acc[m]
        return BivarPoly(*self._vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly(*self._vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BivarPoly.constant(other, *self._vars)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BivarPoly(*self._vars,
                             {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        self._require_same_vars(other)
        if self._terms and other._terms:
            if self.total_degree() + other.total_degree() > MAX_TOTAL_DEGREE:
                raise DegreeLimitExceeded(
                    f"product degree {self.total_degree() + other.total_degree()} "
                    f"exceeds the limit {MAX_TOTAL_DEGREE}")
        acc: dict[Monomial, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                m = (i1 + i2, j1 + j2)
                s = acc.get(m, 0) + c1 * c2
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
        return BivarPoly(*self._vars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        if self._terms and self.total_degree() * exponent > MAX_TOTAL_DEGREE:
            raise DegreeLimitExceeded(
                f"power degree {self.total_degree() * exponent} "
                f"exceeds the limit {MAX_TOTAL_DEGREE}")
        result = BivarPoly.constant(1, *self._vars)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- curve-level operations ------------------------------------------------

    def evaluate(self, at: PointLike) -> Fraction:
        """Exact value of the polynomial at a rational point."""
        u, v = as_point(at)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * u ** i * v ** j
        return total

    def normalize(self) -> "BivarPoly":
        """Canonical representative: primitive, positive graded-lex lead."""
        if not self._terms:
            return self
        g = self.content()
        if self.leading_term()[1] < 0:
            g = -g
        if g == 1:
            return self
        return BivarPoly(*self._vars, {m: c // g for m, c in self._terms.items()})

    def rename_var(self, old: str, new: str) -> "BivarPoly":
        """Same terms with one variable renamed."""
        slot = self._slot(old)
        names = list(self._vars)
        names[slot] = new
        return BivarPoly(names[0], names[1], self._terms)

    # -- comparison and display ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        return hash((self._vars, frozenset(self._terms.items())))

    def __str__(self) -> str:
        from .expr import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BivarPoly({self.var_u!r}, {self.var_v!r}, {self._terms!r})"


class Translated:
    """A translated polynomial plus the scalar absorbed while clearing it
    back to canonical integer form."""

    __slots__ = ("poly", "scale")

    def __init__(self, poly: BivarPoly, scale: Fraction):
        self.poly = poly
        self.scale = scale

    def __iter__(self):
        return iter((self.poly, self.scale))


def clear_denominators(var_u: str, var_v: str,
                       terms: Mapping[Monomial, Fraction]) -> Translated:
    """Canonical integer polynomial from rational-coefficient terms.

    Returns the polynomial together with the rational ``scale`` such that
    ``poly == scale * sum(terms)`` exactly.  Multiplying an equation by a
    nonzero rational does not change its zero set.
    """
    nonzero = {m: c for m, c in terms.items() if c}
    if not nonzero:
        return Translated(BivarPoly.zero(var_u, var_v), Fraction(1))
    lcm = 1
    for c in nonzero.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    cleared = BivarPoly(var_u, var_v,
                        {m: (c * lcm).numerator for m, c in nonzero.items()})
    canonical = cleared.normalize()
    leftover = cleared.content()
    if cleared.leading_term()[1] < 0:
        leftover = -leftover
    return Translated(canonical, Fraction(lcm, leftover))


def translate(p: BivarPoly, by: PointLike) -> BivarPoly:
    """The polynomial ``q(u, v) = p(u + du, v + dv)``, canonicalized.

    Moving a point of interest to the origin this way preserves the curve
    up to the recorded rational factor (see :func:`translate_scaled`).
    """
    return translate_scaled(p, by).poly


def translate_scaled(p: BivarPoly, by: PointLike) -> Translated:
    """Like :func:`translate` but also reports the scaling factor applied
    during re-normalization."""
    du, dv = as_point(by)
    acc: dict[Monomial, Fraction] = {}
    for (i, j), c in p.terms.items():
        for s in range(i + 1):
            row = c * math.comb(i, s) * du ** (i - s)
            for t in range(j + 1):
                value = row * math.comb(j, t) * dv ** (j - t)
                if value:
                    key = (s, t)
                    total = acc.get(key, Fraction(0)) + value
                    if total:
                        acc[key] = total
                    elif key in acc:
                        del acc[key]
    return clear_denominators(p.var_u, p.var_v, acc)
