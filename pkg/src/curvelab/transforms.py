"""Imploding and exploding points of plane curves, and local analysis.

A blow-down ("implode") rewrites the eliminated variable as ``w / (p - a)``
where ``p`` is the pivot variable and ``a`` the center, then clears
denominators with ``(p - a)^d``; it glues the fiber over ``p = a`` to one
point.  A blow-up ("explode") substitutes ``(p - a) * w`` and strips the
maximal exceptional factor ``(p - a)^k``; it separates branches through
the point ``(a, 0)``.  The two are mutually inverse on curves not
containing the exceptional line.

Rational centers are handled by keeping the primitive linear form
``q*p - n`` (for ``a = n/q``) and absorbing the extra powers of ``q`` into
the final normalization, so everything stays in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (DegenerateTransform, DegreeOfZero, NotOnCurve,
                     VariableMismatch)
from .expr import is_identifier
from .poly import (BivarPoly, Monomial, PointLike, RationalLike, as_fraction,
                   translate)

BLOW_DOWN = "blow_down"
BLOW_UP = "blow_up"


@dataclass(frozen=True)
class TransformStep:
    """One blow-down or blow-up: which variable pivots, which is replaced,
    the new variable's name, and the rational center on the pivot axis."""

    kind: str
    pivot: str
    replaced: str
    new: str
    center: Fraction = field(default=Fraction(0))
    strict: bool = False

    def __post_init__(self):
        if self.kind not in (BLOW_DOWN, BLOW_UP):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        for name in (self.pivot, self.replaced, self.new):
            if not is_identifier(name):
                raise VariableMismatch(f"{name!r} is not a valid variable name")
        if self.new == self.pivot:
            raise VariableMismatch("the new variable must differ from the pivot")
        if self.replaced == self.pivot:
            raise VariableMismatch("pivot and replaced variables must differ")
        object.__setattr__(self, "center", as_fraction(self.center))


def step_to_dict(step: TransformStep) -> dict:
    """JSON-ready form (used by pipeline files and the HTTP API)."""
    out = {
        "kind": step.kind,
        "pivot": step.pivot,
        "replaced": step.replaced,
        "new": step.new,
        "center": str(step.center),
    }
    if step.kind == BLOW_DOWN:
        out["strict"] = step.strict
    return out


def step_from_dict(data: dict) -> TransformStep:
    """Parse the serialized form; raises ValueError on malformed input."""
    if not isinstance(data, dict):
        raise ValueError("step must be an object")
    allowed = {"kind", "pivot", "replaced", "new", "center", "strict"}
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown step field(s): {', '.join(sorted(unknown))}")
    for key in ("kind", "pivot", "replaced", "new"):
        if key not in data:
            raise ValueError(f"step is missing {key!r}")
        if not isinstance(data[key], str):
            raise ValueError(f"step field {key!r} must be a string")
    center = data.get("center", "0")
    if isinstance(center, float):
        raise ValueError("center must be exact: write an integer or 'p/q'")
    strict = data.get("strict", False)
    if not isinstance(strict, bool):
        raise ValueError("strict must be a boolean")
    try:
        return TransformStep(kind=data["kind"], pivot=data["pivot"],
                             replaced=data["replaced"], new=data["new"],
                             center=as_fraction(center), strict=strict)
    except (ValueError, VariableMismatch) as exc:
        raise ValueError(str(exc)) from None


@dataclass(frozen=True)
class BlowUpResult:
    proper: BivarPoly
    exceptional_multiplicity: int


def _arrange(f: BivarPoly, step: TransformStep) -> Tuple[int, int]:
    """Slot indices of (pivot, replaced) in ``f``; validates the step fits."""
    if f.is_zero:
        raise DegreeOfZero("cannot transform the zero polynomial")
    if {step.pivot, step.replaced} != set(f.vars):
        raise VariableMismatch(
            f"step variables ({step.pivot!r}, {step.replaced!r}) do not match "
            f"the curve variables {f.vars}")
    pivot_slot = f.vars.index(step.pivot)
    return pivot_slot, 1 - pivot_slot


def _out_vars(f: BivarPoly, step: TransformStep, pivot_slot: int) -> Tuple[str, str]:
    names = list(f.vars)
    names[1 - pivot_slot] = step.new
    return names[0], names[1]


def _place(pivot_slot: int, pivot_exp: int, other_exp: int) -> Monomial:
    return (pivot_exp, other_exp) if pivot_slot == 0 else (other_exp, pivot_exp)


def blow_down(f: BivarPoly, step: TransformStep) -> BivarPoly:
    """Implode the point (center, 0) of the pivot axis.

    Purely polynomially: the term ``c * p^i * r^j`` becomes
    ``c * p^i * (p - a)^(d-j) * w^j`` with ``d = deg_r(f)``, then the
    result is canonicalized.  With ``strict=True`` any leftover power of
    ``(p - a)`` is divided out afterwards; the default keeps the raw
    cleared form.
    """
    if step.kind != BLOW_DOWN:
        raise ValueError("blow_down requires a blow_down step")
    pivot_slot, replaced_slot = _arrange(f, step)
    d = f.degree_in(step.replaced)
    num, den = step.center.numerator, step.center.denominator
    acc: dict[Monomial, int] = {}
    for mono, c in f.terms.items():
        i, j = mono[pivot_slot], mono[replaced_slot]
        base = c * den ** j
        n = d - j
        for m in range(n + 1):
            coeff = base * math.comb(n, m) * den ** m * (-num) ** (n - m)
            key = _place(pivot_slot, i + m, j)
            total = acc.get(key, 0) + coeff
            if total:
                acc[key] = total
            elif key in acc:
                del acc[key]
    result = BivarPoly(*_out_vars(f, step, pivot_slot), acc).normalize()
    if step.strict:
        result, _ = _strip_linear(result, step.pivot, den, num)
        if not result.is_zero and result.total_degree() == 0:
            raise DegenerateTransform(
                "strict blow-down removed every non-exceptional factor")
    return result


def blow_up(f: BivarPoly, step: TransformStep) -> BlowUpResult:
    """Explode the point (center, 0) of the pivot axis.

    Substitutes ``r = (p - a) * w``, strips the maximal exceptional factor
    ``(p - a)^k`` and returns the canonical proper transform plus ``k``.
    """
    if step.kind != BLOW_UP:
        raise ValueError("blow_up requires a blow_up step")
    pivot_slot, replaced_slot = _arrange(f, step)
    d = f.degree_in(step.replaced)
    num, den = step.center.numerator, step.center.denominator
    acc: dict[Monomial, int] = {}
    for mono, c in f.terms.items():
        i, j = mono[pivot_slot], mono[replaced_slot]
        base = c * den ** (d - j)
        for m in range(j + 1):
            coeff = base * math.comb(j, m) * den ** m * (-num) ** (j - m)
            key = _place(pivot_slot, i + m, j)
            total = acc.get(key, 0) + coeff
            if total:
                acc[key] = total
            elif key in acc:
                del acc[key]
    substituted = BivarPoly(*_out_vars(f, step, pivot_slot), acc).normalize()
    proper, k = _strip_linear(substituted, step.pivot, den, num)
    if proper.total_degree() == 0:
        raise DegenerateTransform(
            "the curve is supported entirely on exceptional lines")
    return BlowUpResult(proper=proper, exceptional_multiplicity=k)


def _strip_linear(f: BivarPoly, var: str, den: int, num: int
                  ) -> Tuple[BivarPoly, int]:
    """Divide out the maximal power of the primitive line ``den*var - num``."""
    k = 0
    while True:
        quotient = _divide_linear(f, var, den, num)
        if quotient is None:
            return f, k
        f = quotient
        k += 1


def _divide_linear(f: BivarPoly, var: str, den: int, num: int
                   ) -> Optional[BivarPoly]:
    """Exact quotient ``f / (den*var - num)``, or None if it does not divide.

    Works per power of the other variable with synthetic division; by
    Gauss's lemma a primitive linear divisor of an integer polynomial has
    an integer quotient.
    """
    slot = f.vars.index(var)
    other_slot = 1 - slot
    groups: dict[int, dict[int, int]] = {}
    for mono, c in f.terms.items():
        groups.setdefault(mono[other_slot], {})[mono[slot]] = c
    out: dict[Monomial, int] = {}
    for w, coeffs in groups.items():
        n = max(coeffs)
        if n == 0:
            return None
        carry = Fraction(0)
        quotient_row = {}
        for e in range(n, 0, -1):
            carry = (coeffs.get(e, 0) + num * carry) / den
            quotient_row[e - 1] = carry
        if coeffs.get(0, 0) + num * carry != 0:
            return None
        for e, value in quotient_row.items():
            assert value.denominator == 1
            if value:
                out[_place(slot, e, w)] = int(value)
    return BivarPoly(*f.vars, out)


def partial_derivative(f: BivarPoly, var: str) -> BivarPoly:
    """Formal partial derivative, canonicalized."""
    slot = f.vars.index(var) if var in f.vars else None
    if slot is None:
        raise VariableMismatch(f"{var!r} is not one of {f.vars}")
    acc: dict[Monomial, int] = {}
    for mono, c in f.terms.items():
        e = mono[slot]
        if e == 0:
            continue
        key = (mono[0] - 1, mono[1]) if slot == 0 else (mono[0], mono[1] - 1)
        acc[key] = acc.get(key, 0) + c * e
    return BivarPoly(*f.vars, acc).normalize()


@dataclass(frozen=True)
class PointClass:
    """Classification of a rational point relative to a curve."""

    status: str                       # "not_on_curve" | "smooth" | "singular"
    multiplicity: Optional[int] = None

    @property
    def on_curve(self) -> bool:
        return self.status != "not_on_curve"


def is_singular(f: BivarPoly, at: PointLike) -> PointClass:
    """Classify a rational point: off the curve, smooth, or singular with
    its multiplicity (degree of the lowest homogeneous part at the point)."""
    if f.is_zero:
        raise DegreeOfZero("the zero polynomial is not a curve")
    if f.evaluate(at) != 0:
        return PointClass("not_on_curve")
    m = translate(f, at).lowest_degree()
    if m == 1:
        return PointClass("smooth", 1)
    return PointClass("singular", m)


@dataclass(frozen=True)
class TangentCone:
    """Lowest homogeneous part at a curve point, split into rational
    tangent lines and a line-free residual.

    ``scale * product(line^mult) * residual`` reconstructs the lowest
    homogeneous part of the translated curve exactly.
    """

    multiplicity: int
    lines: Tuple[Tuple[BivarPoly, int], ...]
    residual: BivarPoly
    scale: int

    def reconstruction(self) -> BivarPoly:
        u, v = self.residual.vars
        product = BivarPoly.constant(self.scale, u, v)
        for line, mult in self.lines:
            product = product * line ** mult
        return product * self.residual


def tangent_cone(f: BivarPoly, at: PointLike) -> TangentCone:
    """Tangent lines of the curve at a rational point on it.

    After translating the point to the origin, the lowest homogeneous part
    factors into the axis monomial, lines ``t*v - s*u`` for each rational
    root ``s/t`` of its dehomogenization (rational-root theorem, exact
    division), and a residual with no rational linear factors.
    """
    if f.is_zero:
        raise DegreeOfZero("the zero polynomial is not a curve")
    if f.evaluate(at) != 0:
        raise NotOnCurve(f"the point {tuple(str(c) for c in at)} is not on the curve")
    g = translate(f, at)
    m = g.lowest_degree()
    lowest = g.homogeneous_part(m)
    u, v = g.vars
    p = min(mono[0] for mono in lowest.terms)
    q = min(mono[1] for mono in lowest.terms)
    lines: list[Tuple[BivarPoly, int]] = []
    if p:
        lines.append((BivarPoly.variable(u, u, v), p))
    if q:
        lines.append((BivarPoly.variable(v, u, v), q))
    # dehomogenize the monomial-free remainder: coefficient of v^j
    reduced_degree = m - p - q
    coeffs = [0] * (reduced_degree + 1)
    for (i, j), c in lowest.terms.items():
        coeffs[j - q] = c
    residual_coeffs = coeffs
    for root in _rational_roots(coeffs):
        s, t = root.numerator, root.denominator
        mult = 0
        while True:
            divided = _divide_uni(residual_coeffs, t, s)
            if divided is None:
                break
            residual_coeffs = divided
            mult += 1
        line = BivarPoly(u, v, {(1, 0): -s, (0, 1): t})
        lines.append((line, mult))
    if len(residual_coeffs) == 1:
        scale = residual_coeffs[0]
        residual = BivarPoly.constant(1, u, v)
    else:
        r = len(residual_coeffs) - 1
        residual = BivarPoly(u, v, {(r - j, j): c
                                    for j, c in enumerate(residual_coeffs) if c})
        content = residual.content()
        if residual.leading_term()[1] < 0:
            content = -content
        scale = content
        residual = residual.normalize()
    return TangentCone(multiplicity=m, lines=tuple(lines),
                       residual=residual, scale=scale)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(coeffs: list[int]) -> list[Fraction]:
    """Rational roots of sum(coeffs[j] * X^j), assuming coeffs[0] != 0,
    in descending order."""
    roots = []
    for s in _divisors(coeffs[0]):
        for t in _divisors(coeffs[-1]):
            if math.gcd(s, t) != 1:
                continue
            for sign in (1, -1):
                candidate = Fraction(sign * s, t)
                value = Fraction(0)
                for c in reversed(coeffs):
                    value = value * candidate + c
                if value == 0:
                    roots.append(candidate)
    return sorted(roots, reverse=True)


def _divide_uni(coeffs: list[int], t: int, s: int) -> Optional[list[int]]:
    """Exact quotient of a univariate coefficient list by ``t*X - s``."""
    n = len(coeffs) - 1
    if n < 1:
        return None
    carry = Fraction(0)
    quotient = [0] * n
    for e in range(n, 0, -1):
        carry = (coeffs[e] + s * carry) / t
        quotient[e - 1] = carry
    if coeffs[0] + s * carry != 0:
        return None
    out = []
    for value in quotient:
        assert value.denominator == 1
        out.append(int(value))
    return out


def apply_step(f: BivarPoly, step: TransformStep,
               pre_translate: Optional[PointLike] = None
               ) -> Tuple[BivarPoly, Optional[int]]:
    """Run one pipeline step: optional translation, then the transform.

    Returns the new curve and, for blow-ups, the exceptional multiplicity.
    """
    if pre_translate is not None:
        f = translate(f, pre_translate)
    if step.kind == BLOW_DOWN:
        return blow_down(f, step), None
    result = blow_up(f, step)
    return result.proper, result.exceptional_multiplicity
