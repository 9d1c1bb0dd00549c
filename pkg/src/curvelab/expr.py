"""Text format for polynomial expressions.

Grammar (whitespace insignificant, ``=0`` suffix tolerated)::

    expression := term (('+'|'-') term)*
    term       := factor (('*' | juxtaposition) factor)*
    factor     := '-' factor | base ('^' nonneg-int)?
    base       := integer | identifier | '(' expression ')'

Juxtaposition of value tokens multiplies, so ``2x``, ``x y`` and
``4x^3(x-1)`` all work.  Identifiers are maximal-munch: ``xy`` is one
variable named ``xy``; write ``x y`` or ``x*y`` for a product.  Unary
minus binds tighter than addition but looser than ``^``: ``-x^2`` is
``-(x^2)``.  Exponents must be literal non-negative integers.

This grammar is the normative text format everywhere polynomials travel
as text: CLI flags, pipeline files, and the HTTP API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import DegreeLimitExceeded, ParseError
from .poly import MAX_TOTAL_DEGREE, BivarPoly

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.fullmatch(name))


# -- parse tree ----------------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Sum:
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Difference:
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Product:
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Power:
    base: "ExprNode"
    exponent: int


@dataclass(frozen=True)
class Negation:
    operand: "ExprNode"


ExprNode = Union[IntLit, Name, Sum, Difference, Product, Power, Negation]


# -- tokenizer -----------------------------------------------------------------

_OPS = "+-*^()="


class _Token:
    __slots__ = ("kind", "text", "value", "offset")

    def __init__(self, kind, text, value, offset):
        self.kind = kind        # "int" | "ident" | one of _OPS | "end"
        self.text = text
        self.value = value
        self.offset = offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        # ASCII digits only: str.isdigit also accepts unicode digits
        # that int() rejects
        if "0" <= ch <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            tokens.append(_Token("int", text[i:j], int(text[i:j]), i))
            i = j
            continue
        m = IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), None, i))
            i = m.end()
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, None, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", None, n))
    return tokens


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.cur.offset)

    def expression(self) -> ExprNode:
        node = self.term()
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            node = Sum(node, right) if op == "+" else Difference(node, right)
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while True:
            kind = self.cur.kind
            if kind == "*":
                self.advance()
            elif kind not in ("int", "ident", "("):
                return node
            node = Product(node, self.factor())

    def factor(self) -> ExprNode:
        if self.cur.kind == "-":
            self.advance()
            return Negation(self.factor())
        node = self.base()
        if self.cur.kind == "^":
            self.advance()
            if self.cur.kind != "int":
                self.fail("exponent must be a non-negative integer literal")
            node = Power(node, self.advance().value)
        return node

    def base(self) -> ExprNode:
        tok = self.cur
        if tok.kind == "int":
            self.advance()
            return IntLit(tok.value)
        if tok.kind == "ident":
            self.advance()
            return Name(tok.text)
        if tok.kind == "(":
            self.advance()
            node = self.expression()
            if self.cur.kind != ")":
                self.fail("expected ')'")
            self.advance()
            return node
        self.fail(f"expected a value, got {tok.text!r}" if tok.kind != "end"
                  else "unexpected end of input")


def parse(text: str) -> ExprNode:
    """Parse an expression, tolerating a trailing ``=0``."""
    parser = _Parser(_tokenize(text))
    node = parser.expression()
    if parser.cur.kind == "=":
        parser.advance()
        if parser.cur.kind != "int" or parser.cur.value != 0:
            parser.fail("only '=0' may follow an equation")
        parser.advance()
    if parser.cur.kind != "end":
        parser.fail(f"unexpected {parser.cur.text!r} after expression")
    return node


# -- expansion -----------------------------------------------------------------

def expand(node: ExprNode, var_u: str, var_v: str) -> BivarPoly:
    """Multiply the tree out to a flat polynomial in the two given variables.

    The result equals the expression as an exact polynomial identity; no
    rescaling happens here.  Exponents above the degree limit are rejected
    outright unless the base collapses to 0 or ±1.
    """
    if isinstance(node, IntLit):
        return BivarPoly.constant(node.value, var_u, var_v)
    if isinstance(node, Name):
        return BivarPoly.variable(node.name, var_u, var_v)
    if isinstance(node, Sum):
        return expand(node.left, var_u, var_v) + expand(node.right, var_u, var_v)
    if isinstance(node, Difference):
        return expand(node.left, var_u, var_v) - expand(node.right, var_u, var_v)
    if isinstance(node, Product):
        return expand(node.left, var_u, var_v) * expand(node.right, var_u, var_v)
    if isinstance(node, Negation):
        return -expand(node.operand, var_u, var_v)
    if isinstance(node, Power):
        base = expand(node.base, var_u, var_v)
        if node.exponent > MAX_TOTAL_DEGREE:
            small = base.is_zero or (list(base.terms.keys()) == [(0, 0)]
                                     and abs(base.coefficient((0, 0))) == 1)
            if not small:
                raise DegreeLimitExceeded(
                    f"exponent {node.exponent} exceeds the limit {MAX_TOTAL_DEGREE}")
        return base ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def variables_in(node: ExprNode) -> list[str]:
    """Variable names in first-appearance order."""
    seen: list[str] = []

    def walk(n: ExprNode):
        if isinstance(n, Name):
            if n.name not in seen:
                seen.append(n.name)
        elif isinstance(n, (Sum, Difference, Product)):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, Power):
            walk(n.base)
        elif isinstance(n, Negation):
            walk(n.operand)

    walk(node)
    return seen


# -- formatting ----------------------------------------------------------------

def format_poly(p: BivarPoly) -> str:
    """Render in descending graded-lex order; re-parsing the result expands
    back to ``p`` exactly."""
    if p.is_zero:
        return "0"
    var_u, var_v = p.vars
    parts = []
    for index, ((i, j), c) in enumerate(p.sorted_terms()):
        if index == 0:
            sign = "-" if c < 0 else ""
        else:
            sign = "-" if c < 0 else "+"
        pieces = []
        if i:
            pieces.append(var_u if i == 1 else f"{var_u}^{i}")
        if j:
            # a bare name would munch the next one ("xz"); keep them apart
            if i == 1:
                pieces.append(" ")
            pieces.append(var_v if j == 1 else f"{var_v}^{j}")
        magnitude = abs(c)
        if not pieces:
            body = str(magnitude)
        elif magnitude == 1:
            body = "".join(pieces)
        else:
            body = str(magnitude) + "".join(pieces)
        parts.append(sign + body)
    return "".join(parts)


def poly_from_text(text: str, var_u: str, var_v: str) -> BivarPoly:
    """Parse and expand in one step."""
    return expand(parse(text), var_u, var_v)
