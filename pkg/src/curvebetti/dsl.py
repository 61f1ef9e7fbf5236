"""A small expression language over the catalog.

Grammar (whitespace between tokens is ignored):

    expr    := term { ("+" | "-") term }
    term    := factor { "*" factor }
    factor  := space | "(" expr ")"
              | "blowup" "(" expr "," expr "," INT ")"
              | "blowdown" "(" expr "," expr "," expr ")"
    space   := "P" "(" INT ")"
              | "WP" "(" INT { "," INT } ")"
              | gr
              | "F1" "(" gr ")" | "F2" "(" gr ")" | "Fx" "(" gr ")"
              | "MbarP1" "(" INT ")"
              | ("M" | "S" | "H") "(" gr "," INT ")"
    gr      := "Gr" "(" SINT "," SINT ")"

INT is a nonnegative decimal integer; SINT additionally permits a
leading "-", so that out-of-range Grassmannians can be written down and
evaluate to the empty space.  "*" binds tighter than "+" and "-", and
both levels associate to the left.

parse produces a small AST, eval_expr evaluates it to a PoincarePoly
(moduli leaves use the closed route), and to_text prints an AST back in
canonical form, round-tripping through parse.
"""

from __future__ import annotations

import dataclasses
import re

from . import pipelines
from .catalog import (
    DimensionMismatch,
    InvalidParameters,
    NegativeBetti,
    PoincarePoly,
    fano_lines,
    fano_planes,
    grassmannian,
    lines_through_point,
    projective,
    stable_maps_p1,
    weighted_projective,
)
from .polyring import DivisionByZero, NonExactDivision
from .surgery import blowdown_apply, blowup_apply


class ParseError(ValueError):
    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(
            f"at offset {offset}: expected {expected}, found {found}"
        )


@dataclasses.dataclass(frozen=True)
class Proj:
    m: int


@dataclasses.dataclass(frozen=True)
class WProj:
    weights: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class Gr:
    k: int
    n: int


@dataclasses.dataclass(frozen=True)
class FanoLines:
    base: Gr


@dataclasses.dataclass(frozen=True)
class FanoPlanes:
    base: Gr


@dataclasses.dataclass(frozen=True)
class PointedLines:
    base: Gr


@dataclasses.dataclass(frozen=True)
class MbarP1:
    d: int


@dataclasses.dataclass(frozen=True)
class Moduli:
    compactification: str
    base: Gr
    d: int


@dataclasses.dataclass(frozen=True)
class Product:
    left: SpaceExpr
    right: SpaceExpr


@dataclasses.dataclass(frozen=True)
class Sum:
    left: SpaceExpr
    right: SpaceExpr


@dataclasses.dataclass(frozen=True)
class Diff:
    left: SpaceExpr
    right: SpaceExpr


@dataclasses.dataclass(frozen=True)
class Blowup:
    space: SpaceExpr
    center: SpaceExpr
    codim: int


@dataclasses.dataclass(frozen=True)
class Blowdown:
    space: SpaceExpr
    center: SpaceExpr
    fiber: SpaceExpr


SpaceExpr = (
    Proj
    | WProj
    | Gr
    | FanoLines
    | FanoPlanes
    | PointedLines
    | MbarP1
    | Moduli
    | Product
    | Sum
    | Diff
    | Blowup
    | Blowdown
)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


@dataclasses.dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "sym", "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(_Token("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(_Token("name", m.group(2), start))
        else:
            sym = m.group(3)
            if sym not in "()+-*,":
                raise ParseError(start, "a token", repr(sym))
            out.append(_Token("sym", sym, start))
        pos = m.end()
    out.append(_Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str) -> ParseError:
        tok = self.peek()
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        return ParseError(tok.offset, expected, found)

    def expect_sym(self, sym: str) -> None:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == sym:
            self.advance()
            return
        raise self.fail(f"'{sym}'")

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return int(tok.text)
        raise self.fail("an integer")

    def expect_signed_int(self) -> int:
        # Negative values are legal only where this is called: inside Gr.
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "-":
            self.advance()
            return -self.expect_int()
        return self.expect_int()

    def parse_expr(self) -> SpaceExpr:
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "+-":
                self.advance()
                right = self.parse_term()
                node = Sum(node, right) if tok.text == "+" else Diff(node, right)
            else:
                return node

    def parse_term(self) -> SpaceExpr:
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text == "*":
                self.advance()
                node = Product(node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> SpaceExpr:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_sym(")")
            return node
        if tok.kind == "name" and tok.text == "blowup":
            self.advance()
            self.expect_sym("(")
            space = self.parse_expr()
            self.expect_sym(",")
            center = self.parse_expr()
            self.expect_sym(",")
            codim = self.expect_int()
            self.expect_sym(")")
            return Blowup(space, center, codim)
        if tok.kind == "name" and tok.text == "blowdown":
            self.advance()
            self.expect_sym("(")
            space = self.parse_expr()
            self.expect_sym(",")
            center = self.parse_expr()
            self.expect_sym(",")
            fiber = self.parse_expr()
            self.expect_sym(")")
            return Blowdown(space, center, fiber)
        return self.parse_space()

    def parse_gr(self) -> Gr:
        tok = self.peek()
        if not (tok.kind == "name" and tok.text == "Gr"):
            raise self.fail("'Gr'")
        self.advance()
        self.expect_sym("(")
        k = self.expect_signed_int()
        self.expect_sym(",")
        n = self.expect_signed_int()
        self.expect_sym(")")
        return Gr(k, n)

    def parse_space(self) -> SpaceExpr:
        tok = self.peek()
        if tok.kind != "name":
            raise self.fail("a space")
        name = tok.text
        if name == "Gr":
            return self.parse_gr()
        if name == "P":
            self.advance()
            self.expect_sym("(")
            m = self.expect_int()
            self.expect_sym(")")
            return Proj(m)
        if name == "WP":
            self.advance()
            self.expect_sym("(")
            weights = [self.expect_int()]
            while self.peek().kind == "sym" and self.peek().text == ",":
                self.advance()
                weights.append(self.expect_int())
            self.expect_sym(")")
            return WProj(tuple(weights))
        if name in ("F1", "F2", "Fx"):
            self.advance()
            self.expect_sym("(")
            base = self.parse_gr()
            self.expect_sym(")")
            cls = {"F1": FanoLines, "F2": FanoPlanes, "Fx": PointedLines}[name]
            return cls(base)
        if name == "MbarP1":
            self.advance()
            self.expect_sym("(")
            d = self.expect_int()
            self.expect_sym(")")
            return MbarP1(d)
        if name in ("M", "S", "H"):
            self.advance()
            self.expect_sym("(")
            base = self.parse_gr()
            self.expect_sym(",")
            d = self.expect_int()
            self.expect_sym(")")
            return Moduli(name, base, d)
        raise self.fail("a space")


def parse(text: str) -> SpaceExpr:
    parser = _Parser(text)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise parser.fail("end of input")
    return node


def to_text(expr: SpaceExpr) -> str:
    """Canonical printing; parse(to_text(e)) reproduces e."""

    def wrap_factor(e: SpaceExpr) -> str:
        # A sum or difference under a product needs parentheses.
        s = to_text(e)
        return f"({s})" if isinstance(e, (Sum, Diff)) else s

    if isinstance(expr, Proj):
        return f"P({expr.m})"
    if isinstance(expr, WProj):
        return f"WP({','.join(str(w) for w in expr.weights)})"
    if isinstance(expr, Gr):
        return f"Gr({expr.k},{expr.n})"
    if isinstance(expr, FanoLines):
        return f"F1({to_text(expr.base)})"
    if isinstance(expr, FanoPlanes):
        return f"F2({to_text(expr.base)})"
    if isinstance(expr, PointedLines):
        return f"Fx({to_text(expr.base)})"
    if isinstance(expr, MbarP1):
        return f"MbarP1({expr.d})"
    if isinstance(expr, Moduli):
        return f"{expr.compactification}({to_text(expr.base)},{expr.d})"
    if isinstance(expr, Product):
        # The right side also needs parentheses when it is itself a
        # product, since a bare chain reparses left-associated.
        right = to_text(expr.right)
        if isinstance(expr.right, (Sum, Diff, Product)):
            right = f"({right})"
        return f"{wrap_factor(expr.left)} * {right}"
    if isinstance(expr, Sum):
        return f"{to_text(expr.left)} + {wrap_factor(expr.right)}"
    if isinstance(expr, Diff):
        return f"{to_text(expr.left)} - {wrap_factor(expr.right)}"
    if isinstance(expr, Blowup):
        return (
            f"blowup({to_text(expr.space)}, {to_text(expr.center)}, {expr.codim})"
        )
    if isinstance(expr, Blowdown):
        return (
            f"blowdown({to_text(expr.space)}, {to_text(expr.center)}, "
            f"{to_text(expr.fiber)})"
        )
    raise TypeError(f"not a space expression: {expr!r}")


_EVAL_ERRORS = (
    InvalidParameters,
    DimensionMismatch,
    NegativeBetti,
    NonExactDivision,
    DivisionByZero,
)


def eval_expr(expr: SpaceExpr) -> PoincarePoly:
    """Evaluate an AST; failures carry the path of the failing node."""
    return _eval(expr, "expr")


def _eval(expr: SpaceExpr, path: str) -> PoincarePoly:
    try:
        if isinstance(expr, Proj):
            return projective(expr.m)
        if isinstance(expr, WProj):
            return weighted_projective(expr.weights)
        if isinstance(expr, Gr):
            return grassmannian(expr.k, expr.n)
        if isinstance(expr, FanoLines):
            return fano_lines(expr.base.k, expr.base.n)
        if isinstance(expr, FanoPlanes):
            return fano_planes(expr.base.k, expr.base.n)
        if isinstance(expr, PointedLines):
            return lines_through_point(expr.base.k, expr.base.n)
        if isinstance(expr, MbarP1):
            return stable_maps_p1(expr.d)
        if isinstance(expr, Moduli):
            key = pipelines.ModuliKey(
                expr.base.k, expr.base.n, expr.d, expr.compactification
            )
            return pipelines.space_poly(key, "closed")
    except _EVAL_ERRORS as e:
        raise type(e)(f"{e} [at {path}]") from e

    if isinstance(expr, Product):
        left = _eval(expr.left, path + ".left")
        right = _eval(expr.right, path + ".right")
        return _wrap(lambda: left * right, path)
    if isinstance(expr, Sum):
        left = _eval(expr.left, path + ".left")
        right = _eval(expr.right, path + ".right")
        return _wrap(lambda: left + right, path)
    if isinstance(expr, Diff):
        left = _eval(expr.left, path + ".left")
        right = _eval(expr.right, path + ".right")
        return _wrap(
            lambda: PoincarePoly.from_poly(left.poly - right.poly, what=path), path
        )
    if isinstance(expr, Blowup):
        space = _eval(expr.space, path + ".space")
        center = _eval(expr.center, path + ".center")
        return _wrap(lambda: blowup_apply(space, center, expr.codim), path)
    if isinstance(expr, Blowdown):
        space = _eval(expr.space, path + ".space")
        center = _eval(expr.center, path + ".center")
        fiber = _eval(expr.fiber, path + ".fiber")
        return _wrap(lambda: blowdown_apply(space, center, fiber), path)
    raise TypeError(f"not a space expression: {expr!r}")


def _wrap(thunk, path: str) -> PoincarePoly:
    try:
        return thunk()
    except _EVAL_ERRORS as e:
        if "[at " in str(e):
            raise
        raise type(e)(f"{e} [at {path}]") from e
