"""Textual session files: one algebra, its weights, and its named maps.

Grammar (line oriented, '#' comments):

    field char = <0|p>
    ring vars = a, b, ...
    relation = <expr>
    solve = <var>
    order = lex(v1, ..., vk)
    weights <name>: v = <rational>, ...
    map <name>: v -> <expr>, ...

Expressions admit integers, rationals as n/d, variables, U (in map
images only), ``+ - * ^`` and parentheses; ``^`` takes nonnegative
integer exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebras import RESERVED_NAMES, AlgebraPresentation
from .errors import ParseError, ReservedName, UnknownVariable
from .fields import FieldSpec
from .maps import ExponentialMap
from .polynomials import MonomialOrder, PolyRing, Polynomial, VarList, WeightVector

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<arrow>->)|(?P<op>[-+*^/(),:=]))"
)


@dataclass
class Token:
    kind: str  # num | name | arrow | op | end
    text: str
    line: int
    column: int


def _tokenize(text: str, line_no: int) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise ParseError(
                    f"unexpected character {text[pos:].strip()[0]!r}",
                    line=line_no,
                    column=pos + 1,
                )
            break
        for kind in ("num", "name", "arrow", "op"):
            if match.group(kind) is not None:
                tokens.append(Token(kind, match.group(kind), line_no, match.start(kind) + 1))
                break
        pos = match.end()
    tokens.append(Token("end", "", line_no, len(text) + 1))
    return tokens


class _TokenStream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(
                f"expected {text!r}, found {tok.text or 'end of line'!r}",
                line=tok.line,
                column=tok.column,
            )
        return tok

    def at_end(self) -> bool:
        return self.peek().kind == "end"


def _parse_expression(stream: _TokenStream, ring: PolyRing, allow_u: bool) -> Polynomial:
    def atom() -> Polynomial:
        tok = stream.next()
        if tok.kind == "num":
            value = Fraction(int(tok.text))
            if stream.peek().text == "/":
                stream.next()
                den = stream.next()
                if den.kind != "num":
                    raise ParseError("expected integer denominator", den.line, den.column)
                value = Fraction(int(tok.text), int(den.text))
            return ring.constant(ring.field.coeff(value))
        if tok.kind == "name":
            if tok.text in RESERVED_NAMES and not (allow_u and tok.text == "U"):
                raise ReservedName(
                    f"{tok.text!r} is reserved here", tok.line, tok.column
                )
            if tok.text not in ring.vars.names:
                raise UnknownVariable(
                    f"unknown variable {tok.text!r}", tok.line, tok.column
                )
            return ring.var(tok.text)
        if tok.text == "(":
            inner = expression()
            stream.expect(")")
            return inner
        raise ParseError(
            f"unexpected token {tok.text or 'end of line'!r}", tok.line, tok.column
        )

    def power() -> Polynomial:
        base = atom()
        if stream.peek().text == "^":
            stream.next()
            tok = stream.next()
            if tok.kind != "num":
                raise ParseError("exponent must be a nonnegative integer", tok.line, tok.column)
            return base ** int(tok.text)
        return base

    def factor() -> Polynomial:
        if stream.peek().text == "-":
            stream.next()
            return -factor()
        return power()

    def term() -> Polynomial:
        out = factor()
        while stream.peek().text == "*":
            stream.next()
            out = out * factor()
        return out

    def expression() -> Polynomial:
        out = term()
        while stream.peek().text in ("+", "-"):
            op = stream.next().text
            nxt = term()
            out = out + nxt if op == "+" else out - nxt
        return out

    return expression()


def parse_expression(text: str, ring: PolyRing, allow_u: bool = False) -> Polynomial:
    """Parse one expression over a ring (U permitted only when asked)."""
    stream = _TokenStream(_tokenize(text, 1))
    result = _parse_expression(stream, ring, allow_u)
    if not stream.at_end():
        tok = stream.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return result


def _parse_rational(stream: _TokenStream) -> Fraction:
    sign = 1
    if stream.peek().text == "-":
        stream.next()
        sign = -1
    tok = stream.next()
    if tok.kind != "num":
        raise ParseError("expected a rational number", tok.line, tok.column)
    value = Fraction(int(tok.text))
    if stream.peek().text == "/":
        stream.next()
        den = stream.next()
        if den.kind != "num":
            raise ParseError("expected integer denominator", den.line, den.column)
        value = Fraction(int(tok.text), int(den.text))
    return sign * value


@dataclass
class SessionFile:
    """A parsed session: one algebra, named weight vectors, named maps."""

    field: FieldSpec
    algebra: AlgebraPresentation
    weights: Dict[str, WeightVector] = dataclass_field(default_factory=dict)
    maps: Dict[str, ExponentialMap] = dataclass_field(default_factory=dict)


def parse_session(text: str) -> SessionFile:
    field: Optional[FieldSpec] = None
    var_names: Optional[Tuple[str, ...]] = None
    base_ring: Optional[PolyRing] = None
    u_ring: Optional[PolyRing] = None
    relation: Optional[Polynomial] = None
    solve_var: Optional[str] = None
    order: Optional[MonomialOrder] = None
    weights: Dict[str, WeightVector] = {}
    raw_maps: Dict[str, Dict[str, Polynomial]] = {}

    def require_ring(tok: Token) -> PolyRing:
        if base_ring is None:
            raise ParseError("ring must be declared first", tok.line, tok.column)
        return base_ring

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stream = _TokenStream(_tokenize(line, line_no))
        head = stream.next()
        if head.text == "field":
            stream.expect("char")
            stream.expect("=")
            tok = stream.next()
            if tok.kind != "num":
                raise ParseError("expected a characteristic", tok.line, tok.column)
            field = FieldSpec(int(tok.text))
        elif head.text == "ring":
            if field is None:
                raise ParseError("field must be declared before the ring", head.line)
            stream.expect("vars")
            stream.expect("=")
            names = []
            while True:
                tok = stream.next()
                if tok.kind != "name":
                    raise ParseError("expected a variable name", tok.line, tok.column)
                if tok.text in RESERVED_NAMES:
                    raise ReservedName(
                        f"{tok.text!r} cannot be a ring variable", tok.line, tok.column
                    )
                names.append(tok.text)
                if stream.peek().text != ",":
                    break
                stream.next()
            var_names = tuple(names)
            base_ring = PolyRing(field, VarList.of(var_names))
            u_ring = base_ring.extend(("U",))
        elif head.text == "relation":
            ring = require_ring(head)
            stream.expect("=")
            relation = _parse_expression(stream, ring, allow_u=False)
        elif head.text == "solve":
            require_ring(head)
            stream.expect("=")
            tok = stream.next()
            if tok.kind != "name" or tok.text not in var_names:
                raise UnknownVariable(
                    f"cannot solve for {tok.text!r}", tok.line, tok.column
                )
            solve_var = tok.text
        elif head.text == "order":
            require_ring(head)
            stream.expect("=")
            stream.expect("lex")
            stream.expect("(")
            names = []
            while True:
                tok = stream.next()
                if tok.kind != "name" or tok.text not in var_names:
                    raise UnknownVariable(
                        f"unknown order variable {tok.text!r}", tok.line, tok.column
                    )
                names.append(tok.text)
                if stream.peek().text != ",":
                    break
                stream.next()
            stream.expect(")")
            order = MonomialOrder(tuple(names))
        elif head.text == "weights":
            ring = require_ring(head)
            name_tok = stream.next()
            if name_tok.kind != "name":
                raise ParseError("expected a weights name", name_tok.line, name_tok.column)
            stream.expect(":")
            mapping: Dict[str, Fraction] = {}
            while True:
                var_tok = stream.next()
                if var_tok.kind != "name" or var_tok.text not in var_names:
                    raise UnknownVariable(
                        f"unknown variable {var_tok.text!r}", var_tok.line, var_tok.column
                    )
                stream.expect("=")
                mapping[var_tok.text] = _parse_rational(stream)
                if stream.peek().text != ",":
                    break
                stream.next()
            weights[name_tok.text] = WeightVector.of(mapping)
        elif head.text == "map":
            require_ring(head)
            name_tok = stream.next()
            if name_tok.kind != "name":
                raise ParseError("expected a map name", name_tok.line, name_tok.column)
            stream.expect(":")
            images: Dict[str, Polynomial] = {}
            while True:
                var_tok = stream.next()
                if var_tok.kind != "name" or var_tok.text not in var_names:
                    raise UnknownVariable(
                        f"unknown generator {var_tok.text!r}", var_tok.line, var_tok.column
                    )
                tok = stream.next()
                if tok.kind != "arrow":
                    raise ParseError("expected '->'", tok.line, tok.column)
                images[var_tok.text] = _parse_expression(stream, u_ring, allow_u=True)
                if stream.peek().text != ",":
                    break
                stream.next()
            raw_maps[name_tok.text] = images
        else:
            raise ParseError(
                f"unknown declaration {head.text!r}", head.line, head.column
            )
        if not stream.at_end():
            tok = stream.peek()
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)

    if field is None or base_ring is None:
        raise ParseError("a session needs at least field and ring declarations")

    algebra = AlgebraPresentation(field, var_names, relation, order, solve_var)
    session = SessionFile(field=field, algebra=algebra, weights=weights)
    for name, images in raw_maps.items():
        session.maps[name] = ExponentialMap(algebra, images)
    return session


def _render_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_session(session: SessionFile) -> str:
    """Canonical text for a session; re-parsing yields equal structure."""
    alg = session.algebra
    lines = [
        f"field char = {session.field.characteristic}",
        f"ring vars = {', '.join(alg.var_names)}",
    ]
    if not alg.relation.is_zero():
        lines.append(f"relation = {alg.relation.render(alg.order)}")
    if alg.solve_var is not None:
        lines.append(f"solve = {alg.solve_var}")
    lines.append(f"order = lex({', '.join(alg.order.priority)})")
    for name, w in session.weights.items():
        pairs = ", ".join(
            f"{v} = {_render_fraction(val)}" for v, val in w.weights
        )
        lines.append(f"weights {name}: {pairs}")
    for name, phi in session.maps.items():
        pairs = ", ".join(
            f"{v} -> {phi.images[v].render(alg.order)}" for v in alg.var_names
        )
        lines.append(f"map {name}: {pairs}")
    return "\n".join(lines) + "\n"
