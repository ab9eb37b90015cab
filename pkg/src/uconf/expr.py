"""Textual expression language for fibre elements.

Grammar (LL(1); "." binds tighter than "#"):

    element := term { "+" term }
    term    := [ coeff "*" ] cfactor
    cfactor := hfactor { "#" hfactor }
    hfactor := atom { "." atom }
    atom    := gen | unit | zero | "(" element ")"
    gen     := "e[" ident "," nat "]"
    unit    := "1[" [ ident { "," ident } ] "]"
    zero    := "0@[" [ ident { "," ident } ] "]"
    coeff   := ["-"] nat [ "/" nat ]

``parse_element`` elaborates the tree against a base space and raises
positioned errors: syntax errors name the expected tokens, unknown
points / out-of-range indices point at the offending atom, and illegal
products point at the operator that tried them.  Positions are byte
offsets into the source text.  ``render`` writes the canonical form
that round-trips through ``parse_element`` byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configspace import BaseSpace, Configuration
from .errors import (
    BasisOutOfRange,
    ConfigMismatch,
    ExprSyntaxError,
    OverlappingConfigurations,
    UnknownPoint,
)
from .fibre_algebra import (
    FibreElement,
    cauchy_mul,
    embed_generator,
    hadamard_mul,
    unit_hadamard,
    zero,
)

_SYMBOLS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "#": "HASH",
    ".": "DOT",
    "(": "LPAREN",
    ")": "RPAREN",
    "]": "RBRACKET",
    ",": "COMMA",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if src.startswith("0@[", pos):
            out.append(Token("ZERO_OPEN", "0@[", pos))
            pos += 3
            continue
        if src.startswith("1[", pos):
            out.append(Token("UNIT_OPEN", "1[", pos))
            pos += 2
            continue
        if ch.isdigit():
            end = pos
            while end < n and src[end].isdigit():
                end += 1
            out.append(Token("NUMBER", src[pos:end], pos))
            pos = end
            continue
        if ch.isalpha() or ch == "_":
            end = pos
            while end < n and (src[end].isalnum() or src[end] == "_"):
                end += 1
            name = src[pos:end]
            if name == "e" and end < n and src[end] == "[":
                out.append(Token("GEN_OPEN", "e[", pos))
                pos = end + 1
                continue
            out.append(Token("IDENT", name, pos))
            pos = end
            continue
        if ch in _SYMBOLS:
            out.append(Token(_SYMBOLS[ch], ch, pos))
            pos += 1
            continue
        raise ExprSyntaxError(
            "unexpected character %r at offset %d" % (ch, pos), pos
        )
    out.append(Token("EOF", "", n))
    return out


@dataclass
class Gen:
    point: str
    index: int
    point_pos: int
    index_pos: int


@dataclass
class UnitAtom:
    labels: tuple[tuple[str, int], ...]  # (label, position)
    pos: int


@dataclass
class ZeroAtom:
    labels: tuple[tuple[str, int], ...]
    pos: int


@dataclass
class ScalarMul:
    scalar: Fraction
    node: object


@dataclass
class HadamardProd:
    parts: list
    op_positions: list[int]


@dataclass
class CauchyProd:
    parts: list
    op_positions: list[int]


@dataclass
class Sum:
    parts: list
    op_positions: list[int]


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.index = 0

    def peek(self, ahead=0) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(
                "expected %s at offset %d, found %r" % (kind, tok.pos, tok.text),
                tok.pos,
                expected=(kind,),
            )
        return self.advance()

    def parse(self):
        node = self.element()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ExprSyntaxError(
                "trailing input at offset %d: %r" % (tok.pos, tok.text),
                tok.pos,
                expected=("EOF",),
            )
        return node

    def element(self):
        parts = [self.term()]
        ops = []
        while self.peek().kind == "PLUS":
            ops.append(self.advance().pos)
            parts.append(self.term())
        if len(parts) == 1:
            return parts[0]
        return Sum(parts, ops)

    def term(self):
        tok = self.peek()
        if tok.kind == "MINUS" or (
            tok.kind == "NUMBER" and self.peek(1).kind in ("STAR", "SLASH")
        ):
            coeff = self.coeff()
            self.expect("STAR")
            return ScalarMul(coeff, self.cfactor())
        return self.cfactor()

    def coeff(self) -> Fraction:
        sign = 1
        if self.peek().kind == "MINUS":
            self.advance()
            sign = -1
        num = int(self.expect("NUMBER").text)
        den = 1
        if self.peek().kind == "SLASH":
            self.advance()
            den_tok = self.expect("NUMBER")
            den = int(den_tok.text)
            if den == 0:
                raise ExprSyntaxError(
                    "zero denominator at offset %d" % den_tok.pos, den_tok.pos
                )
        return Fraction(sign * num, den)

    def cfactor(self):
        parts = [self.hfactor()]
        ops = []
        while self.peek().kind == "HASH":
            ops.append(self.advance().pos)
            parts.append(self.hfactor())
        if len(parts) == 1:
            return parts[0]
        return CauchyProd(parts, ops)

    def hfactor(self):
        parts = [self.atom()]
        ops = []
        while self.peek().kind == "DOT":
            ops.append(self.advance().pos)
            parts.append(self.atom())
        if len(parts) == 1:
            return parts[0]
        return HadamardProd(parts, ops)

    def atom(self):
        tok = self.peek()
        if tok.kind == "GEN_OPEN":
            self.advance()
            ident = self.expect("IDENT")
            self.expect("COMMA")
            nat = self.expect("NUMBER")
            self.expect("RBRACKET")
            return Gen(ident.text, int(nat.text), ident.pos, nat.pos)
        if tok.kind == "UNIT_OPEN":
            self.advance()
            return UnitAtom(self.label_list(), tok.pos)
        if tok.kind == "ZERO_OPEN":
            self.advance()
            return ZeroAtom(self.label_list(), tok.pos)
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.element()
            self.expect("RPAREN")
            return inner
        raise ExprSyntaxError(
            "expected an atom at offset %d, found %r" % (tok.pos, tok.text),
            tok.pos,
            expected=("GEN_OPEN", "UNIT_OPEN", "ZERO_OPEN", "LPAREN"),
        )

    def label_list(self) -> tuple[tuple[str, int], ...]:
        labels = []
        if self.peek().kind == "IDENT":
            tok = self.advance()
            labels.append((tok.text, tok.pos))
            while self.peek().kind == "COMMA":
                self.advance()
                tok = self.expect("IDENT")
                labels.append((tok.text, tok.pos))
        self.expect("RBRACKET")
        return tuple(labels)


def parse_ast(src: str):
    return _Parser(src).parse()


def parse_element(src: str, base: BaseSpace) -> FibreElement:
    return _eval(parse_ast(src), base)


def _configuration_of(labels, base) -> Configuration:
    seen = {}
    for label, pos in labels:
        if label not in base.rank:
            raise UnknownPoint(
                "unknown point %r at offset %d" % (label, pos), pos
            )
        if label in seen:
            raise OverlappingConfigurations(
                "point %r repeated at offset %d" % (label, pos), pos
            )
        seen[label] = pos
    return Configuration(tuple(sorted(seen)))


def _eval(node, base: BaseSpace) -> FibreElement:
    if isinstance(node, Gen):
        if node.point not in base.rank:
            raise UnknownPoint(
                "unknown point %r at offset %d" % (node.point, node.point_pos),
                node.point_pos,
            )
        try:
            return embed_generator(base, node.point, node.index)
        except BasisOutOfRange as err:
            raise BasisOutOfRange(str(err), node.index_pos) from None
    if isinstance(node, UnitAtom):
        return unit_hadamard(_configuration_of(node.labels, base))
    if isinstance(node, ZeroAtom):
        return zero(_configuration_of(node.labels, base))
    if isinstance(node, ScalarMul):
        return node.scalar * _eval(node.node, base)
    if isinstance(node, HadamardProd):
        return _fold(node, base, hadamard_mul, ConfigMismatch)
    if isinstance(node, CauchyProd):
        return _fold(node, base, cauchy_mul, OverlappingConfigurations)
    if isinstance(node, Sum):
        return _fold(node, base, lambda a, b: a + b, ConfigMismatch)
    raise TypeError("not an expression node: %r" % (node,))


def _fold(node, base, op, err_class):
    acc = _eval(node.parts[0], base)
    for part, pos in zip(node.parts[1:], node.op_positions):
        nxt = _eval(part, base)
        try:
            acc = op(acc, nxt)
        except err_class as err:
            if err.position is None:
                raise err_class(
                    "%s (operator at offset %d)" % (err, pos), pos
                ) from None
            raise
    return acc


def render(elem: FibreElement) -> str:
    """Canonical text; parse_element(render(e), base) == e, byte-stable."""
    if not elem.terms:
        return "0@[%s]" % ",".join(elem.config.members)
    parts = []
    for mono, coeff in elem.terms:
        body = " # ".join(_render_factor(f) for f in mono.factors)
        if not body:
            body = "1[]"
        parts.append(body if coeff == 1 else "%s * %s" % (coeff, body))
    return " + ".join(parts)


def _render_factor(factor) -> str:
    if not factor.exponents:
        return "1[%s]" % factor.point
    gens = []
    for index, mult in factor.exponents:
        gens.extend(["e[%s,%d]" % (factor.point, index)] * mult)
    return " . ".join(gens)
