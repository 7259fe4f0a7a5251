"""The ``.ham`` text format.

Example::

    # three spins, XOR into C
    spins A B C
    sqrt(2)*pi/4  zA yB
    sqrt(2)*pi/4  zB yC
    -pi/4         yB xC

Each term line is a constant coefficient expression followed by one or more
factors ``<x|y|z><site>``. ``#`` starts a comment. The optional ``spins``
header must precede every term; without it the sites are ``A B C``.

Coefficient grammar (LL(1), left associative, no exponent operator)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-'? atom
    atom  := number | 'pi' | 'sqrt' '(' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .pauli import Hamiltonian, PauliLabel, PauliTerm, SpinSystem

DEFAULT_SITES = ("A", "B", "C")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # number, name, op, end
    text: str
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[Token], line: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek
        return ParseError(message, self.line, tok.column)

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.peek.text != text:
            found = self.peek.text or "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def expr(self) -> float:
        value = self.term()
        while self.peek.kind == "op" and self.peek.text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.unary()
        while self.peek.kind == "op" and self.peek.text in "*/":
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value *= rhs
            elif rhs == 0.0:
                raise self.error("division by zero", op)
            else:
                value /= rhs
        return value

    def unary(self) -> float:
        if self.peek.text == "-" and self.peek.kind == "op":
            self.take()
            return -self.atom()
        return self.atom()

    def atom(self) -> float:
        tok = self.peek
        if tok.kind == "number":
            self.take()
            return float(tok.text)
        if tok.kind == "name" and tok.text == "pi":
            self.take()
            return math.pi
        if tok.kind == "name" and tok.text == "sqrt":
            self.take()
            self.expect("(")
            arg_tok = self.peek
            arg = self.expr()
            self.expect(")")
            if arg < 0:
                raise self.error("sqrt of a negative number", arg_tok)
            return math.sqrt(arg)
        if tok.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        found = tok.text or "end of line"
        raise self.error(f"expected a number, 'pi', 'sqrt' or '(', found {found!r}")


def parse_expression(text: str, line: int = 1) -> float:
    p = _ExprParser(tokenize(text, line), line)
    value = p.expr()
    if p.peek.kind != "end":
        raise p.error(f"unexpected {p.peek.text!r}")
    return value


@dataclass(frozen=True)
class HamFileDocument:
    system: SpinSystem
    terms: tuple[PauliTerm, ...]
    positions: tuple[int, ...] = field(default=(), compare=False)

    @property
    def hamiltonian(self) -> Hamiltonian:
        return Hamiltonian(self.system, self.terms)

    @classmethod
    def from_hamiltonian(cls, h: Hamiltonian) -> "HamFileDocument":
        return cls(h.system, h.terms)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_file(text: str) -> HamFileDocument:
    header: tuple[str, ...] | None = None
    raw_terms = []  # (line, coefficient, [(name, label, column)])
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(_strip_comment(raw), lineno)
        if tokens[0].kind == "end":
            continue
        if tokens[0].kind == "name" and tokens[0].text == "spins":
            if header is not None:
                raise ParseError("duplicate 'spins' header", lineno, tokens[0].column)
            if raw_terms:
                raise ParseError("'spins' header must precede all terms", lineno, tokens[0].column)
            names = []
            for tok in tokens[1:-1]:
                if tok.kind != "name":
                    raise ParseError(f"expected a site name, found {tok.text!r}", lineno, tok.column)
                if tok.text in names:
                    raise ParseError(f"duplicate site name {tok.text!r}", lineno, tok.column)
                names.append(tok.text)
            if not names:
                raise ParseError("'spins' header needs at least one site name", lineno, tokens[-1].column)
            header = tuple(names)
            continue
        p = _ExprParser(tokens, lineno)
        coefficient = p.expr()
        factors = []
        while p.peek.kind != "end":
            tok = p.take()
            if tok.kind != "name" or len(tok.text) < 2 or tok.text[0] not in "xyz":
                raise ParseError(f"expected a factor like 'zA', found {tok.text!r}", lineno, tok.column)
            factors.append((tok.text[1:], PauliLabel(tok.text[0].upper()), tok.column))
        if not factors:
            raise ParseError("term has no Pauli factors", lineno, p.peek.column)
        raw_terms.append((lineno, coefficient, factors))

    system = SpinSystem(header if header is not None else DEFAULT_SITES)
    terms, positions = [], []
    for lineno, coefficient, factors in raw_terms:
        seen = set()
        resolved = []
        for name, label, column in factors:
            if name not in system.site_names:
                raise ParseError(f"unknown site {name!r}", lineno, column)
            if name in seen:
                raise ParseError(f"site {name!r} appears twice in one term", lineno, column)
            seen.add(name)
            resolved.append((system.index(name), label))
        terms.append(PauliTerm(coefficient, resolved))
        positions.append(lineno)
    return HamFileDocument(system, tuple(terms), tuple(positions))


def write_file(doc: HamFileDocument | Hamiltonian) -> str:
    """Canonical text: header, then one term per line with ``repr`` coefficients."""
    names = doc.system.site_names
    lines = ["spins " + " ".join(names)]
    for t in doc.terms:
        factors = " ".join(lab.value.lower() + names[s] for s, lab in t.factors)
        lines.append(f"{t.coefficient!r} {factors}")
    return "\n".join(lines) + "\n"
