"""Text form of games.

Grammar::

    gexpr := gterm (('+'|'-') gterm)*
    gterm := '-' gterm | gatom
    gatom := dyadic | '*' | '^' | 'v' | 'mul' '(' integer ',' gexpr ')'
           | '{' glist '|' glist '}' | '(' gexpr ')'
    glist := (gexpr (',' gexpr)*)?
    dyadic := integer | integer '/' power-of-two
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .games import (
    DOWN,
    STAR,
    UP,
    Game,
    NonDyadicNumber,
    _number_value,
    add,
    canonical,
    make_game,
    neg,
    nmul,
    number_to_game,
)
from .surreal import ParseError


def _fmt_number(x: Fraction) -> str:
    return str(x)


def format_game(g: Game, canonical_form: bool = True) -> str:
    """Brace notation with 0, integers, dyadics, ``*``, ``^`` and ``v`` abbreviated.

    With ``canonical_form`` (the default) the canonical form is printed;
    otherwise the stored structure, abbreviating only canonical subgames.
    """
    if canonical_form:
        g = canonical(g)

    def fmt(node: Game) -> str:
        if canonical(node) is node:
            v = _number_value(node)
            if v is not None:
                return _fmt_number(v)
            if node is STAR:
                return "*"
            if node is UP:
                return "^"
            if node is DOWN:
                return "v"
        left = ", ".join(fmt(x) for x in node.left)
        right = ", ".join(fmt(x) for x in node.right)
        return "{" + (left + " " if left else "") + "|" + (" " + right if right else "") + "}"

    return fmt(g)


class _GameParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Game:
        g = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return g

    def expr(self) -> Game:
        g = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            h = self.term()
            g = add(g, h) if op == "+" else add(g, neg(h))
        return g

    def term(self) -> Game:
        if self.peek() == "-":
            self.pos += 1
            return neg(self.term())
        return self.atom()

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start : self.pos])

    def glist(self, closer: str) -> List[Game]:
        out: List[Game] = []
        if self.peek() == closer:
            return out
        out.append(self.expr())
        while self.peek() == ",":
            self.pos += 1
            out.append(self.expr())
        return out

    def atom(self) -> Game:
        ch = self.peek()
        start = self.pos
        if ch.isdigit():
            n = self.integer()
            if self.peek() == "/":
                self.pos += 1
                d = self.integer()
                if d == 0:
                    self.error("zero denominator", start)
                if d & (d - 1):
                    raise NonDyadicNumber(
                        f"{self.text[start:self.pos]!r} at position {start} is not a dyadic rational"
                    )
                return number_to_game(Fraction(n, d))
            return number_to_game(n)
        if ch == "*":
            self.pos += 1
            return STAR
        if ch == "^":
            self.pos += 1
            return UP
        if self.text.startswith("mul", self.pos):
            self.pos += 3
            self.expect("(")
            sign = 1
            if self.peek() == "-":
                self.pos += 1
                sign = -1
            n = sign * self.integer()
            self.expect(",")
            g = self.expr()
            self.expect(")")
            return nmul(n, g)
        if ch == "v":
            self.pos += 1
            return DOWN
        if ch == "{":
            self.pos += 1
            left = self.glist("|")
            self.expect("|")
            right = self.glist("}")
            self.expect("}")
            return make_game(left, right)
        if ch == "(":
            self.pos += 1
            g = self.expr()
            self.expect(")")
            return g
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_game(text: str) -> Game:
    """Parse the game DSL, e.g. ``"{1 | {0 | -2}}"``, ``"^ - 1"``, ``"mul(3, *)"``."""
    return _GameParser(text).parse()
