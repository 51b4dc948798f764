"""Exact arithmetic in the ordered field Q(w) of rational functions in w.

``w`` is a formal positive infinite element, so ``1/w`` is a positive
infinitesimal.  Elements are kept in a unique normalized form: numerator
and denominator are coprime integer polynomials, the integer content of the
pair is 1 and the leading coefficient of the denominator is positive.
Equality is therefore structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from numbers import Rational
from typing import Sequence, Tuple, Union

__all__ = [
    "SurrealRF",
    "ParseError",
    "InfiniteValue",
    "W",
    "rf",
    "rf_parse",
    "rf_format",
    "rf_sign",
    "rf_cmp",
    "rf_standard_part",
    "rf_is_infinitesimal",
]

Poly = Tuple[int, ...]  # coefficients, constant term first; () is zero


class ParseError(ValueError):
    """Malformed literal; ``pos`` is the offending character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class InfiniteValue(ArithmeticError):
    pass


# -- integer polynomial helpers ---------------------------------------------


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pscale(p: Poly, k: int) -> Poly:
    return _trim(c * k for c in p)


def _content(p: Poly) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _primitive(p: Poly) -> Poly:
    c = _content(p)
    if c == 0:
        return ()
    p = tuple(x // c for x in p)
    return p if p[-1] > 0 else _pneg(p)


def _prem(p: Poly, q: Poly) -> Poly:
    """Pseudo-remainder of p by q: lc(q)^k * p mod q, computed over Z."""
    r = list(p)
    lq = q[-1]
    dq = len(q) - 1
    while len(r) - 1 >= dq and r:
        lr = r[-1]
        shift = len(r) - 1 - dq
        r = [c * lq for c in r]
        for i, c in enumerate(q):
            r[i + shift] -= lr * c
        r = list(_trim(r))
    return tuple(r)


def _pgcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    p, q = _primitive(p), _primitive(q)
    if len(p) < len(q):
        p, q = q, p
    while q:
        r = _prem(p, q)
        p, q = q, _primitive(r)
    return p


def _pdiv_exact(p: Poly, q: Poly) -> Poly:
    """Quotient p/q over Q, which must be exact and integral."""
    r = [Fraction(c) for c in p]
    dq = len(q) - 1
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    for shift in range(len(p) - 1 - dq, -1, -1):
        c = r[shift + dq] / q[-1]
        quo[shift] = c
        if c:
            for i, qc in enumerate(q):
                r[i + shift] -= c * qc
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    assert all(c.denominator == 1 for c in quo)
    return _trim(int(c) for c in quo)


def _normalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
    c = gcd(_content(num), _content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


# -- field elements ---------------------------------------------------------

Number = Union["SurrealRF", int, Fraction]


@total_ordering
class SurrealRF:
    """An element of Q(w), immutable and hashable.

    >>> one = SurrealRF(1)
    >>> one + 1 / W
    SurrealRF('(w + 1)/(w)')
    >>> (1 / W) * W == 1
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, Rational, "SurrealRF"] = 0):
        if isinstance(value, SurrealRF):
            num, den = value.num, value.den
        elif isinstance(value, int):
            num, den = _trim((value,)), (1,)
        elif isinstance(value, Rational):
            num, den = _trim((int(value.numerator),)), (int(value.denominator),)
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to SurrealRF")
        self.num: Poly = num
        self.den: Poly = den
        self._hash = None

    @classmethod
    def from_polys(cls, num: Sequence[int], den: Sequence[int] = (1,)) -> "SurrealRF":
        """Build ``num(w)/den(w)`` from coefficient lists, constant term first."""
        n, d = _normalize(_trim(num), _trim(den))
        return cls._raw(n, d)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "SurrealRF":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # structure

    @property
    def numerator_degree(self) -> int:
        return len(self.num) - 1

    @property
    def denominator_degree(self) -> int:
        return len(self.den) - 1

    def is_rational(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    # arithmetic

    @staticmethod
    def _coerce(other) -> "SurrealRF":
        if isinstance(other, SurrealRF):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return SurrealRF(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den == (1,):
            return SurrealRF._raw(_padd(self.num, o.num), (1,))
        if len(self.num) <= 1 and len(o.num) <= 1 and len(self.den) == len(o.den) == 1:
            return SurrealRF(self.as_fraction() + o.as_fraction())
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return SurrealRF.from_polys(num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return SurrealRF._raw(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_rational() and o.is_rational():
            return SurrealRF(self.as_fraction() * o.as_fraction())
        return SurrealRF.from_polys(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(w)")
        if self.is_rational() and o.is_rational():
            return SurrealRF(self.as_fraction() / o.as_fraction())
        return SurrealRF.from_polys(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return SurrealRF(1) / self ** (-k)
        out = SurrealRF(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # order

    def sign(self) -> int:
        # w exceeds every rational, so the leading coefficient decides
        if not self.num:
            return 0
        return 1 if self.num[-1] > 0 else -1

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.as_fraction())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # analysis

    def is_finite(self) -> bool:
        return len(self.num) <= len(self.den)

    def is_infinitesimal(self) -> bool:
        return len(self.num) < len(self.den)

    def standard_part(self) -> Fraction:
        if not self.is_finite():
            raise InfiniteValue(f"{self} is infinite and has no standard part")
        if len(self.num) < len(self.den):
            return Fraction(0)
        return Fraction(self.num[-1], self.den[-1])

    # text

    def __str__(self):
        return rf_format(self)

    def __repr__(self):
        return f"SurrealRF({rf_format(self)!r})"

    def __reduce__(self):
        return (SurrealRF.from_polys, (self.num, self.den))


W = SurrealRF.from_polys((0, 1))


def rf(value) -> SurrealRF:
    """Coerce an int, Fraction, literal string or SurrealRF to SurrealRF."""
    if isinstance(value, SurrealRF):
        return value
    if isinstance(value, str):
        return rf_parse(value)
    return SurrealRF(value)


def rf_sign(x: SurrealRF) -> int:
    """-1, 0 or +1."""
    return rf(x).sign()


def rf_cmp(x, y) -> int:
    return (rf(x) - rf(y)).sign()


def rf_standard_part(x) -> Fraction:
    return rf(x).standard_part()


def rf_is_infinitesimal(x) -> bool:
    return rf(x).is_infinitesimal()


# -- literals ---------------------------------------------------------------


def _format_poly(p: Poly) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = "*".join(["w"] * k)
            if mag != 1:
                body = f"{mag}*{body}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


def rf_format(x: SurrealRF) -> str:
    """Canonical text: a bare rational, or ``(num)/(den)`` in descending powers of w."""
    x = rf(x)
    if x.is_rational():
        return str(x.as_fraction())
    return f"({_format_poly(x.num)})/({_format_poly(x.den)})"


class _FieldParser:
    # fexpr := fterm (('+'|'-') fterm)*
    # fterm := ffac (('*'|'/') ffac)*
    # ffac  := '-' ffac | integer | integer '/' integer | 'w' | '(' fexpr ')'

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> SurrealRF:
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> SurrealRF:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> SurrealRF:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            start = self.pos
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    self.pos = start
                    self.error("division by zero")
                value = value / rhs
        return value

    def factor(self) -> SurrealRF:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch == "w":
            self.pos += 1
            return W
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return SurrealRF(int(self.text[start : self.pos]))
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def rf_parse(text: str) -> SurrealRF:
    """Parse a field literal such as ``"1 + 1/w"`` or ``"(2*w+3)/(4*(w+1))"``."""
    return _FieldParser(text).parse()
