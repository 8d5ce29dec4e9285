"""Text syntax for scalars and algebra elements.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | r | s | rp | q | e<i> | f<i> | w<i> | wp<i> | "(" expr ")"

Division is only allowed by scalar-valued expressions.  Negative exponents are
allowed on scalars and torus letters ``w<i>``, ``wp<i>``.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .freealg import E, F, W, WP, Element, _word_key, word_str
from .scalars import VARS, Scalar, var

_TOKEN = re.compile(r"\s*(?:(\d+)|(wp|[efw])(\d+)|(rp|[rsq])(?![a-z0-9])|(\^)|([-+*/()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


def _tokenize(text: str) -> List[Tuple[str, object, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("gen", (m.group(2), int(m.group(3))), start))
        elif m.group(4):
            tokens.append(("var", m.group(4), start))
        elif m.group(5):
            tokens.append(("^", None, start))
        else:
            tokens.append((m.group(6), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _scalar_of(x: Element) -> Optional[Scalar]:
    if not x.terms:
        return Scalar.const(0)
    if len(x.terms) == 1 and () in x.terms:
        return x.terms[()]
    return None


class _Parser:
    def __init__(self, text: str, rank: Optional[int]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Element:
        x = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[0]!r}", tok[2])
        return x

    def expr(self) -> Element:
        x = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> Element:
        x = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            y = self.unary()
            if op == "*":
                x = x * y
            else:
                c = _scalar_of(y)
                if c is None:
                    raise ParseError("division by a non-scalar element", pos)
                if c.is_zero():
                    raise ParseError("division by zero", pos)
                x = x.scale(c.inverse())
        return x

    def unary(self) -> Element:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Element:
        tok = self.peek()
        base_kind = tok
        x = self.atom()
        if self.peek()[0] != "^":
            return x
        _, _, pos = self.take("^")
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        n = sign * self.take("int")[1]
        if base_kind[0] == "gen" and base_kind[1][0] in ("w", "wp"):
            return self.torus(base_kind[1], n, base_kind[2])
        c = _scalar_of(x)
        if c is not None:
            return Element.scalar(c ** n)
        if n < 0:
            raise ParseError("negative exponent on a non-invertible element", pos)
        return x ** n

    def atom(self) -> Element:
        kind, val, pos = self.take()
        if kind == "int":
            return Element.scalar(val)
        if kind == "var":
            return Element.scalar(var(val))
        if kind == "gen":
            stem, idx = val
            if idx < 1 or (self.rank is not None and idx > self.rank):
                raise ParseError(f"generator {stem}{idx}: index out of range", pos)
            if stem == "e":
                return Element.gen(E(idx))
            if stem == "f":
                return Element.gen(F(idx))
            return self.torus(val, 1, pos)
        if kind == "(":
            x = self.expr()
            self.take(")")
            return x
        raise ParseError(f"unexpected token {kind!r}", pos)

    def torus(self, val, n: int, pos: int) -> Element:
        stem, idx = val
        if self.rank is None:
            raise ParseError("torus letters need a known rank", pos)
        if idx < 1 or idx > self.rank:
            raise ParseError(f"generator {stem}{idx}: index out of range", pos)
        mu = tuple(n if k == idx - 1 else 0 for k in range(self.rank))
        return Element.gen(W(mu) if stem == "w" else WP(mu))


def parse_element(text: str, rank: Optional[int] = None) -> Element:
    """Parse ``text`` into an :class:`Element`; indices are checked against ``rank``."""
    return _Parser(text, rank).parse()


def parse_scalar(text: str) -> Scalar:
    x = parse_element(text, rank=None)
    c = _scalar_of(x)
    if c is None:
        raise ParseError("expression is not a scalar")
    return c


def _coeff_parts(c: Scalar) -> Tuple[bool, str]:
    """Return (negative, text) so that the coefficient prints as ``[-]text``."""
    text = str(c)
    if " " not in text and "/" not in text:
        if text.startswith("-"):
            return True, text[1:]
        return False, text
    return False, f"({text})"


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    pieces = []
    for w in sorted(x.terms, key=_word_key):
        neg, ctext = _coeff_parts(x.terms[w])
        if not w:
            body = ctext
        elif ctext == "1":
            body = word_str(w)
        else:
            body = f"{ctext}*{word_str(w)}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


__all__ = ["ParseError", "parse_element", "parse_scalar", "format_element", "VARS"]
