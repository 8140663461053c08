"""Tiny expression grammar for ring elements, e.g. ``s1^2*s2 + 3/2*s3``.

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ('^' INT)?
    primary := INT ['/' INT] | 's' INT | 'sigma' '[' [INT (',' INT)*] ']' | '(' expr ')'

The parser is agnostic of the target ring: a builder supplies ``one()``,
``gen(j)`` and ``sigma(parts)``, and the resulting objects are combined with
their own ``+``, ``*`` and ``**``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|(sigma)|(s)(\d+)|([-+*/^()\[\],]))")


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        num, sigma, s, sidx, op = m.groups()
        if num is not None:
            out.append(("int", num))
        elif sigma:
            out.append(("sigma", sigma))
        elif s:
            out.append(("gen", sidx))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, builder):
        self.tokens = tokens
        self.i = 0
        self.b = builder

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take()
            return base ** int(self.take("int")[1])
        return base

    def primary(self):
        kind, value = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(int(value))
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError("division by zero")
                num /= den
            return num
        if kind == "gen":
            self.take()
            return self.b.gen(int(value))
        if kind == "sigma":
            self.take()
            self.take("op", "[")
            parts = []
            if self.peek() != ("op", "]"):
                parts.append(int(self.take("int")[1]))
                while self.peek() == ("op", ","):
                    self.take()
                    parts.append(int(self.take("int")[1]))
            self.take("op", "]")
            return self.b.sigma(parts)
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {value!r}")


def parse(text: str, builder):
    """Parse ``text`` into an element built by ``builder``."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens, builder)
    result = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input starting at token {p.tokens[p.i][1]!r}")
    if isinstance(result, Fraction):
        result = builder.one() * result
    return result


class SchubertBuilder:
    """``s<j>`` is sigma_j; ``sigma[..]`` is a Schubert class."""

    def __init__(self, ring):
        self.ring = ring

    def one(self):
        return self.ring.one()

    def gen(self, j):
        if not 1 <= j <= self.ring.cols:
            raise ParseError(f"s{j} is not a generator (1..{self.ring.cols})")
        return self.ring.special(j)

    def sigma(self, parts):
        from .schubert import as_partition

        lam = as_partition(parts)
        if not self.ring.contains(lam):
            raise ParseError(f"sigma{list(parts)} does not fit the {self.ring.rows}x{self.ring.cols} box")
        return self.ring.sigma(lam)


class NonlinearBuilder:
    """``s<j>`` is the generator s_j of Ch(k, r, d); Schubert classes are not allowed."""

    def __init__(self, ring):
        self.ring = ring

    def one(self):
        return self.ring.one()

    def gen(self, j):
        if not 1 <= j <= self.ring.ngens:
            raise ParseError(f"s{j} is not a generator (1..{self.ring.ngens})")
        return self.ring.gen(j)

    def sigma(self, parts):
        raise ParseError("Schubert classes are not elements of Ch(k, r, d); use s1, s2, ...")
