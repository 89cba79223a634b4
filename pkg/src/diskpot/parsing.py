"""Parser for the canonical text form of potentials.

Grammar (whitespace is free)::

    potential := term (("+" | "-") term)* | "-" term (...)*
    term      := factor ("*" factor)*
    factor    := NUMBER ["/" NUMBER] | NAME ["^" ["-"] INT] | "T" "^" "{" affine "}"
    affine    := ["-"] aterm (("+" | "-") aterm)*
    aterm     := NUMBER ["/" NUMBER] ["*" NAME] | NAME

Names outside ``T^{...}`` are Laurent variables, names inside are action
parameters.  The string ``0`` is the empty potential.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import MalformedSpec, ParseError
from .novikov import NOVIKOV, AffineFunctional, NovikovTerm, Potential, collect, natural_sorted

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^{}]))")


def _tokenize(text: str):
    pos, toks = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos + len(text[pos:]) - len(text[pos:].lstrip()),
                         f"unexpected character {text[pos:].lstrip()[0]!r}")
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _error(text: str, pos: int, msg: str) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(msg, line, col)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, value=None, kind=None):
        k, v, _ = self.toks[self.i]
        if value is not None:
            return v == value and k == "op"
        if kind is not None:
            return k == kind
        return v

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        k, v, pos = self.take()
        if k != "op" or v != value:
            shown = repr(v) if k != "end" else "end of input"
            raise _error(self.text, pos, f"expected {value!r}, found {shown}")

    def fail(self, msg):
        raise _error(self.text, self.toks[self.i][2], msg)

    def number(self) -> Fraction:
        k, v, pos = self.take()
        if k != "num":
            raise _error(self.text, pos, "expected a number")
        value = Fraction(int(v))
        if self.peek("/"):
            self.take()
            k, d, pos = self.take()
            if k != "num":
                raise _error(self.text, pos, "expected a denominator")
            if int(d) == 0:
                raise _error(self.text, pos, "zero denominator")
            value /= int(d)
        return value

    def potential(self) -> list[NovikovTerm]:
        sign = 1
        if self.peek("-"):
            self.take()
            sign = -1
        terms = [self.term(sign)]
        while self.peek("+") or self.peek("-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        if not self.peek(kind="end"):
            self.fail(f"unexpected {self.peek()!r}")
        return terms

    def term(self, sign) -> NovikovTerm:
        coeff = Fraction(sign)
        exps: dict[str, int] = {}
        area = AffineFunctional()
        while True:
            if self.peek(kind="num"):
                coeff *= self.number()
            elif self.peek(kind="name"):
                _, name, pos = self.take()
                if name == NOVIKOV:
                    self.expect("^")
                    self.expect("{")
                    area = area + self.affine()
                    self.expect("}")
                else:
                    e = 1
                    if self.peek("^"):
                        self.take()
                        neg = False
                        if self.peek("-"):
                            self.take()
                            neg = True
                        k, v, p2 = self.take()
                        if k != "num":
                            raise _error(self.text, p2, "expected an integer exponent")
                        e = -int(v) if neg else int(v)
                    exps[name] = exps.get(name, 0) + e
            else:
                self.fail("expected a coefficient, variable or T^{...}")
            if not self.peek("*"):
                break
            self.take()
        return NovikovTerm.of(coeff, exps, area)

    def affine(self) -> AffineFunctional:
        out = AffineFunctional()
        sign = 1
        if self.peek("-"):
            self.take()
            sign = -1
        while True:
            if self.peek(kind="num"):
                c = self.number()
                if self.peek("*"):
                    self.take()
                    k, name, pos = self.take()
                    if k != "name" or name == NOVIKOV:
                        raise _error(self.text, pos, "expected a parameter name")
                    out = out + AffineFunctional.parameter(name).scale(sign * c)
                else:
                    out = out + sign * c
            elif self.peek(kind="name") and self.peek() != NOVIKOV:
                out = out + AffineFunctional.parameter(self.take()[1]).scale(sign)
            else:
                self.fail("expected a number or parameter")
            if self.peek("+") or self.peek("-"):
                sign = 1 if self.take()[1] == "+" else -1
            else:
                return out


def parse_affine(text: str) -> AffineFunctional:
    p = _Parser(text)
    out = p.affine()
    if not p.peek(kind="end"):
        p.fail(f"unexpected {p.peek()!r}")
    return out


def parse_potential(text: str) -> Potential:
    """Parse canonical text (or potential JSON) into a collected Potential.

    Declared variables and parameters are the names that occur, in natural
    order.  ``render(parse_potential(s)) == s`` for canonical ``s``.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return collect(Potential.from_json(data))
    if stripped == "":
        raise ParseError("empty input", 1, 1)
    if stripped == "0":
        return Potential()
    terms = _Parser(text).potential()
    variables = natural_sorted(n for t in terms for n in t.monomial)
    parameters = natural_sorted(n for t in terms for n in t.area.parameters)
    try:
        return collect(Potential(variables, parameters, terms))
    except MalformedSpec as exc:
        raise ParseError(str(exc), 1, 1) from None
