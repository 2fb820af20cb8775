"""Parsing and printing of entropy expressions.

Grammar (whitespace insignificant)::

    ineq     := expr (">=" | "<=" | "=") expr   |   expr
    expr     := [sign] term { ("+"|"-") term }
    term     := [rational ["*"]] atom  |  "0"
    atom     := "H(" varlist ["|" varlist] ")" | "I(" varlist ";" varlist ["|" varlist] ")"
    varlist  := ident { "," ident }
    rational := integer ["/" positive-integer]

A bare expression means ``expr >= 0``.  Inside a varlist an identifier that
is not a single variable may denote a concatenation, as in ``I(Z;AB|CD)``:
against a known context it is split into context names, otherwise it is
split before each capital letter (``X2X3`` -> ``X2, X3``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .linform import (
    H,
    I,
    LinForm,
    UnknownVariableError,
    VarContext,
    sort_key,
    zero,
)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} at position {pos}"
        super().__init__(msg)


@dataclass(frozen=True)
class EntropyTerm:
    """``coefficient * H(J|L)`` (kind "H") or ``coefficient * I(J;K|L)`` (kind "I")."""

    kind: str
    joint: tuple[str, ...]
    other: tuple[str, ...] = ()
    given: tuple[str, ...] = ()
    coefficient: Fraction = Fraction(1)

    def form(self, ctx: VarContext) -> LinForm:
        g = ctx.mask(self.given)
        if self.kind == "H":
            base = H(ctx, ctx.mask(self.joint), g)
        else:
            base = I(ctx, ctx.mask(self.joint), ctx.mask(self.other), g)
        return base * self.coefficient

    def variables(self) -> set[str]:
        return set(self.joint) | set(self.other) | set(self.given)


@dataclass(frozen=True)
class Inequality:
    lhs: tuple[EntropyTerm, ...]
    relation: str
    rhs: tuple[EntropyTerm, ...]
    ctx: VarContext = field(compare=False)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>>=|<=|=|[-+*/(),;|]))"
)
_CAMEL_RE = re.compile(r"[A-Z][a-z0-9_]*|[a-z][a-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, got {tok[1] or 'end of input'!r}", tok)
        return tok

    def ineq(self):
        lhs = self.expr()
        tok = self.peek()
        if tok[0] == "end":
            return lhs, ">=", []
        if tok[1] not in (">=", "<=", "="):
            raise self.error(f"expected relation, got {tok[1]!r}")
        self.next()
        rhs = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"trailing input {self.peek()[1]!r}")
        return lhs, tok[1], rhs

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        terms.extend(self.term(sign))
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
            terms.extend(self.term(sign))
        return terms

    def term(self, sign):
        coeff = Fraction(1)
        explicit = False
        if self.peek()[0] == "num":
            explicit = True
            tok = self.next()
            num = int(tok[1])
            den = 1
            if self.peek()[1] == "/":
                self.next()
                dt = self.next()
                if dt[0] != "num" or int(dt[1]) == 0:
                    raise self.error("expected positive integer denominator", dt)
                den = int(dt[1])
            coeff = Fraction(num, den)
            if self.peek()[1] == "*":
                self.next()
            elif coeff == 0 and self.peek()[0] != "ident":
                return []
        tok = self.peek()
        if tok[0] != "ident" or tok[1] not in ("H", "I") or self.peek(1)[1] != "(":
            if explicit:
                raise self.error("constant terms other than 0 are not allowed")
            raise self.error(f"expected H( or I(, got {tok[1] or 'end of input'!r}")
        kind = self.next()[1]
        self.expect("(")
        first = self.varlist()
        other: list[str] = []
        if kind == "I":
            self.expect(";")
            other = self.varlist()
        given: list[str] = []
        if self.peek()[1] == "|":
            self.next()
            given = self.varlist()
        self.expect(")")
        return [(kind, first, other, given, sign * coeff, tok[2])]

    def varlist(self):
        items = []
        tok = self.next()
        if tok[0] != "ident":
            raise self.error(f"expected variable, got {tok[1] or 'end of input'!r}", tok)
        items.append(tok[1])
        while self.peek()[1] == ",":
            self.next()
            tok = self.next()
            if tok[0] != "ident":
                raise self.error(f"expected variable, got {tok[1] or 'end of input'!r}", tok)
            items.append(tok[1])
        return items


def _split_known(ident: str, names: tuple[str, ...]) -> list[str] | None:
    """Unique decomposition of ``ident`` into a concatenation of ``names``."""
    memo: dict[int, list[list[str]]] = {}

    def go(pos):
        if pos == len(ident):
            return [[]]
        if pos in memo:
            return memo[pos]
        out = []
        for name in names:
            if ident.startswith(name, pos):
                for rest in go(pos + len(name)):
                    out.append([name] + rest)
                    if len(out) > 1:
                        break
            if len(out) > 1:
                break
        memo[pos] = out
        return out

    splits = go(0)
    if len(splits) == 1:
        return splits[0]
    return None


def _resolve(ident: str, ctx: VarContext | None) -> list[str]:
    if ctx is None:
        parts = _CAMEL_RE.findall(ident)
        return parts if "".join(parts) == ident else [ident]
    if ident in ctx:
        return [ident]
    parts = _split_known(ident, ctx.names)
    if parts is None:
        raise UnknownVariableError(ident)
    return parts


def parse(text: str, ctx: Optional[VarContext] = None) -> Inequality:
    p = _Parser(text)
    lhs, rel, rhs = p.ineq()
    seen: set[str] = set()

    def build(raw):
        out = []
        for kind, first, other, given, coeff, pos in raw:
            parts = [[v for ident in group for v in _resolve(ident, ctx)] for group in (first, other, given)]
            if kind == "I" and not (parts[0] and parts[1]):
                raise ParseError("empty argument in I-term", pos, text)
            seen.update(*parts)
            out.append(EntropyTerm(kind, tuple(parts[0]), tuple(parts[1]), tuple(parts[2]), coeff))
        return tuple(out)

    lhs_t, rhs_t = build(lhs), build(rhs)
    if ctx is None:
        ctx = VarContext.sorted(seen)
    return Inequality(lhs_t, rel, rhs_t, ctx)


def _side(terms, ctx) -> LinForm:
    out = zero(ctx)
    for t in terms:
        out = out + t.form(ctx)
    return out


def canonical_forms(ineq: Inequality) -> list[LinForm]:
    """One form per ``>= 0`` statement; an equation yields two."""
    diff = _side(ineq.lhs, ineq.ctx) - _side(ineq.rhs, ineq.ctx)
    if ineq.relation == ">=":
        return [diff]
    if ineq.relation == "<=":
        return [-diff]
    return [diff, -diff]


def canonicalize(ineq: Inequality) -> LinForm:
    return canonical_forms(ineq)[0]


def canonical(text: str, ctx: Optional[VarContext] = None) -> LinForm:
    return canonicalize(parse(text, ctx))


def subset_str(ctx: VarContext, mask: int) -> str:
    return ",".join(ctx.subset_names(mask))


def render_expr(f: LinForm) -> str:
    if not f:
        return "0"
    parts = []
    for mask in sorted(f.support(), key=sort_key):
        c = f[mask]
        atom = f"{abs(c)}*H({subset_str(f.ctx, mask)})"
        if not parts:
            parts.append(atom if c > 0 else "-" + atom)
        else:
            parts.append(("+ " if c > 0 else "- ") + atom)
    return " ".join(parts)


def render(f: LinForm) -> str:
    return f"{render_expr(f)} >= 0"
