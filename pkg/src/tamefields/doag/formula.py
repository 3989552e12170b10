"""First-order formulas of ordered abelian groups: AST, parser, printer.

Atoms are ``sum c_i x_i = 0`` or ``sum c_i x_i < 0`` with rational
coefficients; the only constant of the language is 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Union

from ..errors import DSLSyntaxError, SemanticError

KEYWORDS = {"forall", "exists", "true", "false"}


# ---------------------------------------------------------------------------
# linear forms
# ---------------------------------------------------------------------------

def lin(mapping) -> tuple:
    """Canonical linear form: sorted (var, coeff) pairs without zeros."""
    return tuple(sorted((v, Fraction(c)) for v, c in dict(mapping).items() if c != 0))


def lin_add(a: tuple, b: tuple, scale=1) -> tuple:
    acc = dict(a)
    for v, c in b:
        acc[v] = acc.get(v, 0) + scale * c
    return lin(acc)


def lin_scale(a: tuple, s) -> tuple:
    return lin({v: c * s for v, c in a})


def lin_coeff(a: tuple, var: str) -> Fraction:
    return next((c for v, c in a if v == var), Fraction(0))


def lin_vars(a: tuple) -> set:
    return {v for v, _ in a}


def lin_primitive(a: tuple) -> tuple:
    """Positive multiple with coprime integer coefficients."""
    if not a:
        return a
    den = reduce(lcm, (c.denominator for _, c in a), 1)
    ints = [int(c * den) for _, c in a]
    g = reduce(gcd, (abs(i) for i in ints))
    return tuple((v, Fraction(i // g)) for (v, _), i in zip(a, ints))


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom:
    op: str          # "=" or "<"
    form: tuple      # linear form, compared with 0

    def __post_init__(self):
        if self.op not in ("=", "<"):
            raise ValueError(f"bad atom operator {self.op!r}")


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str        # "forall" or "exists"
    var: str
    body: "Formula"


Formula = Union[Const, Atom, Not, And, Or, Implies, Quant]


def conj(*args) -> Formula:
    flat = []
    for a in args:
        if a == TRUE:
            continue
        if a == FALSE:
            return FALSE
        flat.extend(a.args if isinstance(a, And) else [a])
    if not flat:
        return TRUE
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args) -> Formula:
    flat = []
    for a in args:
        if a == FALSE:
            continue
        if a == TRUE:
            return TRUE
        flat.extend(a.args if isinstance(a, Or) else [a])
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def free_vars(phi: Formula) -> set:
    if isinstance(phi, Const):
        return set()
    if isinstance(phi, Atom):
        return lin_vars(phi.form)
    if isinstance(phi, Not):
        return free_vars(phi.arg)
    if isinstance(phi, (And, Or)):
        return set().union(*(free_vars(a) for a in phi.args))
    if isinstance(phi, Implies):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.var}


def quantifier_count(phi: Formula) -> int:
    if isinstance(phi, (Const, Atom)):
        return 0
    if isinstance(phi, Not):
        return quantifier_count(phi.arg)
    if isinstance(phi, (And, Or)):
        return sum(quantifier_count(a) for a in phi.args)
    if isinstance(phi, Implies):
        return quantifier_count(phi.left) + quantifier_count(phi.right)
    return 1 + quantifier_count(phi.body)


def is_quantifier_free(phi: Formula) -> bool:
    return quantifier_count(phi) == 0


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _side(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for v, c in terms:
        c = abs(c)
        mono = v if c == 1 else f"{c}*{v}" if c.denominator == 1 else f"({c})*{v}"
        parts.append(mono)
    return " + ".join(parts)


def format_atom(a: Atom) -> str:
    pos = [(v, c) for v, c in a.form if c > 0]
    neg = [(v, c) for v, c in a.form if c < 0]
    return f"{_side(pos)} {a.op} {_side(neg)}"


def format_formula(phi: Formula) -> str:
    def wrap(psi):
        s = format_formula(psi)
        return s if isinstance(psi, (Const, Atom, Not)) else f"({s})"

    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Atom):
        return format_atom(phi)
    if isinstance(phi, Not):
        return f"!{wrap(phi.arg)}"
    if isinstance(phi, And):
        return " & ".join(wrap(a) for a in phi.args)
    if isinstance(phi, Or):
        return " | ".join(wrap(a) for a in phi.args)
    if isinstance(phi, Implies):
        return f"{wrap(phi.left)} -> {wrap(phi.right)}"
    return f"{phi.kind} {phi.var} ({format_formula(phi.body)})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->|<=|>=|!=|[()&|!<>=+\-*,.])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks = []   # (kind, value, offset)
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                off = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise self.error(f"unexpected character {text[off]!r}", off)
            sym, num, ident = m.groups()
            off = m.start(m.lastindex)
            if sym:
                self.toks.append(("sym", sym, off))
            elif num:
                self.toks.append(("int", int(num), off))
            else:
                self.toks.append(("kw" if ident in KEYWORDS else "id", ident, off))
            pos = m.end()
        self.i = 0

    def error(self, msg, offset=None):
        if offset is None:
            offset = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return DSLSyntaxError(msg, line, col)

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, value) -> bool:
        if self.peek()[1] == value and self.peek()[0] in ("sym", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            raise self.error(f"expected {value!r}")


class FormulaParser:
    def __init__(self, text: str):
        self.t = _Tokens(text)

    def parse(self) -> Formula:
        phi = self.formula()
        if self.t.peek()[0] != "eof":
            raise self.t.error(f"unexpected {self.t.peek()[1]!r}")
        return phi

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.t.accept("->"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        args = [self.conjunction()]
        while self.t.accept("|"):
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> Formula:
        args = [self.unary()]
        while self.t.accept("&"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Formula:
        kind, val, _ = self.t.peek()
        if kind == "sym" and val == "!":
            self.t.take()
            return Not(self.unary())
        if kind == "kw" and val in ("forall", "exists"):
            self.t.take()
            names = []
            while self.t.peek()[0] == "id":
                names.append(self.t.take()[1])
                self.t.accept(",")
            if not names:
                raise self.t.error("expected a variable after quantifier")
            self.t.accept(".")
            body = self.formula()   # scope extends as far right as possible
            for name in reversed(names):
                body = Quant(val, name, body)
            return body
        return self.primary()

    def primary(self) -> Formula:
        kind, val, _ = self.t.peek()
        if kind == "kw" and val in ("true", "false"):
            self.t.take()
            return TRUE if val == "true" else FALSE
        if kind == "sym" and val == "(":
            save = self.t.i
            try:
                return self.comparison()
            except DSLSyntaxError:
                self.t.i = save
            self.t.take()
            phi = self.formula()
            self.t.expect(")")
            return phi
        return self.comparison()

    def comparison(self) -> Formula:
        a = self.term()
        kind, op, off = self.t.take()
        if op not in ("<", ">", "=", "<=", ">=", "!=") or kind != "sym":
            raise self.t.error("expected a comparison", off)
        b = self.term()
        d = lin_add(a, b, -1)      # a - b
        if op == "=":
            return Atom("=", d)
        if op == "!=":
            return Not(Atom("=", d))
        if op == "<":
            return Atom("<", d)
        if op == ">":
            return Atom("<", lin_scale(d, -1))
        if op == "<=":
            return Or((Atom("<", d), Atom("=", d)))
        return Or((Atom("<", lin_scale(d, -1)), Atom("=", d)))

    def term(self) -> tuple:
        sign = -1 if self.t.accept("-") else 1
        acc = lin_scale(self.factor(), sign)
        while True:
            if self.t.accept("+"):
                acc = lin_add(acc, self.factor())
            elif self.t.accept("-"):
                acc = lin_add(acc, self.factor(), -1)
            else:
                return acc

    def factor(self) -> tuple:
        kind, val, off = self.t.peek()
        if kind == "int":
            self.t.take()
            if self.t.accept("*"):
                return lin_scale(self.factor(), val)
            if self.t.peek()[0] == "id":
                return lin_scale(self.factor(), val)
            if val != 0:
                raise SemanticError(f"constant {val} at col {off + 1}: the only constant is 0")
            return ()
        if kind == "id":
            self.t.take()
            return lin({val: 1})
        if kind == "sym" and val == "(":
            self.t.take()
            a = self.term()
            self.t.expect(")")
            return a
        if kind == "sym" and val == "-":
            self.t.take()
            return lin_scale(self.factor(), -1)
        raise self.t.error("expected a term")


def parse_formula(text: str) -> Formula:
    return FormulaParser(text).parse()
