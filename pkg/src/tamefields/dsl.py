"""Text syntax for groups, fields, elements, polynomials and formulas.

The grammar is documented in GRAMMAR.md.  Every printer in the package
(``str`` of groups, fields, elements and polynomials) emits text that this
module parses back to an equal value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .doag.formula import parse_formula
from .errors import DSLSyntaxError, NotPrime, SemanticError, TameFieldsError
from .finfield import QQ, RationalField, field_of_order, prime_field
from .gauss import MPoly
from .ogroup import Atom, GroupElem, OrderedGroup, is_prime, prime_factors
from .upoly import UPoly
from .valfield import HahnField, RatFuncField

KINDS = ("group", "field", "element", "poly", "mpoly", "formula")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([()\[\]^*/+\-,×]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while True:
            rest = text[pos:]
            if not rest.strip():
                break
            m = _TOKEN.match(text, pos)
            if not m:
                off = pos + len(rest) - len(rest.lstrip())
                raise self.error(f"unexpected character {text[off]!r}", off)
            num, ident, sym = m.groups()
            off = m.start(m.lastindex)
            if num:
                self.toks.append(("int", int(num), off))
            elif ident:
                self.toks.append(("id", ident, off))
            else:
                self.toks.append(("sym", "x" if sym == "×" else sym, off))
            pos = m.end()
        self.i = 0

    def error(self, msg, offset=None) -> DSLSyntaxError:
        if offset is None:
            offset = self.peek()[2]
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

    def at(self, value, k=0) -> bool:
        kind, val, _ = self.peek(k)
        return kind in ("sym", "id") and val == value

    def accept(self, value) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            raise self.error(f"expected {value!r}")

    def integer(self) -> int:
        kind, val, _ = self.peek()
        if kind != "int":
            raise self.error("expected an integer")
        self.i += 1
        return val

    def done(self):
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")


# ---------------------------------------------------------------------------
# groups and fields
# ---------------------------------------------------------------------------

def _group(lx: _Lexer) -> OrderedGroup:
    factors = list(_group_factor(lx))
    while lx.accept("x"):
        factors.extend(_group_factor(lx))
    return OrderedGroup(tuple(factors))


def _group_factor(lx: _Lexer) -> tuple:
    kind, val, off = lx.peek()
    if kind == "int" and val == 0:
        lx.take()
        return ()
    if lx.accept("("):
        g = _group(lx)
        lx.expect(")")
        return g.factors
    if lx.accept("Q"):
        return (Atom.Q(),)
    if lx.accept("Z"):
        if not lx.accept("["):
            return (Atom.Z(),)
        if lx.integer() != 1:
            raise lx.error("expected Z[1/m]")
        lx.expect("/")
        m = lx.integer()
        lx.expect("]")
        if m < 2:
            raise SemanticError(f"Z[1/{m}] needs m >= 2")
        return (Atom.Zinv(*prime_factors(m)),)
    raise lx.error("expected a group (Z, Q, Z[1/m], 0 or a parenthesised product)", off)


def _residue(lx: _Lexer):
    if lx.accept("Q"):
        return QQ
    if lx.accept("F"):
        lx.expect("(")
        _, _, off = lx.peek()
        q = lx.integer()
        lx.expect(")")
        try:
            return field_of_order(q)
        except NotPrime as exc:
            raise SemanticError(f"F({q}): {q} is not a prime power") from exc
    raise lx.error("expected a residue field F(q) or Q")


def _field(lx: _Lexer, default_prec=None):
    k = _residue(lx)
    lx.expect("(")
    if lx.accept("("):
        lx.expect("t")
        lx.expect("^")
        g = _group(lx)
        lx.expect(")")
        lx.expect(")")
        if default_prec is not None:
            default_prec = _coerce_prec(g, default_prec)
        return HahnField(k, g, default_prec)
    lx.expect("t")
    level, perfect = 0, False
    if lx.accept("^"):
        lx.expect("(")
        if lx.integer() != 1:
            raise lx.error("expected t^(1/p^k)")
        lx.expect("/")
        _, _, off = lx.peek()
        p = lx.integer()
        level = 1
        if lx.accept("^"):
            if lx.accept("oo"):
                perfect, level = True, 0
            else:
                level = lx.integer()
        lx.expect(")")
        if isinstance(k, RationalField):
            raise SemanticError("fractional exponents need a residue field of positive characteristic")
        if p != k.char:
            raise SemanticError(f"t^(1/{p}^..) over {k}: {p} is not the characteristic {k.char}")
    lx.expect(")")
    return RatFuncField(k, level, perfect)


def _coerce_prec(g: OrderedGroup, prec) -> GroupElem:
    if isinstance(prec, GroupElem):
        return prec
    coords = prec if isinstance(prec, tuple) else (prec,)
    coords = tuple(Fraction(c) for c in coords)
    if len(coords) < g.rank:
        coords = coords + (Fraction(0),) * (g.rank - len(coords))
    return GroupElem(coords)


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Node:
    op: str            # int, gen, t, var, bigO, add, sub, mul, div, neg, pow
    args: tuple = ()
    value: object = None
    offset: int = 0


def _expr(lx: _Lexer) -> _Node:
    node = _term(lx)
    while True:
        off = lx.peek()[2]
        if lx.accept("+"):
            node = _Node("add", (node, _term(lx)), offset=off)
        elif lx.accept("-"):
            node = _Node("sub", (node, _term(lx)), offset=off)
        else:
            return node


def _term(lx: _Lexer) -> _Node:
    node = _unary(lx)
    while True:
        off = lx.peek()[2]
        if lx.accept("*"):
            node = _Node("mul", (node, _unary(lx)), offset=off)
        elif lx.accept("/"):
            node = _Node("div", (node, _unary(lx)), offset=off)
        else:
            return node


def _unary(lx: _Lexer) -> _Node:
    off = lx.peek()[2]
    if lx.accept("-"):
        return _Node("neg", (_unary(lx),), offset=off)
    return _power(lx)


def _rational(lx: _Lexer) -> Fraction:
    sign = -1 if lx.accept("-") else 1
    num = lx.integer()
    den = 1
    if lx.accept("/"):
        den = lx.integer()
        if den == 0:
            raise lx.error("zero denominator")
    return sign * Fraction(num, den)


def _exponent(lx: _Lexer) -> tuple:
    if lx.accept("("):
        coords = [_rational(lx)]
        while lx.accept(","):
            coords.append(_rational(lx))
        lx.expect(")")
        return tuple(coords)
    sign = -1 if lx.accept("-") else 1
    return (Fraction(sign * lx.integer()),)


def _power(lx: _Lexer) -> _Node:
    kind, val, off = lx.peek()
    if kind == "id" and val == "t":
        lx.take()
        exp = _exponent(lx) if lx.accept("^") else (Fraction(1),)
        return _Node("t", value=exp, offset=off)
    base = _atom(lx)
    if lx.at("^"):
        poff = lx.take()[2]
        exp = _exponent(lx)
        if len(exp) != 1 or exp[0].denominator != 1:
            raise lx.error("exponent must be an integer", poff)
        return _Node("pow", (base,), value=int(exp[0]), offset=poff)
    return base


def _atom(lx: _Lexer) -> _Node:
    kind, val, off = lx.take()
    if kind == "int":
        return _Node("int", value=val, offset=off)
    if kind == "sym" and val == "(":
        node = _expr(lx)
        lx.expect(")")
        return node
    if kind == "id":
        if val == "g":
            return _Node("gen", offset=off)
        if val == "O":
            lx.expect("(")
            lx.expect("t")
            exp = _exponent(lx) if lx.accept("^") else (Fraction(1),)
            lx.expect(")")
            return _Node("bigO", value=exp, offset=off)
        if val == "X" or re.fullmatch(r"[xy][1-9][0-9]*", val):
            return _Node("var", value=val, offset=off)
    raise lx.error(f"unexpected {val!r}" if kind != "eof" else "unexpected end of input", off)


def _walk(node: _Node):
    yield node
    for a in node.args:
        yield from _walk(a)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

class _Evaluator:
    """Evaluates an expression tree into residue constants, field elements or polynomials."""

    def __init__(self, K, lx: _Lexer, make_var=None):
        self.K = K
        self.k = K.residue_field
        self.lx = lx
        self.make_var = make_var

    def semantic(self, node, msg):
        err = self.lx.error(msg, node.offset)
        return SemanticError(f"{msg} (line {err.line}, col {err.col})")

    def constant(self, node: _Node):
        """Residue-field value of a subtree without t, X or O(.), else None."""
        k = self.k
        if node.op == "int":
            return k.from_int(node.value) if not isinstance(k, RationalField) else Fraction(node.value)
        if node.op == "gen":
            if isinstance(k, RationalField):
                raise self.semantic(node, "g is only defined over finite residue fields")
            return k.gen
        if node.op in ("t", "var", "bigO"):
            return None
        vals = [self.constant(a) for a in node.args]
        if any(v is None for v in vals):
            return None
        if node.op == "neg":
            return k.neg(vals[0])
        if node.op == "add":
            return k.add(*vals)
        if node.op == "sub":
            return k.sub(*vals)
        if node.op == "mul":
            return k.mul(*vals)
        if node.op == "div":
            if k.is_zero(vals[1]):
                raise self.semantic(node, "division by zero")
            return k.div(*vals)
        if node.op == "pow":
            if node.value < 0:
                if k.is_zero(vals[0]):
                    raise self.semantic(node, "division by zero")
                return k.pow(k.inv(vals[0]), -node.value)
            return k.pow(vals[0], node.value)
        raise AssertionError(node.op)

    def group_elem(self, node, coords) -> GroupElem:
        g = self.K.group
        if len(coords) != g.rank:
            raise self.semantic(node, f"exponent of rank {len(coords)} in a group of rank {g.rank}")
        e = GroupElem(tuple(coords))
        if not self.K.vg_contains(e):
            raise self.semantic(node, f"exponent {e} is not in {self.K.vg_describe()}")
        return e

    def eval(self, node: _Node):
        c = self.constant(node)
        if c is not None:
            return self.K.constant(c)
        K = self.K
        if node.op == "t":
            return K.t_power(self.group_elem(node, node.value))
        if node.op == "bigO":
            if not isinstance(K, HahnField):
                raise self.semantic(node, "O(t^e) is only meaningful in Hahn fields")
            return K.series((), prec=self.group_elem(node, node.value))
        if node.op == "var":
            if self.make_var is None:
                raise self.semantic(node, f"variable {node.value} not allowed here")
            return self.make_var(node, node.value)
        a = [self.eval(x) for x in node.args]
        if node.op == "neg":
            return -a[0]
        if node.op == "add":
            return a[0] + a[1]
        if node.op == "sub":
            return a[0] - a[1]
        if node.op == "mul":
            return a[0] * a[1]
        if node.op == "div":
            d = node.args[1]
            dc = self.constant(d)
            if dc is not None:
                if self.k.is_zero(dc):
                    raise self.semantic(node, "division by zero")
                return a[0] * K.constant(self.k.inv(dc))
            if self.make_var is not None and any(n.op == "var" for n in _walk(d)):
                raise self.semantic(node, "division by a polynomial")
            if a[1].is_zero():
                raise self.semantic(node, "division by zero")
            return a[0] * a[1].inverse()
        if node.op == "pow":
            n = node.value
            if n < 0:
                if self.make_var is not None and any(x.op == "var" for x in _walk(node.args[0])):
                    raise self.semantic(node, "negative power of a polynomial")
                return a[0].inverse() ** (-n)
            return a[0] ** n
        raise AssertionError(node.op)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def _wrap_errors(fn):
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DSLSyntaxError, SemanticError):
            raise
        except (TameFieldsError, ValueError, ZeroDivisionError) as exc:
            raise SemanticError(str(exc)) from exc
    inner.__name__ = fn.__name__
    inner.__doc__ = fn.__doc__
    return inner


@_wrap_errors
def parse_group(text: str) -> OrderedGroup:
    lx = _Lexer(text)
    g = _group(lx)
    lx.done()
    return g


@_wrap_errors
def parse_field(text: str, default_prec=None):
    """``F(q)((t^G))``, ``Q((t^G))``, ``F(p)(t)``, ``F(p)(t^(1/p^k))``, ``F(p)(t^(1/p^oo))``."""
    lx = _Lexer(text)
    K = _field(lx, default_prec)
    lx.done()
    return K


@_wrap_errors
def parse_element(text: str, K):
    lx = _Lexer(text)
    node = _expr(lx)
    lx.done()
    return _Evaluator(K, lx).eval(node)


@_wrap_errors
def parse_poly(text: str, K) -> UPoly:
    """A polynomial in X with coefficients in K."""
    lx = _Lexer(text)
    node = _expr(lx)
    lx.done()

    def var(n, name):
        if name != "X":
            raise ev.semantic(n, f"unknown variable {name}; polynomials use X")
        return UPoly.x(K)

    ev = _Evaluator(K, lx, var)
    out = ev.eval(node)
    return out if isinstance(out, UPoly) else UPoly(K, [out])


@_wrap_errors
def parse_mpoly(text: str, K, nx: Optional[int] = None, ny: Optional[int] = None) -> MPoly:
    """A polynomial in x1..xr, y1..ys over K; r and s default to the largest index used."""
    lx = _Lexer(text)
    node = _expr(lx)
    lx.done()
    names = [n.value for n in _walk(node) if n.op == "var"]
    if "X" in names:
        raise SemanticError("multivariate polynomials use x1.. and y1..")
    top_x = max((int(s[1:]) for s in names if s[0] == "x"), default=0)
    top_y = max((int(s[1:]) for s in names if s[0] == "y"), default=0)
    nx = top_x if nx is None else nx
    ny = top_y if ny is None else ny
    if top_x > nx or top_y > ny:
        raise SemanticError(f"variables exceed x1..x{nx}, y1..y{ny}")

    def var(n, name):
        i = int(name[1:]) - 1
        return MPoly.x(K, nx, ny, i) if name[0] == "x" else MPoly.y(K, nx, ny, i)

    out = _Evaluator(K, lx, var).eval(node)
    return out if isinstance(out, MPoly) else MPoly.constant(K, nx, ny, out)


def parse_input(kind: str, text: str, field=None, **kwargs):
    """Parse ``text`` as one of KINDS; element and polynomial kinds need ``field``."""
    if kind == "group":
        return parse_group(text)
    if kind == "field":
        return parse_field(text, **kwargs)
    if kind == "formula":
        return parse_formula(text)
    if kind in ("element", "poly", "mpoly"):
        if field is None:
            raise SemanticError(f"parsing a {kind} needs a field")
        if isinstance(field, str):
            field = parse_field(field)
        if kind == "element":
            return parse_element(text, field)
        if kind == "poly":
            return parse_poly(text, field)
        return parse_mpoly(text, field, **kwargs)
    raise SemanticError(f"unknown input kind {kind!r}; expected one of {', '.join(KINDS)}")


def parse_prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise SemanticError(f"{text!r} is not an integer") from exc
    if not is_prime(p):
        raise SemanticError(f"{p} is not prime")
    return p


__all__ = ["KINDS", "parse_input", "parse_group", "parse_field", "parse_element", "parse_poly",
           "parse_mpoly", "parse_prime", "prime_field"]
