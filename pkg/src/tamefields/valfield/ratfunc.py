"""Exact rational functions in t^(1/p^k) with the t-adic monomial valuation.

Elements are fractions ``num/den`` of sparse Laurent polynomials whose
exponents are rationals with p-power denominators.  The value of a
Laurent polynomial is its least exponent; the value of a fraction is the
difference.  Nothing is ever truncated.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import NonUnitValue, UnsupportedBackend
from ..finfield import RationalField, poly_divmod, poly_gcd, poly_trim
from ..ogroup import INFINITY, GroupElem, OrderedGroup, Atom

# Dense gcd cancellation is skipped above this exponent span (after rescaling).
GCD_SPAN_LIMIT = 4096


def _lp_clean(k, d: dict) -> dict:
    return {e: c for e, c in d.items() if not k.is_zero(c)}


def lp_add(k, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = k.add(out[e], c) if e in out else c
    return _lp_clean(k, out)


def lp_neg(k, a: dict) -> dict:
    return {e: k.neg(c) for e, c in a.items()}


def lp_mul(k, a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            c = k.mul(c1, c2)
            out[e] = k.add(out[e], c) if e in out else c
    return _lp_clean(k, out)


def lp_shift(a: dict, s: Fraction) -> dict:
    return {e + s: c for e, c in a.items()}


def lp_scale(k, a: dict, c) -> dict:
    return _lp_clean(k, {e: k.mul(c, x) for e, x in a.items()})


def _exp_den(*polys) -> int:
    d = 1
    for poly in polys:
        for e in poly:
            d = math.lcm(d, Fraction(e).denominator)
    return d


def _to_dense(k, a: dict, scale: int, low: Fraction) -> list:
    n = int(max(a) * scale - low * scale) + 1
    out = [k.zero] * n
    for e, c in a.items():
        out[int((e - low) * scale)] = c
    return out


def _from_dense(f: list, scale: int, low: Fraction) -> dict:
    return {low + Fraction(i, scale): c for i, c in enumerate(f) if c != 0}


class RatFuncField:
    """k(t^(1/p^level)), or its perfect hull when ``perfect`` is set.

    In the perfect hull every p-power denominator is admissible; ``level``
    then only bounds how deep successive-approximation diagnostics descend
    the tower t^(1/p), t^(1/p^2), ...
    """

    backend = "RATFUNC"
    maximal_by_construction = False

    def __init__(self, residue, level: int = 0, perfect: bool = False):
        self.residue_field = residue
        if isinstance(residue, RationalField) and (level or perfect):
            raise ValueError("fractional exponents need positive characteristic")
        self.level = level
        self.perfect = perfect

    @property
    def p(self) -> int:
        return self.residue_field.char_exponent

    @property
    def char(self) -> int:
        return self.residue_field.char

    @property
    def residue_char(self) -> int:
        return self.residue_field.char

    # -- value group -----------------------------------------------------------
    @property
    def group(self) -> OrderedGroup:
        """The ambient coordinate group; exponents are single rationals."""
        if self.perfect:
            return OrderedGroup((Atom.Zinv(self.p),))
        return OrderedGroup((Atom.Q(),)) if self.level else OrderedGroup((Atom.Z(),))

    def vg_contains(self, g: GroupElem) -> bool:
        if g.rank != 1:
            return False
        c = g.coords[0]
        if self.perfect:
            den = c.denominator
            while den % self.p == 0:
                den //= self.p
            return den == 1
        return (c * self.p**self.level).denominator == 1

    def vg_order(self, g: GroupElem) -> int:
        c = g.coords[0]
        if self.perfect:
            den = c.denominator
            while den % self.p == 0:
                den //= self.p
            return den
        return (c * self.p**self.level).denominator

    def vg_p_divisible(self, p: int):
        if self.perfect and p == self.p:
            return True, None
        return False, GroupElem((Fraction(1, self.p**self.level),))

    def vg_infinitely_divisible(self, g: GroupElem, p: int) -> bool:
        return g.is_zero() or (self.perfect and p == self.p and self.vg_contains(g))

    def vg_generators(self):
        if self.perfect:
            return None
        return [GroupElem((Fraction(1, self.p**self.level),))]

    def vg_describe(self) -> str:
        if self.perfect:
            return f"Z[1/{self.p}]"
        if self.level:
            return f"(1/{self.p}^{self.level})Z"
        return "Z"

    def admissible_exponent(self, e: Fraction) -> bool:
        return self.vg_contains(GroupElem((e,)))

    # -- constructors ----------------------------------------------------------
    def element(self, num: dict, den: dict | None = None) -> "RatFuncElem":
        k = self.residue_field
        num = {Fraction(e): (c if k.is_element(c) else k.from_int(c)) for e, c in num.items()}
        den = {Fraction(0): k.one} if den is None else {
            Fraction(e): (c if k.is_element(c) else k.from_int(c)) for e, c in den.items()}
        for e in list(num) + list(den):
            if not self.admissible_exponent(e):
                raise ValueError(f"exponent {e} not admissible in {self}")
        return RatFuncElem._make(self, _lp_clean(k, num), _lp_clean(k, den))

    def zero(self) -> "RatFuncElem":
        return RatFuncElem(self, {}, {Fraction(0): self.residue_field.one})

    def one(self) -> "RatFuncElem":
        return self.constant(self.residue_field.one)

    def from_int(self, n: int) -> "RatFuncElem":
        return self.constant(self.residue_field.from_int(n))

    def constant(self, c) -> "RatFuncElem":
        return self.monomial(c, GroupElem((0,)))

    def monomial(self, c, e) -> "RatFuncElem":
        if isinstance(e, GroupElem):
            e = e.coords[0]
        e = Fraction(e)
        if self.residue_field.is_zero(c):
            return self.zero()
        if not self.admissible_exponent(e):
            raise ValueError(f"exponent {e} not admissible in {self}")
        return RatFuncElem(self, {e: c}, {Fraction(0): self.residue_field.one})

    def t_power(self, e) -> "RatFuncElem":
        return self.monomial(self.residue_field.one, e)

    def coerce(self, x) -> "RatFuncElem":
        if isinstance(x, RatFuncElem):
            if x.field != self:
                raise TypeError(f"element of {x.field} used in {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction) and isinstance(self.residue_field, RationalField):
            return self.constant(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # -- valuation -------------------------------------------------------------
    def value(self, x: "RatFuncElem"):
        if not x.num:
            return INFINITY
        return GroupElem((min(x.num) - min(x.den),))

    def residue(self, x: "RatFuncElem"):
        v = self.value(x)
        if v is INFINITY or not v.is_zero():
            raise NonUnitValue(f"residue needs value 0, got {v}")
        k = self.residue_field
        return k.div(x.num[min(x.num)], x.den[min(x.den)])

    def leading_term(self, x: "RatFuncElem"):
        v = self.value(x)
        if v is INFINITY:
            raise ValueError("zero has no leading term")
        k = self.residue_field
        return k.div(x.num[min(x.num)], x.den[min(x.den)]), v

    def lift(self, levels: int) -> "RatFuncField":
        return RatFuncField(self.residue_field, max(self.level, levels), self.perfect)

    def _key(self):
        # in the perfect hull the level is a diagnostic depth, not part of the field
        return (self.residue_field, None if self.perfect else self.level, self.perfect)

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self._key() == other._key()

    def __hash__(self):
        return hash(("RATFUNC",) + self._key())

    def __str__(self):
        k = self.residue_field
        if self.perfect:
            return f"{k}(t^(1/{self.p}^oo))"
        if self.level:
            return f"{k}(t^(1/{self.p}^{self.level}))"
        return f"{k}(t)"

    __repr__ = __str__


class RatFuncElem:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: RatFuncField, num: dict, den: dict):
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, field, num, den):
        k = field.residue_field
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return field.zero()
        # move the monomial content of den into num and make den start 1 + ...
        low = min(den)
        lead = den[low]
        inv = k.inv(lead)
        den = {e - low: k.mul(c, inv) for e, c in den.items()}
        num = {e - low: k.mul(c, inv) for e, c in num.items()}
        if len(den) > 1 and len(num) >= 1:
            num, den = _cancel_gcd(k, num, den)
        return cls(field, num, den)

    def is_zero(self) -> bool:
        return not self.num

    def is_exact(self) -> bool:
        return True

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    def _coerce(self, other):
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        k = self.field.residue_field
        if self.den == other.den:
            return RatFuncElem._make(self.field, lp_add(k, self.num, other.num), self.den)
        num = lp_add(k, lp_mul(k, self.num, other.den), lp_mul(k, other.num, self.den))
        return RatFuncElem._make(self.field, num, lp_mul(k, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFuncElem(self.field, lp_neg(self.field.residue_field, self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        k = self.field.residue_field
        return RatFuncElem._make(self.field, lp_mul(k, self.num, other.num),
                                 lp_mul(k, self.den, other.den))

    __rmul__ = __mul__

    def inverse(self, prec=None) -> "RatFuncElem":
        if not self.num:
            from ..errors import DivisionByZero
            raise DivisionByZero("inverse of zero")
        return RatFuncElem._make(self.field, dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> "RatFuncElem":
        k = self.field.residue_field
        p = k.char
        return RatFuncElem(self.field, {e * p: k.pow(c, p) for e, c in self.num.items()},
                           {e * p: k.pow(c, p) for e, c in self.den.items()})

    def frobenius_inverse(self) -> "RatFuncElem":
        if not self.field.perfect:
            raise UnsupportedBackend("p-th roots of t need the perfect hull")
        k = self.field.residue_field
        p = k.char
        return RatFuncElem(self.field, {e / p: k.pth_root(c) for e, c in self.num.items()},
                           {e / p: k.pth_root(c) for e, c in self.den.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, RatFuncElem):
            return NotImplemented
        if self.field != other.field:
            return False
        k = self.field.residue_field
        return lp_mul(k, self.num, other.den) == lp_mul(k, other.num, self.den)

    __hash__ = None

    def __str__(self):
        return format_ratfunc(self)

    __repr__ = __str__


def _cancel_gcd(k, num: dict, den: dict):
    lo_n, lo_d = min(num), min(den)
    # work in u = t^step, the coarsest power that carries every exponent
    step = Fraction(0)
    for e in num:
        step = _frac_gcd(step, e - lo_n)
    for e in den:
        step = _frac_gcd(step, e - lo_d)
    if step == 0:
        return num, den
    scale = 1 / step
    span = max(max(num) - lo_n, max(den) - lo_d) * scale
    if span > GCD_SPAN_LIMIT:
        return num, den
    fn = _to_dense(k, num, scale, lo_n)
    fd = _to_dense(k, den, scale, lo_d)
    g = poly_gcd(k, fn, fd)
    if len(g) <= 1:
        return num, den
    fn = poly_trim(k, poly_divmod(k, fn, g)[0])
    fd = poly_trim(k, poly_divmod(k, fd, g)[0])
    return _from_dense(fn, scale, lo_n), _from_dense(fd, scale, lo_d)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = abs(Fraction(a)), abs(Fraction(b))
    if not a:
        return b
    if not b:
        return a
    den = math.lcm(a.denominator, b.denominator)
    return Fraction(math.gcd(int(a * den), int(b * den)), den)


def _format_exp(e: Fraction) -> str:
    return str(e) if e.denominator == 1 and e >= 0 else f"({e})"


def format_laurent(k, d: dict) -> str:
    parts = []
    for e in sorted(d):
        c = d[e]
        cs = k.format(c)
        if e == 0:
            parts.append(cs)
        else:
            mono = "t" if e == 1 else f"t^{_format_exp(e)}"
            parts.append(mono if c == k.one else f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"


def format_ratfunc(x: RatFuncElem) -> str:
    k = x.field.residue_field
    num = format_laurent(k, x.num)
    if x.is_laurent() and min(x.den) == 0 and x.den[min(x.den)] == k.one:
        return num
    return f"({num})/({format_laurent(k, x.den)})"
