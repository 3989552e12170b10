"""Truncated generalized power series k((t^G)).

A :class:`HahnSeries` stores finitely many terms below a precision cutoff:
``x = sum c_e t^e + O(t^prec)``.  ``prec=None`` means the element is known
exactly (finite support).  Precision is an exponent, not a term count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from ..errors import (DivisionByZero, NonUnitValue, PrecisionExhausted,
                      PrecisionLoss)
from ..finfield import RationalField
from ..ogroup import INFINITY, GroupElem, OrderedGroup


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def steps_to_reach(w: GroupElem, target: GroupElem) -> Optional[int]:
    """Least N >= 0 with N*w >= target, for w > 0; None if no such N."""
    if target.sign() <= 0:
        return 0
    j = next(i for i, c in enumerate(w.coords) if c != 0)
    i = next(i for i, c in enumerate(target.coords) if c != 0)
    if i < j:
        return None
    if i > j:
        return 1
    n = -((-target.coords[j]) // w.coords[j])
    n = int(max(n, 1))
    return n if n * w >= target else n + 1


class HahnField:
    """The field k((t^G)) with k a residue field and G an ordered group."""

    backend = "HAHN"
    maximal_by_construction = True

    def __init__(self, residue, group: OrderedGroup, default_prec=None):
        self.residue_field = residue
        self.group = group
        if default_prec is None:
            default_prec = group.unit(0) * 20 if group.rank else group.zero
        elif not isinstance(default_prec, GroupElem):
            default_prec = group.elem(*(
                default_prec if isinstance(default_prec, tuple) else (default_prec,)))
        self.default_prec = default_prec

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
    def vg_contains(self, g: GroupElem) -> bool:
        return self.group.contains(g)

    def vg_order(self, g: GroupElem) -> int:
        return self.group.order_mod_group(g)

    def vg_p_divisible(self, p: int):
        return self.group.is_p_divisible(p)

    def vg_infinitely_divisible(self, g: GroupElem, p: int) -> bool:
        return self.group.infinitely_divisible(g, p)

    def vg_generators(self):
        return None

    def vg_describe(self) -> str:
        return str(self.group)

    # -- constructors ----------------------------------------------------------
    def series(self, terms: Iterable = (), prec=None) -> "HahnSeries":
        k = self.residue_field
        clean = []
        for e, c in terms:
            if not isinstance(e, GroupElem):
                e = self.group.elem(*(e if isinstance(e, tuple) else (e,)))
            self.group.validate(e)
            if not k.is_element(c):
                c = k.from_int(c) if isinstance(c, int) else c
            clean.append((e, c))
        if prec is not None and not isinstance(prec, GroupElem):
            prec = self.group.elem(*(prec if isinstance(prec, tuple) else (prec,)))
        return HahnSeries._make(self, clean, prec)

    def zero(self) -> "HahnSeries":
        return HahnSeries(self, (), None)

    def one(self) -> "HahnSeries":
        return self.constant(self.residue_field.one)

    def from_int(self, n: int) -> "HahnSeries":
        return self.constant(self.residue_field.from_int(n))

    def constant(self, c) -> "HahnSeries":
        return self.monomial(c, self.group.zero)

    def monomial(self, c, e: GroupElem) -> "HahnSeries":
        if self.residue_field.is_zero(c):
            return self.zero()
        return HahnSeries(self, ((e, c),), None)

    def t_power(self, e) -> "HahnSeries":
        if not isinstance(e, GroupElem):
            e = self.group.elem(*(e if isinstance(e, tuple) else (e,)))
        self.group.validate(e)
        return self.monomial(self.residue_field.one, e)

    def coerce(self, x) -> "HahnSeries":
        if isinstance(x, HahnSeries):
            if x.field != self:
                raise TypeError(f"element of {x.field} used in {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction) and isinstance(self.residue_field, RationalField):
            return self.constant(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # -- valuation -------------------------------------------------------------
    def value(self, x: "HahnSeries"):
        if x.terms:
            return x.terms[0][0]
        if x.prec is None:
            return INFINITY
        raise PrecisionLoss(f"element is zero only up to O(t^{x.prec})")

    def residue(self, x: "HahnSeries"):
        v = self.value(x)
        if v is INFINITY or not v.is_zero():
            raise NonUnitValue(f"residue needs value 0, got {v}")
        return x.terms[0][1]

    def leading_term(self, x: "HahnSeries"):
        self.value(x)
        return x.terms[0][1], x.terms[0][0]

    def __eq__(self, other):
        return (isinstance(other, HahnField) and self.residue_field == other.residue_field
                and self.group == other.group)

    def __hash__(self):
        return hash(("HAHN", self.residue_field, self.group))

    def __str__(self):
        return f"{self.residue_field}((t^{_group_dsl(self.group)}))"

    __repr__ = __str__


def _group_dsl(g: OrderedGroup) -> str:
    s = str(g)
    return s if g.rank <= 1 else f"({s})"


class HahnSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field: HahnField, terms, prec):
        self.field = field
        self.terms = tuple(terms)
        self.prec = prec

    @classmethod
    def _make(cls, field, terms, prec):
        k = field.residue_field
        acc = {}
        for e, c in terms:
            if prec is not None and e >= prec:
                continue
            if e in acc:
                acc[e] = k.add(acc[e], c)
            else:
                acc[e] = c
        items = sorted(((e, c) for e, c in acc.items() if not k.is_zero(c)),
                       key=lambda t: t[0].coords)
        return cls(field, items, prec)

    # -- predicates ------------------------------------------------------------
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.terms and self.prec is None

    def is_zero_up_to_precision(self) -> bool:
        return not self.terms and self.prec is not None

    def valuation_lower_bound(self):
        """The value if known, else the precision (x = O(t^prec))."""
        if self.terms:
            return self.terms[0][0]
        return INFINITY if self.prec is None else self.prec

    def coefficient(self, e: GroupElem):
        for ex, c in self.terms:
            if ex == e:
                return c
        return self.field.residue_field.zero

    def truncate(self, prec: GroupElem) -> "HahnSeries":
        return HahnSeries._make(self.field, self.terms, _min_prec(self.prec, prec))

    def exact_part(self) -> "HahnSeries":
        return HahnSeries(self.field, self.terms, None)

    def positive_part(self) -> "HahnSeries":
        return HahnSeries(self.field, [(e, c) for e, c in self.terms if e.sign() > 0], self.prec)

    def negative_part(self) -> "HahnSeries":
        return HahnSeries(self.field, [(e, c) for e, c in self.terms if e.sign() < 0], None)

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> Optional["HahnSeries"]:
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return HahnSeries._make(self.field, self.terms + other.terms,
                                _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        k = self.field.residue_field
        return HahnSeries(self.field, [(e, k.neg(c)) for e, c in self.terms], self.prec)

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
        return self._mul(other)

    __rmul__ = __mul__

    def _mul(self, other, prec=None):
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        cut = None
        if self.prec is not None:
            cut = _min_prec(cut, self.prec + other.valuation_lower_bound())
        if other.prec is not None:
            cut = _min_prec(cut, other.prec + self.valuation_lower_bound())
        cut = _min_prec(cut, prec)
        k = self.field.residue_field
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if cut is not None and e >= cut:
                    # terms are sorted, so later e2 only get larger
                    break
                c = k.mul(c1, c2)
                acc[e] = k.add(acc[e], c) if e in acc else c
        return HahnSeries._make(self.field, acc.items(), cut)

    def mul_truncated(self, other, prec: GroupElem) -> "HahnSeries":
        return self._mul(self.field.coerce(other), prec)

    def inverse(self, prec: Optional[GroupElem] = None) -> "HahnSeries":
        """Multiplicative inverse.

        For an exact element the result carries absolute precision ``prec``
        (default: the field's default precision counted relative to ``-v(x)``).
        """
        if self.is_zero():
            raise DivisionByZero("inverse of exact zero")
        if not self.terms:
            raise PrecisionExhausted("cannot invert an element that is zero up to precision")
        k = self.field.residue_field
        e0, c0 = self.terms[0]
        c_inv = k.inv(c0)
        if self.prec is None and len(self.terms) == 1:
            return HahnSeries(self.field, ((-e0, c_inv),), None)
        if self.prec is not None:
            target = self.prec - e0 - e0
            if prec is not None:
                target = min(target, prec)
        else:
            target = prec if prec is not None else self.field.default_prec - e0
        rel = target + e0
        # x = c0 t^e0 (1 + u)
        u = HahnSeries._make(self.field,
                             [(e - e0, k.mul(c, c_inv)) for e, c in self.terms[1:]],
                             None if self.prec is None else self.prec - e0)
        if u.is_zero():
            acc = self.field.one().truncate(rel)
        else:
            w = u.valuation_lower_bound()
            if w is INFINITY or w.sign() <= 0:
                raise PrecisionExhausted("cannot bound the expansion of the inverse")
            if steps_to_reach(w, rel) is None:
                raise PrecisionExhausted(
                    f"no finite number of terms reaches relative precision {rel}")
            neg_u = -u
            acc = self.field.one().truncate(rel)
            power = self.field.one()
            while True:
                power = power._mul(neg_u, rel)
                if not power.terms:
                    acc = acc + power
                    break
                acc = acc + power
        scale = HahnSeries(self.field, ((-e0, c_inv),), None)
        return acc._mul(scale).truncate(target)

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

    def frobenius(self) -> "HahnSeries":
        """x^p in characteristic p: coefficient-wise, exact in precision."""
        k = self.field.residue_field
        p = k.char
        if p == 0:
            raise ValueError("Frobenius needs positive characteristic")
        return HahnSeries(self.field, [(e * p, k.pow(c, p)) for e, c in self.terms],
                          None if self.prec is None else self.prec * p)

    def frobenius_inverse(self) -> "HahnSeries":
        k = self.field.residue_field
        p = k.char
        new = []
        for e, c in self.terms:
            f = e / p
            if not self.field.group.contains(f):
                raise ValueError(f"exponent {f} not in {self.field.group}")
            new.append((f, k.pth_root(c)))
        return HahnSeries(self.field, new, None if self.prec is None else self.prec / p)

    # -- comparison/printing -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms and self.prec == other.prec

    __hash__ = None

    def __str__(self):
        return format_hahn(self)

    __repr__ = __str__


def format_exponent(e: GroupElem) -> str:
    if e.rank == 1:
        c = e.coords[0]
        return str(c) if c.denominator == 1 and c >= 0 else f"({c})"
    return "(" + ", ".join(str(c) for c in e.coords) + ")"


def format_hahn(x: HahnSeries) -> str:
    k = x.field.residue_field
    parts = []
    for e, c in x.terms:
        cs = k.format(c)
        if e.is_zero():
            parts.append(cs)
            continue
        mono = "t" if e.rank == 1 and e.coords[0] == 1 else f"t^{format_exponent(e)}"
        parts.append(mono if c == k.one else f"{cs}*{mono}")
    if x.prec is not None:
        parts.append(f"O(t^{format_exponent(x.prec)})")
    return " + ".join(parts) if parts else "0"
