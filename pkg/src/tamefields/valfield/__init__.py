"""Valued-field backends and the value/residue/arithmetic entry points."""

from __future__ import annotations

from ..errors import DivisionByZero, UnsupportedBackend
from ..ogroup import INFINITY
from .hahn import HahnField, HahnSeries, format_hahn, steps_to_reach
from .ratfunc import RatFuncElem, RatFuncField

ValuedFieldDesc = HahnField | RatFuncField

__all__ = [
    "HahnField", "HahnSeries", "RatFuncField", "RatFuncElem", "ValuedFieldDesc",
    "vf_value", "vf_residue", "vf_arith", "vf_perfect_hull_lift", "format_hahn",
    "steps_to_reach", "INFINITY",
]


def vf_value(K, x):
    return K.value(x)


def vf_residue(K, x):
    return K.residue(x)


def vf_arith(K, op: str, x, y=None):
    op = op.upper()
    x = K.coerce(x)
    if op == "NEG":
        return -x
    if op == "INV":
        if x.is_zero():
            raise DivisionByZero("inverse of zero")
        return x.inverse()
    y = K.coerce(y)
    if op == "ADD":
        return x + y
    if op == "MUL":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def vf_perfect_hull_lift(K, levels: int):
    """Descriptor admitting exponent denominators up to p^levels, plus an embedding."""
    if not isinstance(K, RatFuncField):
        raise UnsupportedBackend("choose a p-divisible value group for Hahn fields instead")
    if K.p == 1:
        raise UnsupportedBackend("perfect hull lift needs residue characteristic p > 0")
    L = K.lift(levels)

    def embed(x: RatFuncElem) -> RatFuncElem:
        return RatFuncElem(L, dict(x.num), dict(x.den))

    return L, embed
