"""Univariate polynomials with coefficients in a valued field."""

from __future__ import annotations

from typing import Sequence


class UPoly:
    """Dense polynomial ``sum coeffs[i] * X^i`` over a valued field.

    Coefficients that are exactly zero are trimmed from the top; a
    coefficient that is zero only up to precision is kept, since its value
    is unknown.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Sequence):
        self.field = field
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __call__(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def _lift(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return UPoly(self.field, [])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UPoly(self.field, [self.field.one()])
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.field == other.field and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self):
        return format_upoly(self)

    __repr__ = __str__


def _wrap(s: str) -> str:
    if any(ch in s for ch in "+ ") or s.startswith("-"):
        return f"({s})"
    return s


def format_upoly(f: UPoly, var: str = "X") -> str:
    if f.is_zero():
        return "0"
    one = f.field.one()
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c.is_zero():
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(_wrap(str(c)))
        elif c == one:
            parts.append(mono)
        else:
            parts.append(f"{_wrap(str(c))}*{mono}")
    return " + ".join(parts)
