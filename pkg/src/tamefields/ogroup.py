"""Ordered abelian groups of finite rank.

A group is a lexicographic product of atoms ``Z``, ``Q`` and ``Z[1/m]``
(``m`` squarefree), the left-most factor being the most significant.
Elements are tuples of exact rationals, one coordinate per factor; the
lexicographic order on tuples is the group order.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence

from .errors import BoundExceeded, DimensionMismatch, NotPrime

DEFAULT_ORDER_BOUND = 10**4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@total_ordering
class _Infinity:
    """The value of zero; larger than every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("INFINITY")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class GroupElem:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def _check(self, other: "GroupElem"):
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(f"rank {len(self.coords)} vs {len(other.coords)}")

    def __add__(self, other):
        if other is INFINITY:
            return INFINITY
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return GroupElem(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return GroupElem(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElem(tuple(-a for a in self.coords))

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return GroupElem(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return GroupElem(tuple(a / k for a in self.coords))

    # Comparisons against INFINITY: every element is smaller.
    def __lt__(self, other):
        if other is INFINITY:
            return True
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other):
        if other is INFINITY:
            return True
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords <= other.coords

    def __gt__(self, other):
        if other is INFINITY:
            return False
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords > other.coords

    def __ge__(self, other):
        if other is INFINITY:
            return False
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return self.coords >= other.coords

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"GroupElem({self})"


@dataclass(frozen=True)
class Atom:
    """One lexicographic factor: ``Z`` (primes=()), ``Q`` or ``Z[1/m]``."""

    kind: str
    primes: tuple = ()

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zloc"):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == "Zloc":
            if not self.primes:
                raise ValueError("Z[1/m] needs at least one prime")
            for p in self.primes:
                if not is_prime(p):
                    raise NotPrime(f"{p} is not prime")
            object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))

    @classmethod
    def Z(cls):
        return cls("Z")

    @classmethod
    def Q(cls):
        return cls("Q")

    @classmethod
    def Zinv(cls, *primes):
        return cls("Zloc", tuple(primes))

    def contains(self, c: Fraction) -> bool:
        c = Fraction(c)
        if self.kind == "Q":
            return True
        den = c.denominator
        for p in self.primes:
            while den % p == 0:
                den //= p
        return den == 1

    def is_divisible_by(self, n: int) -> bool:
        if self.kind == "Q":
            return True
        return all(q in self.primes for q in prime_factors(n))

    def order_of(self, c: Fraction) -> int:
        """Least k >= 1 with k*c in this atom."""
        if self.kind == "Q":
            return 1
        den = Fraction(c).denominator
        for p in self.primes:
            while den % p == 0:
                den //= p
        return den

    def __str__(self):
        if self.kind == "Zloc":
            return f"Z[1/{math.prod(self.primes)}]"
        return self.kind


@dataclass(frozen=True)
class OrderedGroup:
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def elem(self, *coords) -> GroupElem:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        e = GroupElem(tuple(coords))
        if e.rank != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {e.rank}")
        return e

    @property
    def zero(self) -> GroupElem:
        return GroupElem((0,) * self.rank)

    def unit(self, i: int) -> GroupElem:
        c = [0] * self.rank
        c[i] = 1
        return GroupElem(tuple(c))

    def contains(self, a: GroupElem) -> bool:
        if a.rank != self.rank:
            return False
        return all(f.contains(c) for f, c in zip(self.factors, a.coords))

    def validate(self, a: GroupElem) -> GroupElem:
        if a.rank != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {a.rank}")
        if not self.contains(a):
            raise ValueError(f"{a} is not an element of {self}")
        return a

    def divide(self, a: GroupElem, n: int) -> Optional[GroupElem]:
        """Return ``a/n`` if it lies in the group, else None."""
        b = a / n
        return b if self.contains(b) else None

    def infinitely_divisible(self, a: GroupElem, p: int) -> bool:
        """True iff a/p^m lies in the group for every m >= 0."""
        return self.contains(a) and all(
            c == 0 or f.is_divisible_by(p) for f, c in zip(self.factors, a.coords))

    def is_p_divisible(self, p: int):
        for i, f in enumerate(self.factors):
            if not f.is_divisible_by(p):
                return False, self.unit(i)
        return True, None

    def is_divisible(self) -> bool:
        return all(f.kind == "Q" for f in self.factors)

    def p_divisible_hull(self, p: int) -> "OrderedGroup":
        out = []
        for f in self.factors:
            if f.kind == "Q" or f.is_divisible_by(p):
                out.append(f)
            else:
                out.append(Atom.Zinv(*(f.primes + (p,))))
        return OrderedGroup(tuple(out))

    def order_mod_group(self, a: GroupElem) -> int:
        """Least k >= 1 with k*a in this group (a taken in the divisible hull)."""
        if a.rank != self.rank:
            raise DimensionMismatch("rank mismatch")
        k = 1
        for f, c in zip(self.factors, a.coords):
            k = math.lcm(k, f.order_of(c))
        return k

    def random_element(self, rng: random.Random, size: int = 6, depth: int = 2) -> GroupElem:
        coords = []
        for f in self.factors:
            num = rng.randint(-size, size)
            if f.kind == "Z":
                den = 1
            elif f.kind == "Q":
                den = rng.randint(1, size)
            else:
                den = math.prod(rng.choice(f.primes) ** rng.randint(0, depth) for _ in range(1))
            coords.append(Fraction(num, den))
        return GroupElem(tuple(coords))

    def __str__(self):
        if not self.factors:
            return "0"
        return " x ".join(str(f) for f in self.factors)


# Functional interface.
OGroupDesc = OrderedGroup
OGroupElem = GroupElem


def og_add(g: OrderedGroup, a: GroupElem, b: GroupElem) -> GroupElem:
    for x in (a, b):
        if x.rank != g.rank:
            raise DimensionMismatch(f"element of rank {x.rank} in group of rank {g.rank}")
    return a + b


def og_cmp(g: OrderedGroup, a: GroupElem, b: GroupElem) -> Cmp:
    for x in (a, b):
        if x.rank != g.rank:
            raise DimensionMismatch(f"element of rank {x.rank} in group of rank {g.rank}")
    if a.coords < b.coords:
        return Cmp.LT
    if a.coords > b.coords:
        return Cmp.GT
    return Cmp.EQ


def og_is_p_divisible(g: OrderedGroup, p: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return g.is_p_divisible(p)


def rational_rank(vectors: Iterable[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                m = rows[r][col] / rows[rank][col]
                rows[r] = [x - m * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def og_rationally_independent(g: OrderedGroup, over: Sequence[GroupElem],
                              elems: Sequence[GroupElem]) -> bool:
    """True iff ``elems`` are linearly independent in Q (x) g modulo the span of ``over``."""
    base = rational_rank(e.coords for e in over) if over else 0
    full = rational_rank([e.coords for e in over] + [e.coords for e in elems]) if (over or elems) else 0
    return full - base == len(elems)


def _integer_lattice_basis(rows: list[list[int]]) -> list[list[int]]:
    """Echelon Z-basis of the lattice spanned by integer rows."""
    rows = [r[:] for r in rows if any(r)]
    basis = []
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            reduced = [pivot]
            for r in active[1:]:
                q = r[col] // pivot[col]
                nr = [x - q * y for x, y in zip(r, pivot)]
                if any(nr):
                    reduced.append(nr)
            active = [r for r in reduced if r[col] != 0]
            rest.extend(r for r in reduced if r[col] == 0 and any(r))
        if active:
            basis.append(active[0])
        rows = rest
    return basis


def og_quotient_order(g: OrderedGroup, a: GroupElem,
                      sub_gens: Optional[Sequence[GroupElem]] = None,
                      bound: int = DEFAULT_ORDER_BOUND):
    """Least k >= 1 with ``k*a`` in the subgroup generated by ``sub_gens``.

    ``sub_gens=None`` means the subgroup is ``g`` itself. Returns INFINITY
    when no multiple of ``a`` lies in the subgroup.
    """
    if sub_gens is None:
        k = g.order_mod_group(a)
    else:
        for s in sub_gens:
            if s.rank != a.rank:
                raise DimensionMismatch("rank mismatch")
        den = 1
        for v in list(sub_gens) + [a]:
            for c in v.coords:
                den = math.lcm(den, c.denominator)
        lattice = _integer_lattice_basis(
            [[int(c * den) for c in s.coords] for s in sub_gens])
        target = [c * den for c in a.coords]
        coeffs = _solve_in_span(lattice, target)
        if coeffs is None:
            return INFINITY
        k = 1
        for c in coeffs:
            k = math.lcm(k, c.denominator)
    if k > bound:
        raise BoundExceeded(f"order {k} exceeds bound {bound}")
    return k


def _solve_in_span(basis: list[list[int]], target: list[Fraction]):
    """Coefficients of ``target`` in the echelon ``basis`` over Q, or None."""
    rest = [Fraction(x) for x in target]
    coeffs = []
    for row in basis:
        col = next(i for i, x in enumerate(row) if x != 0)
        c = rest[col] / row[col]
        coeffs.append(c)
        rest = [x - c * y for x, y in zip(rest, row)]
    if any(rest):
        return None
    return coeffs
