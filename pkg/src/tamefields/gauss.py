"""The mixed Gauss valuation on K[x_1..x_r, y_1..y_s].

The x_i get values that are rationally independent over vK, the y_j are
units whose residues are algebraically independent over Kv.  Values live in
an ambient group whose trailing coordinates carry vK.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DependentValues, DimensionMismatch, NonUnitValue
from .ogroup import INFINITY, Atom, GroupElem, OrderedGroup, rational_rank


class MPoly:
    """Sparse polynomial in x_1..x_r, y_1..y_s keyed by ((mu...), (nu...))."""

    __slots__ = ("field", "nx", "ny", "terms")

    def __init__(self, field, nx: int, ny: int, terms: Mapping = ()):
        self.field = field
        self.nx = nx
        self.ny = ny
        acc: dict = {}
        for (mu, nu), c in dict(terms).items():
            mu, nu = tuple(mu), tuple(nu)
            if len(mu) != nx or len(nu) != ny:
                raise DimensionMismatch("exponent tuple has the wrong length")
            if any(m < 0 for m in mu + nu):
                raise ValueError("negative exponent")
            c = field.coerce(c)
            acc[(mu, nu)] = acc[(mu, nu)] + c if (mu, nu) in acc else c
        self.terms = {key: c for key, c in acc.items() if not c.is_zero()}

    @classmethod
    def constant(cls, field, nx, ny, c):
        return cls(field, nx, ny, {((0,) * nx, (0,) * ny): c})

    @classmethod
    def x(cls, field, nx, ny, i):
        mu = tuple(int(j == i) for j in range(nx))
        return cls(field, nx, ny, {(mu, (0,) * ny): field.one()})

    @classmethod
    def y(cls, field, nx, ny, j):
        nu = tuple(int(i == j) for i in range(ny))
        return cls(field, nx, ny, {((0,) * nx, nu): field.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.constant(self.field, self.nx, self.ny, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return MPoly(self.field, self.nx, self.ny, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.field, self.nx, self.ny, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        terms: dict = {}
        for (m1, n1), c1 in self.terms.items():
            for (m2, n2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(m1, m2)), tuple(a + b for a, b in zip(n1, n2)))
                c = c1 * c2
                terms[key] = terms[key] + c if key in terms else c
        return MPoly(self.field, self.nx, self.ny, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MPoly.constant(self.field, self.nx, self.ny, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return (self.nx, self.ny) == (other.nx, other.ny) and self.terms.keys() == other.terms.keys() \
            and all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (mu, nu), c in sorted(self.terms.items(), reverse=True):
            mono = [f"x{i + 1}" + (f"^{m}" if m > 1 else "") for i, m in enumerate(mu) if m]
            mono += [f"y{j + 1}" + (f"^{m}" if m > 1 else "") for j, m in enumerate(nu) if m]
            cs = str(c)
            if " " in cs or cs.startswith("-"):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == self.field.one():
                parts.append("*".join(mono))
            else:
                parts.append("*".join([cs] + mono))
        return " + ".join(parts)

    __repr__ = __str__


class ResiduePoly(dict):
    """Polynomial over the residue field: {nu: coefficient}, zero terms dropped."""

    def __init__(self, k, ny: int, terms=()):
        super().__init__((nu, c) for nu, c in dict(terms).items() if not k.is_zero(c))
        self.k = k
        self.ny = ny

    def evaluate(self, point: Sequence):
        k = self.k
        acc = k.zero
        for nu, c in self.items():
            term = c
            for r, m in zip(point, nu):
                term = k.mul(term, k.pow(r, m))
            acc = k.add(acc, term)
        return acc

    def __mul__(self, other):
        k = self.k
        out: dict = {}
        for n1, c1 in self.items():
            for n2, c2 in other.items():
                key = tuple(a + b for a, b in zip(n1, n2))
                out[key] = k.add(out.get(key, k.zero), k.mul(c1, c2))
        return ResiduePoly(k, self.ny, out)

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for nu, c in sorted(self.items(), reverse=True):
            mono = [f"Y{j + 1}" + (f"^{m}" if m > 1 else "") for j, m in enumerate(nu) if m]
            cs = self.k.format(c)
            if not mono:
                parts.append(cs)
            elif c == self.k.one:
                parts.append("*".join(mono))
            else:
                parts.append("*".join([cs] + mono))
        return " + ".join(parts)


@dataclass(frozen=True)
class GaussAssignment:
    base: object
    x_vals: tuple
    y_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x_vals", tuple(self.x_vals))
        rk = self.ambient_rank
        for g in self.x_vals:
            if g.rank != rk:
                raise DimensionMismatch("x values must share one ambient rank")
        if rk < self.base.group.rank:
            raise DimensionMismatch("ambient rank below the rank of vK")
        vk_span = [self.embed(self.base.group.unit(i)) for i in range(self.base.group.rank)]
        vectors = [g.coords for g in vk_span] + [g.coords for g in self.x_vals]
        if rational_rank(vectors) != len(vectors):
            raise DependentValues("x values are not rationally independent over vK")

    @property
    def ambient_rank(self) -> int:
        return self.x_vals[0].rank if self.x_vals else self.base.group.rank

    @property
    def nx(self) -> int:
        return len(self.x_vals)

    def embed(self, g: GroupElem) -> GroupElem:
        pad = self.ambient_rank - g.rank
        return GroupElem((Fraction(0),) * pad + g.coords)

    def ambient_group(self) -> OrderedGroup:
        """A group containing vK and all x values (used for witnesses)."""
        pad = self.ambient_rank - self.base.group.rank
        return OrderedGroup((Atom.Q(),) * pad + tuple(Atom.Q() for _ in self.base.group.factors))

    def poly(self, terms) -> MPoly:
        return MPoly(self.base, self.nx, self.y_count, terms)


def _term_value(A: GaussAssignment, mu, c) -> GroupElem:
    v = A.embed(A.base.value(c))
    for m, g in zip(mu, A.x_vals):
        if m:
            v = v + g * m
    return v


def _check(A: GaussAssignment, f: MPoly):
    if (f.nx, f.ny) != (A.nx, A.y_count):
        raise DimensionMismatch("polynomial variables do not match the assignment")


def gauss_value(A: GaussAssignment, f: MPoly):
    """Least value of the monomials of f."""
    _check(A, f)
    if f.is_zero():
        return INFINITY
    return min(_term_value(A, mu, c) for (mu, _), c in f.terms.items())


def leading_form(A: GaussAssignment, f: MPoly):
    """(w, R) with w = gauss_value(f) and R the residue of f scaled to value 0."""
    w = gauss_value(A, f)
    if w is INFINITY:
        return w, ResiduePoly(A.base.residue_field, A.y_count)
    k = A.base.residue_field
    out = {}
    for (mu, nu), c in f.terms.items():
        if _term_value(A, mu, c) == w:
            out[nu] = A.base.leading_term(c)[0]
    return w, ResiduePoly(k, A.y_count, out)


def gauss_residue(A: GaussAssignment, f: MPoly) -> ResiduePoly:
    w = gauss_value(A, f)
    if w is INFINITY or not w.is_zero():
        raise NonUnitValue(f"residue needs Gauss value 0, got {w}")
    k = A.base.residue_field
    out = {}
    for (mu, nu), c in f.terms.items():
        if not any(mu) and A.base.value(c).is_zero():
            out[nu] = A.base.residue(c)
    return ResiduePoly(k, A.y_count, out)


def witness_value(A: GaussAssignment, f: MPoly, point: Sequence):
    """Value of f at x_i = t^(v x_i), y_j = point[j] in a Hahn field over the ambient group.

    ``point`` holds nonzero residues.  The result equals gauss_value(f)
    unless the leading form vanishes at ``point``, in which case it is larger.
    Only exact Hahn coefficients are supported.
    """
    from .valfield import HahnField

    _check(A, f)
    base = A.base
    if base.backend != "HAHN":
        raise TypeError("witness evaluation needs a Hahn base field")
    k = base.residue_field
    L = HahnField(k, A.ambient_group())
    acc = L.zero()
    for (mu, nu), c in f.terms.items():
        if not c.is_exact():
            raise ValueError("witness evaluation needs exact coefficients")
        shift = GroupElem((Fraction(0),) * A.ambient_rank)
        for m, g in zip(mu, A.x_vals):
            shift = shift + g * m
        scale = k.one
        for r, m in zip(point, nu):
            scale = k.mul(scale, k.pow(r, m))
        acc = acc + L.series([(A.embed(e) + shift, k.mul(a, scale)) for e, a in c.terms])
    return L.value(acc)


# ---------------------------------------------------------------------------
# transcendence bases and the transcendence-degree inequality
# ---------------------------------------------------------------------------

class WTD(enum.Enum):
    EQUALITY = "EQUALITY"
    STRICT = "STRICT"
    VIOLATION = "VIOLATION"


def wtd_check(trdeg: int, residue_trdeg: int, value_dim: int) -> WTD:
    if min(trdeg, residue_trdeg, value_dim) < 0:
        raise ValueError("inputs must be non-negative")
    rhs = residue_trdeg + value_dim
    if trdeg == rhs:
        return WTD.EQUALITY
    return WTD.STRICT if trdeg > rhs else WTD.VIOLATION


@dataclass(frozen=True)
class ValuedExtensionData:
    """L|K seen through generators of Q(x)vK, Q(x)vL and trdeg of Lv|Kv."""
    base_values: tuple
    value_gens: tuple
    residue_trdeg: int = 0


@dataclass(frozen=True)
class SVTBReport:
    ok: bool
    reasons: tuple = ()

    def __bool__(self):
        return self.ok


def check_svtb(ext: ValuedExtensionData, x_values: Sequence[GroupElem],
               y_residue_count: int = 0) -> SVTBReport:
    """Do the x values and y residues form a standard valuation transcendence basis?

    Residues are described only by their number; they are taken to be
    algebraically independent over Kv.
    """
    reasons = []
    base = [g.coords for g in ext.base_values]
    xs = [g.coords for g in x_values]
    full = base + [g.coords for g in ext.value_gens]
    rb = rational_rank(base)
    with_x = rational_rank(base + xs)
    rf = rational_rank(full)
    if with_x - rb != len(xs):
        reasons.append("x values are not rationally independent over vK")
    if rational_rank(full + xs) != rf:
        reasons.append("x values leave Q(x)vL")
    elif with_x != rf:
        reasons.append(f"x values span rank {with_x - rb}, need {rf - rb}")
    if y_residue_count != ext.residue_trdeg:
        reasons.append(f"{y_residue_count} residues for residue transcendence degree {ext.residue_trdeg}")
    return SVTBReport(not reasons, tuple(reasons))
