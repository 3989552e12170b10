"""Hensel lifting, Newton polygons and Artin-Schreier roots by support recursion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import PrecisionExhausted, PreconditionFailed
from .ogroup import INFINITY, GroupElem
from .upoly import UPoly

MAX_NEWTON_ITERATIONS = 64
AS_STEP_BOUND = 64


def _as_group_elem(K, e) -> GroupElem:
    if isinstance(e, GroupElem):
        return e
    if isinstance(e, tuple):
        return GroupElem(tuple(Fraction(c) for c in e))
    return GroupElem((Fraction(e),))


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    slope: GroupElem

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def root_value(self) -> GroupElem:
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    segments: tuple
    zero_root_multiplicity: int = 0

    def root_values(self) -> list[tuple[GroupElem, int]]:
        """Pairs (value, multiplicity) of the nonzero roots, largest value first."""
        return [(s.root_value, s.length) for s in self.segments]

    def slope_multiset(self) -> list[GroupElem]:
        out = []
        for s in self.segments:
            out.extend([s.slope] * s.length)
        return sorted(out, key=lambda g: g.coords)


def newton_polygon(K, f: UPoly) -> NewtonPolygon:
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    zeros = 0
    while f[zeros].is_zero():
        zeros += 1
    pts = []
    for i in range(zeros, f.degree + 1):
        c = f[i]
        if c.is_zero():
            continue
        pts.append((i - zeros, K.value(c)))  # PrecisionLoss propagates
    hull: list[tuple[int, GroupElem]] = []
    for pt in pts:
        while len(hull) >= 2:
            (i0, v0), (i1, v1) = hull[-2], hull[-1]
            s01 = (v1 - v0) / (i1 - i0)
            s1p = (pt[1] - v1) / (pt[0] - i1)
            if s01 >= s1p:
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = tuple(Segment(a[0], b[0], (b[1] - a[1]) / (b[0] - a[0]))
                 for a, b in zip(hull, hull[1:]))
    return NewtonPolygon(tuple(hull), segs, zeros)


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------

@dataclass
class HenselResult:
    root: object
    iterations: int
    trace: list = field(default_factory=list)  # (v(f(z_k)), v(f'(z_k))) per step
    approximations: list = field(default_factory=list)  # z_0 = y0, z_1, ...

    def __iter__(self):
        return iter((self.root, self.iterations))


def _positive(v) -> bool:
    return v is INFINITY or v.sign() > 0


def hensel_lift(K, f: UPoly, y0, target_prec) -> HenselResult:
    """Newton iteration z <- z - f(z)/f'(z) from y0 until v(f(z)) >= target_prec."""
    target = _as_group_elem(K, target_prec)
    y0 = K.coerce(y0)
    for c in f.coeffs:
        if not c.is_zero() and K.value(c).sign() < 0:
            raise PreconditionFailed("integral", f"coefficient {c} has negative value")
    df = f.derivative()
    fz = f(y0)
    vfz = K.value(fz)
    if not _positive(vfz):
        raise PreconditionFailed("residual", f"v(f(y0)) = {vfz} is not positive")
    dz = df(y0)
    if dz.is_zero() or not K.value(dz).is_zero():
        vd = INFINITY if dz.is_zero() else K.value(dz)
        raise PreconditionFailed("unit_derivative", f"v(f'(y0)) = {vd} is not 0")

    z = y0
    approx = [z]
    trace = []
    exact = K.backend == "RATFUNC"
    iterations = 0
    while True:
        fz = f(z)
        if fz.is_zero():
            break
        vfz = K.value(fz)
        dz = df(z)
        trace.append((vfz, K.value(dz)))
        if vfz >= target:
            break
        if iterations >= MAX_NEWTON_ITERATIONS:
            raise PrecisionExhausted(f"no convergence after {iterations} Newton steps")
        if exact:
            z = z - fz / dz
        else:
            corr = fz.mul_truncated(dz.inverse(prec=target), target)
            z = (z - corr).exact_part()
        iterations += 1
        approx.append(z)
        if len(trace) >= 2 and trace[-1][0] <= trace[-2][0]:
            raise PrecisionExhausted("Newton iteration stopped improving")
    return HenselResult(z, iterations, trace, approx)


def newton_iteration_bound(start, target) -> int:
    """ceil(log2(target/start)) + 1 for rank-one positive values."""
    a, b = start.coords[0], target.coords[0]
    if b <= a:
        return 1
    return math.ceil(math.log2(b / a)) + 1


# ---------------------------------------------------------------------------
# Artin-Schreier roots
# ---------------------------------------------------------------------------

class NoRoot:
    """Falsy answer carrying the reason a root is absent."""

    __slots__ = ("reason", "detail")

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail

    def __bool__(self):
        return False

    def __repr__(self):
        return f"{type(self).__name__}({self.reason!r}, {self.detail!r})"


@dataclass
class ASStep:
    kind: str          # "strip", "residue" or "positive"
    correction_value: object
    residual_value: object


@dataclass
class ASTrace:
    """Record of the successive-approximation loop for X^p - X - a."""
    outcome: str
    approximation: object
    residual: object
    steps: list
    detail: str = ""
    self_similar_at: Optional[int] = None

    @property
    def residual_values(self) -> list:
        return [s.residual_value for s in self.steps]

    @property
    def corrections(self) -> list:
        return [s.correction_value for s in self.steps]


def _as_residue_solve(k, c):
    """Some z in k with z^p - z = c, or None."""
    p = k.char
    for z in k.elements():
        if k.sub(k.pow(z, p), z) == c:
            return z
    return None


def _frobenius_inverse_or_none(r):
    try:
        return r.frobenius_inverse()
    except Exception:
        return None


def artin_schreier_trace(K, a, prec=None, step_bound: int = AS_STEP_BOUND,
                         stop_on_self_similar: bool = False) -> ASTrace:
    """Successively strip the lowest term of a - (x^p - x).

    Outcomes: ``root`` (residual exactly zero), ``precision`` (residual value
    reached ``prec``), ``slope_not_in_group``, ``residue_AS_irreducible``,
    ``level_reached`` (perfect-hull tower bound), ``positive_residual`` (the
    rational function backend cannot sum the positive tail), ``step_bound``,
    ``self_similar`` (only with ``stop_on_self_similar``).

    The residual is self-similar once it is a monomial of negative value: each
    later step just applies the inverse Frobenius to it.
    """
    p = K.char
    if p == 0:
        raise ValueError("Artin-Schreier analysis needs positive characteristic")
    k = K.residue_field
    a = K.coerce(a)
    hahn = K.backend == "HAHN"
    if prec is not None:
        prec = _as_group_elem(K, prec)
    x = K.zero()
    r = a
    steps: list[ASStep] = []
    self_similar = None

    def finish(outcome, detail=""):
        return ASTrace(outcome, x, r, steps, detail, self_similar)

    while True:
        if r.is_zero():
            return finish("root")
        gamma = K.value(r)
        if prec is not None and gamma >= prec:
            return finish("precision")
        if len(steps) >= step_bound:
            return finish("step_bound", f"{step_bound} steps")
        c, _ = K.leading_term(r)
        sign = gamma.sign()
        if sign < 0:
            delta = gamma / p
            if not K.vg_contains(delta):
                return finish("slope_not_in_group", f"{gamma} / {p} = {delta} not in {K.vg_describe()}")
            if K.backend == "RATFUNC" and K.perfect:
                den = delta.coords[0].denominator
                if den > p ** K.level:
                    return finish("level_reached", f"tower level {K.level}")
            y = K.monomial(k.pth_root(c), delta)
            prev = r
            x = x + y
            r = r - y.frobenius() + y
            if (self_similar is None and not r.is_zero()
                    and K.vg_infinitely_divisible(K.value(r), p)):
                if r == _frobenius_inverse_or_none(prev):
                    self_similar = len(steps)
            steps.append(ASStep("strip", delta, INFINITY if r.is_zero() else K.value(r)))
            if stop_on_self_similar and self_similar is not None:
                return finish("self_similar")
        elif sign == 0:
            z = _as_residue_solve(k, c)
            if z is None:
                return finish("residue_AS_irreducible", f"Y^{p} - Y - {k.format(c)} has no root in {k}")
            y = K.constant(z)
            x = x + y
            r = r - y.frobenius() + y
            steps.append(ASStep("residue", gamma, INFINITY if r.is_zero() else K.value(r)))
        else:
            if not hahn:
                return finish("positive_residual", f"residual value {gamma} > 0")
            target = prec if prec is not None else K.default_prec
            # x' = -(r + r^p + r^(p^2) + ...), leaving residual r^(p^N)
            y = K.zero()
            power = r
            n = 0
            while power.valuation_lower_bound() < target:
                y = y - power
                power = power.frobenius()
                n += 1
                if n > step_bound:
                    raise PrecisionExhausted("positive part does not reach the precision")
            x = (x + y.truncate(target)).exact_part()
            r = power
            steps.append(ASStep("positive", gamma, r.valuation_lower_bound()))
            if power.is_zero():
                return finish("root")
            return finish("precision", f"positive tail summed with {n} Frobenius powers")


def as_root_in_field(K, a, prec=None, step_bound: int = AS_STEP_BOUND):
    """A root of X^p - X - a in a Hahn field up to ``prec``, or a :class:`NoRoot`."""
    if K.backend != "HAHN":
        raise ValueError("as_root_in_field needs a Hahn field")
    tr = artin_schreier_trace(K, a, prec=prec, step_bound=step_bound)
    if tr.outcome in ("root", "precision"):
        return tr.approximation
    if tr.outcome == "step_bound":
        raise PrecisionExhausted(tr.detail)
    return NoRoot(tr.outcome, tr.detail)
