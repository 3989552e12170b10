"""Pseudo-Cauchy sequences: validation, value traces of polynomials, limits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import PrecisionExhausted, TailTooShort
from .extension import is_power_of
from .hensel import NoRoot, _as_group_elem
from .ogroup import INFINITY, GroupElem

MIN_TAIL = 3
LIMIT_STEP_BOUND = 256


class NoLimit(NoRoot):
    """Falsy answer: the sequence has no limit in the field (at this precision)."""


class LeavesField(Exception):
    """Raised by a generator whose next term is not an element of K."""


Generator = Callable[[list], Optional[object]]


@dataclass(frozen=True)
class PCSPrefix:
    terms: tuple
    generator: Optional[Generator] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def extend(self, count: int) -> "PCSPrefix":
        """Append up to ``count`` generated terms (fewer if the generator stops or leaves K)."""
        if self.generator is None:
            raise ValueError("prefix has no generator")
        terms = list(self.terms)
        for _ in range(count):
            try:
                nxt = self.generator(terms)
            except LeavesField:
                break
            if nxt is None:
                break
            terms.append(nxt)
        return PCSPrefix(terms, self.generator, self.name)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def geometric_prefix(K, steps: int, step_value=1) -> PCSPrefix:
    """a_0 = 1, a_{n+1} = a_n + t^((n+1) w)."""
    w = _as_group_elem(K, step_value)

    def gen(terms):
        return terms[-1] + K.t_power(w * len(terms))

    return PCSPrefix([K.one()], gen, "geometric").extend(steps)


def artin_schreier_prefix(K, a, steps: int) -> PCSPrefix:
    """a_0 = 0, then add the leading correction of a - (x^p - x) each step.

    The generator stops once the residual has value >= 0 or vanishes and
    raises :class:`LeavesField` when the next exponent is not in vK.
    """
    p = K.char
    a = K.coerce(a)
    k = K.residue_field

    def gen(terms):
        x = terms[-1]
        r = a - x.frobenius() + x
        if r.is_zero():
            return None
        c, gamma = K.leading_term(r)
        if gamma.sign() >= 0:
            return None
        delta = gamma / p
        if not K.vg_contains(delta):
            raise LeavesField(f"exponent {delta} not in {K.vg_describe()}")
        return x + K.monomial(k.pth_root(c), delta)

    return PCSPrefix([K.zero()], gen, f"artin-schreier:{a}").extend(steps)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Validation:
    ok: bool
    index: Optional[int] = None
    gaps: tuple = ()

    def __bool__(self):
        return self.ok


def difference_values(K, terms: Sequence) -> list:
    return [K.value(b - a) for a, b in zip(terms, terms[1:])]


def pcs_validate(K, terms: Sequence) -> Validation:
    """Is v(a_{n+1} - a_n) strictly increasing?  Reports the first bad index."""
    if len(terms) < 3:
        raise ValueError("need at least three terms")
    gaps = difference_values(K, terms)
    for i, g in enumerate(gaps):
        if g is INFINITY:
            return Validation(False, i, tuple(gaps))
        if i and not g > gaps[i - 1]:
            return Validation(False, i, tuple(gaps))
    return Validation(True, None, tuple(gaps))


# ---------------------------------------------------------------------------
# value traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fit:
    kind: str                # "FIXED", "AFFINE" or "NONE"
    beta: Optional[GroupElem] = None
    h: Optional[Fraction] = None
    tail_start: Optional[int] = None

    def __str__(self):
        if self.kind == "FIXED":
            return f"FIXED({self.beta})"
        if self.kind == "AFFINE":
            return f"AFFINE({self.beta}, h={self.h})"
        return "NONE"


@dataclass(frozen=True)
class PolyTrace:
    values: tuple           # v(f(a_n)) for every stored term
    gaps: tuple             # v(a_{n+1} - a_n), standing in for v(x - a_n)
    fit: Fit


def _solve_h(dv: GroupElem, dg: GroupElem) -> Optional[Fraction]:
    """h with dv = h*dg, or None."""
    j = next((i for i, c in enumerate(dg.coords) if c != 0), None)
    if j is None:
        return Fraction(0) if dv.is_zero() else None
    h = dv.coords[j] / dg.coords[j]
    return h if dg * h == dv else None


def _affine_tail(values, gaps):
    """Longest suffix on which values = beta + h*gaps for one (beta, h)."""
    n = len(gaps)
    if n < 2 or values[-1] is INFINITY or values[-2] is INFINITY:
        return None
    h = _solve_h(values[-1] - values[-2], gaps[-1] - gaps[-2])
    if h is None:
        return None
    beta = values[-1] - gaps[-1] * h
    start = n - 1
    while start > 0:
        v = values[start - 1]
        if v is INFINITY or v != beta + gaps[start - 1] * h:
            break
        start -= 1
    return beta, h, start


def pcs_poly_trace(K, prefix: PCSPrefix, f, min_tail: int = MIN_TAIL) -> PolyTrace:
    """Values v(f(a_n)) and their eventual shape beta + h*v(x - a_n)."""
    terms = list(prefix.terms)
    if len(terms) < 2:
        raise TailTooShort("need at least two terms")
    values = [K.value(f(a)) for a in terms]
    gaps = difference_values(K, terms)
    pairs = len(gaps)
    if pairs < min_tail:
        raise TailTooShort(f"{pairs} usable terms, need {min_tail}")
    vals = values[:pairs]
    fit = Fit("NONE")
    found = _affine_tail(vals, gaps)
    if found is not None:
        beta, h, start = found
        if pairs - start >= min_tail:
            if h == 0:
                fit = Fit("FIXED", beta, None, start)
            elif h.denominator == 1 and h > 0 and is_power_of(int(h), K.p):
                fit = Fit("AFFINE", beta, h, start)
    return PolyTrace(tuple(values), tuple(gaps), fit)


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def pcs_limit_in_field(K, prefix: PCSPrefix, prec, step_bound: int = LIMIT_STEP_BOUND):
    """Extend the sequence until consecutive differences reach ``prec``.

    Returns the last term (a limit up to ``prec``), or a :class:`NoLimit`
    when the generator leaves K.
    """
    if prefix.generator is None:
        raise ValueError("prefix has no generator")
    prec = _as_group_elem(K, prec)
    terms = list(prefix.terms)
    for _ in range(step_bound):
        try:
            nxt = prefix.generator(terms)
        except LeavesField as exc:
            return NoLimit("exponent_not_in_group", str(exc))
        if nxt is None:
            return terms[-1]
        gap = K.value(nxt - terms[-1])
        terms.append(nxt)
        if gap is INFINITY or gap >= prec:
            return nxt
    raise PrecisionExhausted(f"differences stay below {prec} after {step_bound} terms")
