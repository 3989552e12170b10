"""Ramification index, inertia degree and defect of simple finite extensions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NotSquarefree, PrecisionLoss, UnsupportedShape
from .finfield import RationalField, fq_poly_factor
from .hensel import AS_STEP_BOUND, artin_schreier_trace, newton_polygon
from .ogroup import GroupElem
from .upoly import UPoly

PROVED = "PROVED"
INCONCLUSIVE = "INCONCLUSIVE"

FLAG_NAMES = ("tame", "purely_wild", "defectless", "immediate", "residue_separable")


def is_power_of(n: int, p: int) -> bool:
    if p == 1:
        return n == 1
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


@dataclass
class ExtensionReport:
    n: Optional[int]
    e: Optional[int]
    f: Optional[int]
    defect: Optional[int]
    flags: frozenset
    confidence: str
    outcome: str
    certificate: list = field(default_factory=list)
    values: list = field(default_factory=list)
    poly_degree: Optional[int] = None
    irreducible: Optional[bool] = None
    notes: list = field(default_factory=list)

    def __getattr__(self, name):
        if name in FLAG_NAMES:
            return name in self.flags
        raise AttributeError(name)

    @property
    def proved(self) -> bool:
        return self.confidence == PROVED

    def to_dict(self) -> dict:
        return {
            "n": self.n, "e": self.e, "f": self.f, "defect": self.defect,
            "flags": sorted(self.flags), "confidence": self.confidence,
            "outcome": self.outcome, "certificate": self.certificate,
            "poly_degree": self.poly_degree, "irreducible": self.irreducible,
            "notes": self.notes,
        }


def _flags(e: int, f: int, d: int, p: int) -> frozenset:
    # finite fields and Q are perfect, so residue extensions are separable
    flags = {"residue_separable"}
    if math.gcd(e, p) == 1 and d == 1:
        flags.add("tame")
    if is_power_of(e, p) and f == 1:
        flags.add("purely_wild")
    if d == 1:
        flags.add("defectless")
    if e == 1 and f == 1:
        flags.add("immediate")
    return frozenset(flags)


def _proved(e, f, d, p, outcome, **kw) -> ExtensionReport:
    return ExtensionReport(e * f * d, e, f, d, _flags(e, f, d, p), PROVED, outcome, **kw)


def _inconclusive(outcome, n=None, e=None, f=None, **kw) -> ExtensionReport:
    return ExtensionReport(n, e, f, None, frozenset(), INCONCLUSIVE, outcome, **kw)


# ---------------------------------------------------------------------------
# Artin-Schreier path
# ---------------------------------------------------------------------------

def artin_schreier_analyze(K, a, step_bound: int = AS_STEP_BOUND) -> ExtensionReport:
    """Analyse K(theta) with theta^p - theta = a by successive approximation."""
    p = K.char
    prec = K.default_prec if K.backend == "HAHN" else None
    tr = artin_schreier_trace(K, a, prec=prec, step_bound=step_bound,
                              stop_on_self_similar=K.backend == "HAHN")
    cert = [{"step": i + 1, "kind": s.kind, "correction_value": str(s.correction_value),
             "residual_value": str(s.residual_value)} for i, s in enumerate(tr.steps)]
    values = tr.residual_values
    kw = dict(certificate=cert, values=values, poly_degree=p)
    if tr.outcome in ("root", "precision"):
        # a residual of positive value has a root by Hensel in a henselian field
        why = "exact root" if tr.outcome == "root" else "residual of positive value, henselian field"
        return _proved(1, 1, 1, p, "ROOT-IN-K", irreducible=False, notes=[why], **kw)
    if tr.outcome == "slope_not_in_group":
        return _proved(p, 1, 1, p, "RAMIFIED", irreducible=True, notes=[tr.detail], **kw)
    if tr.outcome == "residue_AS_irreducible":
        return _proved(1, p, 1, p, "INERT", irreducible=True, notes=[tr.detail], **kw)
    if tr.outcome == "level_reached" and tr.self_similar_at is not None:
        j = tr.self_similar_at
        note = (f"residual is a monomial from step {j + 1} on and each step applies the "
                f"inverse Frobenius, so residual values rise to 0 without end while every "
                f"correction has value in vK and residue in Kv; no approximation is a root")
        return _proved(1, 1, p, p, "DEFECT", irreducible=True, notes=[note], **kw)
    if tr.outcome == "self_similar":
        return _proved(1, 1, 1, p, "ROOT-IN-K", irreducible=False,
                       notes=["self-similar descent converges in the Hahn field"], **kw)
    return _inconclusive(tr.outcome, n=p, notes=[tr.detail], **kw)


def _as_shape(g: UPoly, p: int):
    """Return a if g = X^p - X - a, else None."""
    if p <= 1 or g.degree != p:
        return None
    K = g.field
    if g[1] != K.from_int(-1):
        return None
    if any(not g[i].is_zero() for i in range(2, p)):
        return None
    return -g[0]


# ---------------------------------------------------------------------------
# inseparable binomials X^p - a
# ---------------------------------------------------------------------------

def _inseparable_analyze(K, a) -> ExtensionReport:
    p = K.char
    kw = dict(poly_degree=p)
    if K.backend == "HAHN":
        for e, _ in a.terms:
            d = e / p
            if not K.vg_contains(d):
                return _proved(p, 1, 1, p, "INSEPARABLE", irreducible=True,
                               values=[d], notes=[f"a^(1/p) minus its part in K has value {d}"], **kw)
        if a.is_exact():
            raise NotSquarefree("X^p - a with a a p-th power in K")
        return _inconclusive("INSEPARABLE", n=p, notes=["p-th root undecided below precision"], **kw)
    v = K.value(a)
    d = v / p
    if not K.vg_contains(d):
        return _proved(p, 1, 1, p, "INSEPARABLE", irreducible=True, values=[d],
                       notes=[f"v(a)/p = {d} not in vK"], **kw)
    if K.perfect or all(K.admissible_exponent(e / p) for e in list(a.num) + list(a.den)):
        raise NotSquarefree("X^p - a with a a p-th power in K")
    return _inconclusive("INSEPARABLE", n=p, notes=["base field is not henselian"], **kw)


# ---------------------------------------------------------------------------
# Newton polygon path
# ---------------------------------------------------------------------------

def _coeff_on_line(K, x, e: GroupElem):
    k = K.residue_field
    if x.is_zero():
        return k.zero
    c, v = K.leading_term(x)
    if v > e:
        return k.zero
    if v < e:
        raise AssertionError("point below the Newton polygon")
    return c


def residual_polynomial(K, g: UPoly, seg, e: int, shift: int = 0) -> list:
    """Coefficients (low first) of the residual polynomial of a segment."""
    i0 = seg.start + shift
    v0 = K.value(g[i0])
    out = []
    for j in range(seg.length // e + 1):
        i = i0 + j * e
        out.append(_coeff_on_line(K, g[i], v0 + seg.slope * (j * e)))
    return out


def factor_residue_poly(k, coeffs: list) -> list:
    """Monic irreducible factors with multiplicities over the residue field."""
    if isinstance(k, RationalField):
        import sympy
        y = sympy.Symbol("y")
        poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                         for c in coeffs])), y, domain="QQ")
        _, facs = poly.factor_list()
        out = []
        for fac, m in facs:
            fc = fac.monic().all_coeffs()
            out.append(([Fraction(int(c.p), int(c.q)) for c in reversed(fc)], m))
        return sorted(out, key=lambda t: (len(t[0]), t[0]))
    return fq_poly_factor(k, coeffs)


def _prem(f: list, g: list) -> list:
    """Pseudo-remainder of coefficient lists (high degree last) over a domain."""
    r = list(f)
    lg, dg = g[-1], len(g) - 1
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        for i, c in enumerate(g):
            r[i + shift] = r[i + shift] - lr * c
        while r and r[-1].is_zero():
            r.pop()
    return r


def exact_squarefree(g: UPoly) -> Optional[bool]:
    """gcd(g, g') = 1 decided by a pseudo-remainder sequence; None if undecidable."""
    if any(not c.is_exact() for c in g.coeffs):
        return None
    a, b = list(g.coeffs), list(g.derivative().coeffs)
    if not b:
        return None
    while b:
        if len(b) == 1:
            return True
        a, b = b, _prem(a, b)
    return False


def analyze_extension(K, g: UPoly, step_bound: int = AS_STEP_BOUND) -> ExtensionReport:
    """Report e, f and the defect of K(theta) for a root theta of the monic g."""
    if not g.is_monic():
        raise ValueError("analyze_extension needs a monic polynomial")
    n = g.degree
    p = K.char
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return _proved(1, 1, 1, max(p, 1), "TRIVIAL", poly_degree=1, irreducible=True)
    a = _as_shape(g, p)
    if a is not None:
        return artin_schreier_analyze(K, a, step_bound=step_bound)
    if p > 1 and g.derivative().is_zero():
        if all(g[i].is_zero() for i in range(1, n)) and n == p:
            return _inseparable_analyze(K, -g[0])
        raise UnsupportedShape("inseparable polynomial other than X^p - a")
    if exact_squarefree(g) is False:
        raise NotSquarefree("gcd(g, g') is not constant")
    return _newton_analyze(K, g)


def _newton_analyze(K, g: UPoly) -> ExtensionReport:
    p = K.char if K.char else 1
    k = K.residue_field
    n = g.degree
    henselian = K.backend == "HAHN"
    try:
        npoly = newton_polygon(K, g)
    except PrecisionLoss as exc:
        return _inconclusive("NEWTON", notes=[str(exc)], poly_degree=n)
    shift = npoly.zero_root_multiplicity
    cert = []
    chosen = None
    all_simple = True
    for seg in npoly.segments:
        s = seg.root_value
        e = K.vg_order(s)
        try:
            res = residual_polynomial(K, g, seg, e, shift)
        except PrecisionLoss as exc:
            return _inconclusive("NEWTON", notes=[str(exc)], poly_degree=n)
        facs = factor_residue_poly(k, res)
        cert.append({"root_value": str(s), "length": seg.length, "e": e,
                     "residual_factors": [(len(fc) - 1, m) for fc, m in facs]})
        if any(m > 1 for _, m in facs):
            all_simple = False
        if chosen is None:
            simple = [fc for fc, m in facs if m == 1]
            if simple:
                chosen = (e, len(simple[0]) - 1, s)
    irreducible = (shift == 0 and len(npoly.segments) == 1 and len(cert[0]["residual_factors"]) == 1
                   and cert[0]["residual_factors"][0][1] == 1)
    values = [GroupElem(tuple(Fraction(c) for c in rv.coords)) for rv, _ in npoly.root_values()]
    kw = dict(certificate=cert, values=values, poly_degree=n, irreducible=irreducible)
    if chosen is None:
        return _inconclusive("NEWTON", notes=["no residual factor of multiplicity one"], **kw)
    e, f, s = chosen
    if irreducible or henselian:
        notes = [] if irreducible else [f"g is reducible; report covers the factor with root value {s}"]
        if not all_simple:
            notes.append("some residual factors are repeated")
        return _proved(e, f, 1, p, "NEWTON", notes=notes, **kw)
    return _inconclusive("NEWTON", n=e * f, e=e, f=f,
                         notes=["reducible over a non-henselian base"], **kw)


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityVerdict:
    holds: bool
    equality: bool

    def __bool__(self):
        return self.holds


def fundamental_inequality_check(reports, n: int) -> InequalityVerdict:
    total = sum(r.e * r.f for r in reports)
    return InequalityVerdict(n >= total, n == total)


def defect_multiplicativity_check(rep_MK, rep_ML, rep_LK) -> bool:
    d, d1, d2 = rep_MK.defect, rep_ML.defect, rep_LK.defect
    if d != d1 * d2:
        return False
    return (d == 1) == (d1 == 1 and d2 == 1)
