"""Field-level verdicts (tame, henselian, Kaplansky, ...) and axiom instance checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import InstanceIllFormed, PreconditionFailed
from .finfield import RationalField
from .hensel import _as_group_elem, hensel_lift
from .ogroup import INFINITY
from .upoly import UPoly

PROPERTIES = ("henselian", "algebraically_maximal", "defectless", "tame", "separably_tame",
              "kaplansky", "perfect_residue", "p_divisible_value_group")


class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: str = ""
    witness: Any = None

    @classmethod
    def yes(cls, reason=""):
        return cls(Status.YES, reason)

    @classmethod
    def no(cls, reason="", witness=None):
        return cls(Status.NO, reason, witness)

    @classmethod
    def unknown(cls, reason=""):
        return cls(Status.UNKNOWN, reason)

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out

    def __str__(self):
        w = f" [witness {self.witness}]" if self.witness is not None else ""
        return f"{self.status.value}: {self.reason}{w}"


class FieldClassification(dict):
    def to_dict(self) -> dict:
        return {k: v.to_dict() for k, v in self.items()}


def _p_divisibility(K) -> Verdict:
    p = K.p
    if p == 1:
        return Verdict.yes("residue characteristic 0, condition void")
    ok, witness = K.vg_p_divisible(p)
    if ok:
        return Verdict.yes(f"{K.vg_describe()} is {p}-divisible")
    return Verdict.no(f"value {witness} is not {p}-divisible in {K.vg_describe()}", witness)


def _residue_degree_p_witness(K) -> Optional[str]:
    k = K.residue_field
    if isinstance(k, RationalField):
        return None
    return f"{k} has an extension of degree {K.p}"


def kaplansky_check(K) -> Verdict:
    """vK p-divisible and Kv without finite extensions of degree divisible by p."""
    p = K.p
    if p == 1:
        return Verdict.yes("characteristic exponent 1, conditions void")
    pdiv = _p_divisibility(K)
    if pdiv.is_no:
        return Verdict.no(pdiv.reason, pdiv.witness)
    w = _residue_degree_p_witness(K)
    if w is not None:
        return Verdict.no(w, p)
    return Verdict.unknown("residue field extensions not analysed")


def classify_field(K) -> FieldClassification:
    p = K.p
    out = FieldClassification()
    pdiv = _p_divisibility(K)
    out["p_divisible_value_group"] = pdiv
    out["perfect_residue"] = Verdict.yes(f"{K.residue_field} is perfect")
    if K.maximal_by_construction:
        out["algebraically_maximal"] = Verdict.yes("full Hahn field: maximal by construction")
        out["henselian"] = Verdict.yes("algebraically maximal fields are henselian")
        out["defectless"] = Verdict.yes("maximal fields are defectless")
    else:
        out["algebraically_maximal"] = Verdict.unknown("maximality is not decided for this backend")
        out["henselian"] = Verdict.unknown("henselianity is not decided for this backend")
        if p == 1:
            out["defectless"] = Verdict.yes("residue characteristic 0")
        else:
            out["defectless"] = Verdict.unknown("not decided for this backend")

    if p == 1:
        if out["henselian"].is_yes:
            tame = Verdict.yes("henselian of residue characteristic 0")
        else:
            tame = Verdict.unknown("residue characteristic 0 but henselianity undecided")
    elif pdiv.is_no:
        tame = Verdict.no(pdiv.reason, pdiv.witness)
    elif out["algebraically_maximal"].is_yes:
        tame = Verdict.yes("algebraically maximal, p-divisible value group, perfect residue field")
    else:
        tame = Verdict.unknown("algebraic maximality undecided")
    out["tame"] = tame
    # separable-algebraic maximality follows from maximality, so the evidence carries over
    out["separably_tame"] = Verdict(tame.status, tame.reason, tame.witness)
    out["kaplansky"] = kaplansky_check(K)
    return FieldClassification((name, out[name]) for name in PROPERTIES)


# ---------------------------------------------------------------------------
# axiom instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class V0:
    x: Any
    ys: Sequence = ()


@dataclass(frozen=True)
class VT:
    x: Any
    y: Any


@dataclass(frozen=True)
class HENS:
    f: UPoly
    y0: Any
    prec: Any = None


@dataclass(frozen=True)
class MAXP:
    f: UPoly
    candidate: Any
    others: Sequence = ()


@dataclass(frozen=True)
class VGD:
    x: Any
    p: Optional[int] = None


@dataclass(frozen=True)
class RFD:
    x: Any
    p: Optional[int] = None


@dataclass(frozen=True)
class AxiomVerdict:
    passed: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"status": "PASS" if self.passed else "FAIL", "reason": self.reason}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def _elem(K, x):
    try:
        return K.coerce(x)
    except TypeError as exc:
        raise InstanceIllFormed(str(exc)) from exc


def _ge(a, b) -> bool:
    if a is INFINITY:
        return True
    if b is INFINITY:
        return False
    return a >= b


def _rational_root(q: Fraction, n: int) -> Optional[Fraction]:
    def iroot(m):
        if m < 0:
            if n % 2 == 0:
                return None
            r = iroot(-m)
            return None if r is None else -r
        r = round(m ** (1.0 / n)) if m else 0
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == m:
                return c
        return None
    a, b = iroot(q.numerator), iroot(q.denominator)
    return None if a is None or b is None else Fraction(a, b)


def check_axiom_instance(K, axiom) -> AxiomVerdict:
    if isinstance(axiom, V0):
        x = _elem(K, axiom.x)
        vx = K.value(x)
        dominated = all(_ge(vx, K.value(_elem(K, y))) for y in list(axiom.ys) + [K.zero()])
        ok = dominated == x.is_zero()
        return AxiomVerdict(ok, f"v(x) = {vx}, dominates all y: {dominated}")
    if isinstance(axiom, VT):
        x, y = _elem(K, axiom.x), _elem(K, axiom.y)
        vd, vx, vy = K.value(x - y), K.value(x), K.value(y)
        return AxiomVerdict(_ge(vd, vx) or _ge(vd, vy), f"v(x-y) = {vd}, vx = {vx}, vy = {vy}")
    if isinstance(axiom, HENS):
        return _check_hens(K, axiom)
    if isinstance(axiom, MAXP):
        f = axiom.f
        if not isinstance(f, UPoly) or not f.is_monic():
            raise InstanceIllFormed("MAXP needs a monic polynomial")
        best = K.value(f(_elem(K, axiom.candidate)))
        for y in axiom.others:
            vy = K.value(f(_elem(K, y)))
            if not _ge(best, vy):
                return AxiomVerdict(False, f"v(f(y)) = {vy} exceeds v(f(candidate)) = {best}", y)
        return AxiomVerdict(True, f"v(f(candidate)) = {best} dominates {len(axiom.others)} values")
    if isinstance(axiom, VGD):
        return _check_vgd(K, axiom)
    if isinstance(axiom, RFD):
        return _check_rfd(K, axiom)
    raise InstanceIllFormed(f"unknown axiom instance {axiom!r}")


def _check_hens(K, ax: HENS) -> AxiomVerdict:
    f = ax.f
    if not isinstance(f, UPoly) or not f.is_monic():
        raise InstanceIllFormed("HENS needs a monic polynomial")
    y0 = _elem(K, ax.y0)
    if not y0.is_zero() and K.value(y0).sign() < 0:
        return AxiomVerdict(True, "hypothesis vy >= 0 fails; instance holds vacuously")
    prec = _as_group_elem(K, ax.prec if ax.prec is not None else getattr(K, "default_prec", 20))
    try:
        res = hensel_lift(K, f, y0, prec)
    except PreconditionFailed as exc:
        return AxiomVerdict(True, f"hypothesis '{exc.which}' fails; instance holds vacuously")
    z = res.root
    fz = f(z)
    d = z - y0
    close = d.is_zero() or K.value(d).sign() > 0
    root = fz.is_zero() or K.value(fz) >= prec
    ok = close and root
    return AxiomVerdict(ok, f"lifted in {res.iterations} steps; v(f(z)) = "
                            f"{'oo' if fz.is_zero() else K.value(fz)}", z)


def _check_vgd(K, ax: VGD) -> AxiomVerdict:
    p = ax.p or K.p
    x = _elem(K, ax.x)
    if x.is_zero():
        return AxiomVerdict(True, "x = 0")
    d = -K.value(x) / p
    if not K.vg_contains(d):
        return AxiomVerdict(False, f"-v(x)/{p} = {d} is not in {K.vg_describe()}", d)
    y = K.t_power(d)
    ok = K.value(x * y ** p).is_zero()
    return AxiomVerdict(ok, f"y = {y}", y)


def _check_rfd(K, ax: RFD) -> AxiomVerdict:
    p = ax.p or K.p
    x = _elem(K, ax.x)
    if x.is_zero() or not K.value(x).is_zero():
        return AxiomVerdict(True, "v(x) != 0; instance holds vacuously")
    k = K.residue_field
    target = k.inv(K.residue(x))
    if isinstance(k, RationalField):
        b = _rational_root(Fraction(target), p)
        if b is None:
            return AxiomVerdict(False, f"{k.format(target)} has no {p}-th root in Q", target)
    else:
        if p != k.char:
            raise InstanceIllFormed(f"p = {p} differs from the residue characteristic {k.char}")
        b = k.pth_root(target)
    y = K.constant(b)
    r = x * y ** p - 1
    ok = r.is_zero() or K.value(r).sign() > 0
    return AxiomVerdict(ok, f"y = {k.format(b)}", y)
