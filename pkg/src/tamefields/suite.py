"""The acceptance battery: ten deterministic cases, each returning PASS, FAIL or INCONCLUSIVE."""

from __future__ import annotations

import random
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .classify import RFD, V0, VGD, VT, check_axiom_instance, classify_field, kaplansky_check
from .doag.battery import STANDARD_SENTENCES
from .doag.evaluate import eval_in_q
from .doag.formula import format_formula, parse_formula
from .doag.qe import doag_decide_sentence, doag_qe, eval_qf
from .errors import NotSquarefree, PrecisionLoss, UnsupportedShape
from .extension import analyze_extension, artin_schreier_analyze, is_power_of
from .finfield import QQ, RationalField, prime_field
from .gauss import leading_form, witness_value
from .generators import (random_assignment, random_element, random_field, random_formula,
                         random_gauss_case, random_residue, random_unit_or_integral)
from .hensel import NoRoot, as_root_in_field, hensel_lift
from .ogroup import INFINITY, Atom, GroupElem, OrderedGroup
from .pcs import artin_schreier_prefix, pcs_poly_trace
from .upoly import UPoly
from .valfield import HahnField, RatFuncField

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class SuiteCase:
    id: str
    description: str
    anchor: str
    tags: tuple
    run: Callable


@dataclass
class CaseResult:
    id: str
    description: str
    anchor: str
    status: str
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"id": self.id, "description": self.description, "anchor": self.anchor,
                "status": self.status, "details": self.details,
                "seconds": round(self.seconds, 4)}


@dataclass
class SuiteResult:
    cases: list

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.cases)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def to_dict(self) -> dict:
        return {"ok": self.ok, "counts": self.counts(), "cases": [c.to_dict() for c in self.cases]}


def _z():
    return OrderedGroup((Atom.Z(),))


def _x(K):
    return UPoly.x(K)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# 1. defect of X^p - X - 1/t over the perfect hull of F_p(t)
# ---------------------------------------------------------------------------

def case_defect(seed: int) -> tuple:
    details, ok = {}, True
    for p in (2, 3, 5):
        K = RatFuncField(prime_field(p), level=8, perfect=True)
        start = time.perf_counter()
        rep = artin_schreier_analyze(K, K.t_power(-1))
        elapsed = time.perf_counter() - start
        want = [GroupElem((Fraction(-1, p**i),)) for i in range(1, 9)]
        good = (rep.proved and (rep.n, rep.e, rep.f, rep.defect) == (p, 1, 1, p)
                and rep.immediate and rep.purely_wild and list(rep.values) == want
                and elapsed < 1.0)
        ok &= good
        details[f"p={p}"] = {"n": rep.n, "e": rep.e, "f": rep.f, "defect": rep.defect,
                             "flags": sorted(rep.flags), "values": [str(v) for v in rep.values],
                             "seconds": round(elapsed, 4), "ok": good}
    return _verdict(ok), details


# ---------------------------------------------------------------------------
# 2. Kummer battery: X^l - t over F_p((t^Z))
# ---------------------------------------------------------------------------

def case_kummer(seed: int) -> tuple:
    details, ok = {}, True
    for p in (3, 5, 7):
        K = HahnField(prime_field(p), _z())
        t = K.t_power(1)
        for l in (2, 3, 4, 5, 7):
            if l % p == 0 and l != p:
                continue
            rep = analyze_extension(K, _x(K) ** l - t)
            if l == p:
                good = ((rep.e, rep.f, rep.defect) == (p, 1, 1) and rep.purely_wild
                        and not rep.tame)
            else:
                good = (rep.e, rep.f, rep.defect) == (l, 1, 1) and rep.tame
            good = good and rep.proved
            ok &= good
            details[f"p={p},l={l}"] = {"e": rep.e, "f": rep.f, "d": rep.defect,
                                       "tame": rep.tame, "purely_wild": rep.purely_wild,
                                       "ok": good}
    return _verdict(ok), details


# ---------------------------------------------------------------------------
# 3. Ostrowski shape over a generated battery
# ---------------------------------------------------------------------------

def extension_battery(seed: int) -> list:
    """(label, K, g) triples: Kummer, Artin-Schreier, inseparable and random Newton cases."""
    rng = random.Random(seed)
    cases = []
    for p in (2, 3, 5, 7):
        K = HahnField(prime_field(p), _z())
        X, t = _x(K), K.t_power(1)
        for l in range(2, 8):
            if l % p == 0 and l != p:
                continue
            for m in (1, 2, 3):
                for c in sorted({1, p - 1}):
                    cases.append((f"kummer p={p} l={l} c={c} m={m}", K, X**l - t**m * c))
    for p in (2, 3, 5):
        k = prime_field(p)
        fields = [HahnField(k, _z()), HahnField(k, OrderedGroup((Atom.Q(),))),
                  HahnField(k, OrderedGroup((Atom.Zinv(p),))),
                  RatFuncField(k, level=6, perfect=True), RatFuncField(k)]
        for K in fields:
            X = _x(K)
            for a in (K.t_power(-1), K.t_power(-2), K.t_power(-p - 1), K.t_power(1),
                      K.one(), K.t_power(-1) + K.one()):
                cases.append((f"AS p={p} {K} a={a}", K, X**p - X - a))
            cases.append((f"insep p={p} {K}", K, X**p - K.t_power(1)))
    for i in range(60):
        k = QQ if i % 3 == 0 else prime_field(rng.choice((3, 5, 7)))
        K = HahnField(k, _z() if i % 2 else OrderedGroup((Atom.Q(),)))
        n = rng.randint(2, 4)
        coeffs = []
        for j in range(n):
            c = random_residue(k, rng, nonzero=True)
            e = rng.randint(0, 4) if j else rng.randint(1, 5)
            coeffs.append(K.monomial(c, K.group.elem(e)) if rng.random() < 0.8 or not j else K.zero())
        g = UPoly(K, coeffs + [K.one()])
        cases.append((f"newton {K} {g}", K, g))
    return cases


def case_ostrowski(seed: int) -> tuple:
    proved, skipped, inconclusive, violations = 0, 0, 0, []
    for label, K, g in extension_battery(seed):
        try:
            rep = analyze_extension(K, g)
        except (NotSquarefree, UnsupportedShape, PrecisionLoss):
            skipped += 1
            continue
        if not rep.proved:
            inconclusive += 1
            continue
        proved += 1
        bad = ostrowski_violations(rep, max(K.char, 1))
        if bad:
            violations.append({"case": label, "problems": bad})
    ok = proved >= 100 and not violations
    return _verdict(ok), {"proved": proved, "inconclusive": inconclusive, "skipped": skipped,
                          "violations": violations[:10]}


def ostrowski_violations(rep, p: int) -> list:
    """Reasons a PROVED report breaks n = e*f*p^nu (empty when consistent)."""
    out = []
    if rep.n != rep.e * rep.f * rep.defect:
        out.append("n != e*f*d")
    if not is_power_of(rep.defect, p):
        out.append(f"defect {rep.defect} is not a power of {p}")
    if rep.irreducible and rep.n != rep.poly_degree:
        out.append("irreducible polynomial but n != degree")
    if rep.purely_wild and not is_power_of(rep.n, p):
        out.append("purely wild but n is not a power of p")
    return out


# ---------------------------------------------------------------------------
# 4. Gauss values against concrete witnesses
# ---------------------------------------------------------------------------

def gauss_case_outcome(A, f, point) -> tuple:
    """(agrees, cancelling) for one polynomial and one residue point."""
    w, R = leading_form(A, f)
    wv = witness_value(A, f, point)
    if w is INFINITY:
        return wv is INFINITY, False
    k = A.base.residue_field
    if k.is_zero(R.evaluate(point)):
        return wv is INFINITY or wv > w, True
    return wv == w, False


def case_gauss(seed: int) -> tuple:
    rng = random.Random(seed)
    agree, cancelling, bad = 0, 0, []
    for i in range(200):
        A, f = random_gauss_case(rng)
        k = A.base.residue_field
        point = [random_residue(k, rng, nonzero=True) for _ in range(A.y_count)]
        good, cancel = gauss_case_outcome(A, f, point)
        cancelling += cancel
        if good:
            agree += 1
        else:
            bad.append(str(f))
    return _verdict(not bad), {"cases": 200, "agree": agree, "cancelling_flagged": cancelling,
                               "mismatches": bad[:5]}


# ---------------------------------------------------------------------------
# 5. Hensel lift of sqrt(1+t)
# ---------------------------------------------------------------------------

def case_hensel(seed: int) -> tuple:
    K = HahnField(prime_field(3), _z())
    f = _x(K) ** 2 - (K.one() + K.t_power(1))
    res = hensel_lift(K, f, K.one(), 40)
    r = res.root * res.root - (K.one() + K.t_power(1))
    v = K.value(r)
    ok = (v is INFINITY or v >= K.group.elem(40)) and res.iterations <= 7 and res.root.is_exact()
    return _verdict(ok), {"iterations": res.iterations, "value_of_residual": str(v),
                          "trace": [[str(a), str(b)] for a, b in res.trace]}


# ---------------------------------------------------------------------------
# 6. Artin-Schreier root in F_2((t^Z[1/2]))
# ---------------------------------------------------------------------------

def case_as_root(seed: int) -> tuple:
    k = prime_field(2)
    K = HahnField(k, OrderedGroup((Atom.Zinv(2),)))
    a = K.t_power(-1)
    prec = K.group.elem(Fraction(-1, 2**8))
    z = as_root_in_field(K, a, prec)
    expected = K.series([((Fraction(-1, 2**i),), 1) for i in range(1, 9)])
    residual = z * z - z - a if not isinstance(z, NoRoot) else None
    diff = z - expected if residual is not None else None
    shape = diff is not None and (diff.is_zero() or diff == K.one())
    rv = K.value(residual) if residual is not None else None
    close = rv is not None and (rv is INFINITY or rv >= prec)

    KZ = HahnField(k, _z())
    none = as_root_in_field(KZ, KZ.t_power(-1), KZ.group.elem(0))
    none_ok = isinstance(none, NoRoot) and none.reason == "slope_not_in_group" and "-1/2" in none.detail
    ok = shape and close and none_ok
    return _verdict(ok), {"root": str(z), "residual_value": str(rv),
                          "over_Z": repr(none)}


# ---------------------------------------------------------------------------
# 7. classification
# ---------------------------------------------------------------------------

def case_classify(seed: int) -> tuple:
    F5 = prime_field(5)
    expect = [
        (HahnField(F5, OrderedGroup((Atom.Q(),))), True),
        (HahnField(F5, OrderedGroup((Atom.Zinv(5),))), True),
        (HahnField(F5, _z()), False),
        (HahnField(QQ, _z()), True),
    ]
    details, ok = {}, True
    for K, tame in expect:
        v = classify_field(K)["tame"]
        good = v.is_yes if tame else (v.is_no and v.witness is not None)
        ok &= good
        details[str(K)] = {"tame": v.to_dict(), "ok": good}
    KQ = HahnField(F5, OrderedGroup((Atom.Q(),)))
    kap = kaplansky_check(KQ)
    good = kap.is_no and classify_field(KQ)["tame"].is_yes
    ok &= good
    details["kaplansky F(5)((t^Q))"] = {"kaplansky": kap.to_dict(), "ok": good}
    return _verdict(ok), details


# ---------------------------------------------------------------------------
# 8. DOAG decision battery and QE round trips
# ---------------------------------------------------------------------------

def case_doag(seed: int) -> tuple:
    battery_bad = []
    for name, text, truth in STANDARD_SENTENCES:
        phi = parse_formula(text)
        got = doag_decide_sentence(phi)
        direct = eval_in_q(phi)
        if got != truth or direct != truth:
            battery_bad.append({"sentence": name, "qe": got, "direct": direct, "expected": truth})
    rng = random.Random(seed)
    mismatches = []
    for i in range(300):
        nb = rng.randint(1, 3)                       # at most 3 quantifiers, 4 variables
        free = ("a", "b")[:4 - nb]
        phi = random_formula(rng, free=free, bound=("x", "y", "z")[:nb])
        qf = doag_qe(phi)
        for _ in range(50):
            env = random_assignment(rng, free)
            if eval_qf(qf, env) != eval_in_q(phi, env):
                mismatches.append({"formula": format_formula(phi), "qe": format_formula(qf),
                                   "env": {k: str(v) for k, v in env.items()}})
    ok = not battery_bad and not mismatches
    return _verdict(ok), {"battery": len(STANDARD_SENTENCES), "battery_mismatches": battery_bad,
                          "round_trips": 300, "assignments_each": 50, "mismatches": mismatches[:5]}


# ---------------------------------------------------------------------------
# 9. axiom and homomorphism properties
# ---------------------------------------------------------------------------

def _res0(K, x):
    if x.is_zero():
        return K.residue_field.zero
    v = K.value(x)
    return K.residue_field.zero if v.sign() > 0 else K.residue(x)


def property_violations(K, x, y) -> list:
    """Axiom (V0), (VT), v(xy) = vx + vy and the residue map laws on one pair."""
    out = []
    if not check_axiom_instance(K, V0(x, (y,))):
        out.append("V0")
    if not check_axiom_instance(K, VT(x, y)):
        out.append("VT")
    if not x.is_zero() and not y.is_zero():
        if K.value(x * y) != K.value(x) + K.value(y):
            out.append("homomorphism")
    k = K.residue_field
    xi, yi = random_integral_pair(K, x, y)
    if k.add(_res0(K, xi), _res0(K, yi)) != _res0(K, xi + yi):
        out.append("residue additive")
    if k.mul(_res0(K, xi), _res0(K, yi)) != _res0(K, xi * yi):
        out.append("residue multiplicative")
    return out


def random_integral_pair(K, x, y):
    def integral(z):
        if z.is_zero():
            return z
        v = K.value(z)
        return z * K.t_power(-v) if v.sign() < 0 else z
    return integral(x), integral(y)


def pdiv_instances(seed: int) -> list:
    """(K, axiom, predicted_pass) for VGD_p and RFD_p."""
    rng = random.Random(seed)
    out = []
    for p in (2, 3, 5):
        k = prime_field(p)
        fields = [HahnField(k, _z()), HahnField(k, OrderedGroup((Atom.Q(),))),
                  HahnField(k, OrderedGroup((Atom.Zinv(p),))),
                  HahnField(k, OrderedGroup((Atom.Z(), Atom.Q()))),
                  RatFuncField(k), RatFuncField(k, level=2), RatFuncField(k, perfect=True)]
        for K in fields:
            divisible, witness = K.vg_p_divisible(p)
            xs = [random_element(K, rng, zero_rate=0.0) for _ in range(8)]
            if not divisible:
                xs.append(K.t_power(witness))
            for x in xs:
                if x.is_zero():
                    continue
                predicted = K.vg_contains(-K.value(x) / p) if not divisible else True
                out.append((K, VGD(x, p), predicted))
            for _ in range(4):
                x = random_unit_or_integral(K, rng)
                if x.is_zero() or not K.value(x).is_zero():
                    x = K.one()
                out.append((K, RFD(x, p), True))     # finite residue fields are perfect
    KQ = HahnField(QQ, _z())
    for c, root in ((4, True), (2, False), (Fraction(9, 25), True), (3, False)):
        out.append((KQ, RFD(KQ.constant(Fraction(c)), 2), root))
    return out


def case_properties(seed: int) -> tuple:
    rng = random.Random(seed)
    details, ok = {}, True
    for backend in ("HAHN", "RATFUNC"):
        violations = []
        for i in range(1000):
            K = random_field(rng, backend)
            x, y = random_element(K, rng), random_element(K, rng)
            bad = property_violations(K, x, y)
            if bad:
                violations.append({"field": str(K), "x": str(x), "y": str(y), "laws": bad})
        ok &= not violations
        details[backend] = {"cases": 1000, "violations": violations[:5]}
    wrong = []
    instances = pdiv_instances(seed)
    for K, ax, predicted in instances:
        got = check_axiom_instance(K, ax).passed
        if got != predicted:
            wrong.append({"field": str(K), "axiom": type(ax).__name__, "x": str(ax.x),
                          "predicted": predicted, "got": got})
    ok &= not wrong
    details["p_divisibility"] = {"instances": len(instances), "mispredicted": wrong[:5]}
    return _verdict(ok), details


# ---------------------------------------------------------------------------
# 10. pseudo-Cauchy pattern of the Artin-Schreier approximations
# ---------------------------------------------------------------------------

def case_pcs(seed: int) -> tuple:
    K = HahnField(prime_field(2), OrderedGroup((Atom.Zinv(2),)))
    a = K.t_power(-1)
    prefix = artin_schreier_prefix(K, a, 10)
    f = _x(K) ** 2 - _x(K) - a
    tr = pcs_poly_trace(K, prefix, f)
    fit = tr.fit
    ok = (fit.kind == "AFFINE" and fit.beta is not None and fit.beta.is_zero() and fit.h == 2
          and fit.tail_start == 0 and fit.h.denominator == 1 and is_power_of(int(fit.h), 2))
    return _verdict(ok), {"fit": {"kind": fit.kind, "beta": str(fit.beta), "h": str(fit.h),
                                  "tail_start": fit.tail_start},
                          "values": [str(v) for v in tr.values]}


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------

CASES = (
    SuiteCase("01-defect", "X^p - X - 1/t over the perfect hull of F_p(t) has defect p",
              "immediate Artin-Schreier defect extension", ("defect", "extension", "hensel"),
              case_defect),
    SuiteCase("02-kummer", "X^l - t over F_p((t^Z)): tame for l != p, purely wild for l = p",
              "tame and purely wild extensions", ("kummer", "extension"), case_kummer),
    SuiteCase("03-ostrowski", "every proved report in a generated battery has n = e f p^nu",
              "lemma of Ostrowski", ("ostrowski", "extension", "battery"), case_ostrowski),
    SuiteCase("04-gauss", "Gauss values agree with concrete witnesses",
              "Gauss valuation: least value of the monomials", ("gauss",), case_gauss),
    SuiteCase("05-hensel", "Newton lifting of sqrt(1+t) over F_3((t^Z)) to precision 40",
              "axiom HENS, quadratic convergence", ("hensel",), case_hensel),
    SuiteCase("06-as-root", "Artin-Schreier root of t^-1 in F_2((t^Z[1/2])) and its absence over Z",
              "Artin-Schreier roots in maximal fields", ("hensel", "artin-schreier"),
              case_as_root),
    SuiteCase("07-classify", "tameness verdicts for four Hahn fields and one Kaplansky check",
              "tame fields: p-divisible value group and perfect residue field",
              ("classify",), case_classify),
    SuiteCase("08-doag", "12-sentence decision battery and 300 QE round trips, 50 assignments each",
              "divisible ordered abelian groups: complete and decidable", ("doag",), case_doag),
    SuiteCase("09-properties", "ultrametric, homomorphism and p-divisibility axiom checks",
              "valuation axioms V0, VT; VGD_p and RFD_p", ("properties", "classify", "valfield"),
              case_properties),
    SuiteCase("10-pcs", "Artin-Schreier approximations fit an affine value pattern with h = 2",
              "pseudo-Cauchy value pattern beta + h v(x - a_nu)", ("pcs",), case_pcs),
)


def select_cases(filter: Optional[str] = None) -> list:
    if not filter:
        return list(CASES)
    f = filter.lower()
    return [c for c in CASES if f in c.tags or f in c.id]


def run_case(case: SuiteCase, seed: int = DEFAULT_SEED) -> CaseResult:
    start = time.perf_counter()
    try:
        status, details = case.run(seed)
    except Exception as exc:   # a crash is a failure of that case only
        status, details = FAIL, {"error": f"{type(exc).__name__}: {exc}",
                                 "traceback": traceback.format_exc(limit=5)}
    return CaseResult(case.id, case.description, case.anchor, status, details,
                      time.perf_counter() - start)


def _run_by_id(args):
    case_id, seed = args
    return run_case(next(c for c in CASES if c.id == case_id), seed)


def run_suite(filter: Optional[str] = None, seed: int = DEFAULT_SEED, jobs: int = 1) -> SuiteResult:
    """Run the selected cases; results are ordered by case id however they were scheduled."""
    chosen = select_cases(filter)
    if jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_by_id, [(c.id, seed) for c in chosen]))
    else:
        results = [run_case(c, seed) for c in chosen]
    return SuiteResult(sorted(results, key=lambda r: r.id))
