import random
import time
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tamefields.errors import NotSquarefree, PrecisionLoss, UnsupportedShape
from tamefields.extension import (ExtensionReport, analyze_extension, artin_schreier_analyze,
                                  defect_multiplicativity_check, fundamental_inequality_check,
                                  is_power_of)
from tamefields.finfield import prime_field
from tamefields.generators import random_residue
from tamefields.ogroup import GroupElem
from tamefields.suite import extension_battery, ostrowski_violations
from tamefields.upoly import UPoly
from tamefields.valfield import RatFuncField

from conftest import X, hahn


def efd(rep):
    return rep.n, rep.e, rep.f, rep.defect


def test_tame_quadratic():
    K = hahn(3)
    rep = analyze_extension(K, X(K) ** 2 - K.t_power(1))
    assert rep.proved and efd(rep) == (2, 2, 1, 1)
    assert rep.tame and rep.defectless


def test_purely_wild_kummer():
    K = hahn(5)
    rep = analyze_extension(K, X(K) ** 5 - K.t_power(1))
    assert rep.proved and efd(rep) == (5, 5, 1, 1)
    assert rep.defectless and rep.purely_wild and not rep.tame


@pytest.mark.parametrize("p", [2, 3, 5])
def test_defect_extension(p):
    K = RatFuncField(prime_field(p), level=8, perfect=True)
    start = time.perf_counter()
    rep = artin_schreier_analyze(K, K.t_power(-1))
    assert time.perf_counter() - start < 1.0
    assert rep.proved and rep.outcome == "DEFECT"
    assert efd(rep) == (p, 1, 1, p)
    assert rep.immediate and rep.purely_wild and not rep.defectless
    assert rep.values == [GroupElem((F(-1, p ** i),)) for i in range(1, 9)]


def test_defect_via_polynomial():
    K = RatFuncField(prime_field(2), level=8, perfect=True)
    x = X(K)
    rep = analyze_extension(K, x ** 2 - x - K.t_power(-1))
    assert efd(rep) == (2, 1, 1, 2) and rep.immediate and rep.purely_wild


def test_as_root_in_k():
    K = hahn(2)
    rep = artin_schreier_analyze(K, K.t_power(1))
    assert rep.outcome == "ROOT-IN-K" and rep.n == 1


def test_as_wild_ramified():
    K = hahn(2)
    rep = artin_schreier_analyze(K, K.t_power(-1))
    assert rep.proved and (rep.e, rep.defect) == (2, 1)


def test_inseparable_is_purely_wild():
    K = hahn(3)
    rep = analyze_extension(K, X(K) ** 3 - K.t_power(1))
    assert rep.purely_wild and is_power_of(rep.n, 3)


def _rep(e, f, d=1, n=None):
    n = n if n is not None else e * f * d
    return ExtensionReport(n, e, f, d, frozenset(), "PROVED", "TEST")


def test_fundamental_inequality_examples():
    v = fundamental_inequality_check([_rep(2, 1)], 2)
    assert v.holds and v.equality
    v = fundamental_inequality_check([_rep(1, 1, 2)], 2)
    assert v.holds and not v.equality
    assert not fundamental_inequality_check([_rep(3, 1, n=2)], 2)


def test_defect_multiplicativity_examples():
    assert defect_multiplicativity_check(_rep(1, 1), _rep(1, 1), _rep(1, 1))
    assert defect_multiplicativity_check(_rep(1, 1, 2), _rep(1, 1, 1), _rep(1, 1, 2))
    assert not defect_multiplicativity_check(_rep(1, 1, 2), _rep(1, 1), _rep(1, 1))


def test_not_squarefree_rejected():
    K = hahn(3, "Q")
    x = X(K)
    with pytest.raises((NotSquarefree, UnsupportedShape)):
        analyze_extension(K, (x - K.t_power(1)) ** 2)


def test_ostrowski_battery():
    proved = 0
    for label, K, g in extension_battery(1):
        try:
            rep = analyze_extension(K, g)
        except (NotSquarefree, UnsupportedShape, PrecisionLoss):
            continue
        if rep.proved:
            proved += 1
            assert not ostrowski_violations(rep, max(K.char, 1)), label
    assert proved >= 100


@given(st.integers(0, 10**6))
def test_tame_implies_defectless(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5, 7])
    K = hahn(p, rng.choice(["Z", "Q", (p,)]))
    k = K.residue_field
    n = rng.randint(2, 4)
    coeffs = [K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(rng.randint(-3, 4)))
              for _ in range(n)]
    g = UPoly(K, coeffs + [K.one()])
    try:
        rep = analyze_extension(K, g)
    except (NotSquarefree, UnsupportedShape, PrecisionLoss):
        return
    if rep.proved:
        assert not ostrowski_violations(rep, p)
        if rep.tame:
            assert rep.defect == 1
