import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tamefields.extension import is_power_of
from tamefields.generators import random_residue
from tamefields.hensel import hensel_lift
from tamefields.pcs import (NoLimit, PCSPrefix, artin_schreier_prefix, geometric_prefix,
                            pcs_limit_in_field, pcs_poly_trace, pcs_validate)
from tamefields.upoly import UPoly

from conftest import X, hahn


def partial_sums(K, n, start=1):
    t = K.t_power(1)
    out, acc = [], K.zero()
    for i in range(start, start + n):
        acc = acc + t ** i
        out.append(acc)
    return out


def test_validate_geometric():
    K = hahn(3)
    assert pcs_validate(K, partial_sums(K, 6, start=0))


def test_validate_constant_sequence():
    K = hahn(3)
    v = pcs_validate(K, [K.one()] * 4)
    assert not v and v.index == 0


def test_validate_reports_first_violation():
    K = hahn(3)
    t = K.t_power(1)
    v = pcs_validate(K, [K.zero(), t, t + t ** 3, t + t ** 3 + t ** 2])
    assert not v and v.index == 2
    assert [g.coords[0] for g in v.gaps] == [1, 3, 2]


def test_validate_too_short():
    with pytest.raises(ValueError):
        pcs_validate(hahn(3), [hahn(3).one()])


def test_trace_constant_polynomial():
    K = hahn(3)
    tr = pcs_poly_trace(K, geometric_prefix(K, 8), UPoly.const(K, K.one()))
    assert tr.fit.kind == "FIXED" and tr.fit.beta.is_zero()


def test_trace_identity_polynomial():
    K = hahn(3)
    tr = pcs_poly_trace(K, PCSPrefix(partial_sums(K, 8)), X(K))
    assert tr.fit.kind == "FIXED" and tr.fit.beta == K.group.elem(1)
    tr0 = pcs_poly_trace(K, geometric_prefix(K, 8), X(K))
    assert tr0.fit.kind == "FIXED" and tr0.fit.beta.is_zero()


def test_artin_schreier_affine_fit():
    K = hahn(2, (2,))
    a = K.t_power(-1)
    pre = artin_schreier_prefix(K, a, 10)
    x = X(K)
    tr = pcs_poly_trace(K, pre, x ** 2 - x - a)
    fit = tr.fit
    assert fit.kind == "AFFINE" and fit.beta.is_zero() and fit.h == 2 and fit.tail_start == 0
    assert [v.coords[0] for v in tr.values] == [F(-1, 2 ** i) for i in range(11)]
    assert [g.coords[0] for g in tr.gaps] == [F(-1, 2 ** (i + 1)) for i in range(10)]


def test_limit_geometric():
    K = hahn(3)
    lim = pcs_limit_in_field(K, geometric_prefix(K, 2), K.group.elem(15))
    assert lim == partial_sums(K, 16, start=0)[-1]


def test_limit_artin_schreier_dyadic():
    K = hahn(2, (2,))
    prec = K.group.elem(F(-1, 2 ** 8))
    lim = pcs_limit_in_field(K, artin_schreier_prefix(K, K.t_power(-1), 1), prec)
    assert lim == K.series([((F(-1, 2 ** i),), 1) for i in range(1, 9)])


def test_limit_leaves_integer_group():
    K = hahn(2)
    lim = pcs_limit_in_field(K, artin_schreier_prefix(K, K.t_power(-1), 0), K.group.elem(0))
    assert isinstance(lim, NoLimit) and not lim


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_hensel_approximations_form_pcs(seed):
    rng = random.Random(seed)
    K = hahn(rng.choice([3, 5, 7]))
    k = K.residue_field
    r = random_residue(k, rng, nonzero=True)
    c = K.constant(k.mul(r, r)) + K.monomial(random_residue(k, rng, nonzero=True),
                                             K.group.elem(rng.randint(1, 2)))
    res = hensel_lift(K, X(K) ** 2 - c, K.constant(r), 24)
    if len(res.approximations) >= 3:
        assert pcs_validate(K, res.approximations)


@given(st.integers(0, 10**6))
def test_affine_h_is_power_of_p(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    K = hahn(p, (p,))
    k = K.residue_field
    a = K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(-rng.randint(1, 3)))
    pre = artin_schreier_prefix(K, a, 6)
    if len(pre.terms) < 4:
        return
    x = X(K)
    fit = pcs_poly_trace(K, pre, x ** p - x - a).fit
    if fit.kind == "AFFINE":
        assert fit.h.denominator == 1 and is_power_of(int(fit.h), p)


@given(st.integers(1, 3), st.integers(6, 12))
def test_limit_gives_unit_slope(step, prec):
    K = hahn(3, "Q")
    pre = geometric_prefix(K, 2, step_value=F(1, step))
    lim = pcs_limit_in_field(K, pre, K.group.elem(prec))
    terms = pre.extend(3 * prec * step).terms
    before = PCSPrefix(terms[:terms.index(lim)])
    fit = pcs_poly_trace(K, before, X(K) - lim).fit
    assert fit.kind == "AFFINE" and fit.h == 1 and fit.beta.is_zero()
