import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tamefields.errors import DependentValues, DimensionMismatch, NonUnitValue
from tamefields.finfield import prime_field
from tamefields.gauss import (WTD, GaussAssignment, MPoly, ValuedExtensionData, check_svtb,
                              gauss_residue, gauss_value, leading_form, witness_value, wtd_check)
from tamefields.generators import random_gauss_case, random_residue
from tamefields.ogroup import INFINITY, GroupElem
from tamefields.suite import gauss_case_outcome

from conftest import hahn


def g(*c):
    return GroupElem(tuple(F(x) for x in c))


def test_constant_value():
    K = hahn(5)
    A = GaussAssignment(K, (), 0)
    c = K.t_power(3) * 2
    assert gauss_value(A, MPoly.constant(K, 0, 0, c)) == g(3)
    assert gauss_value(A, MPoly(K, 0, 0)) is INFINITY


def test_two_level_example():
    K = hahn(5)
    A = GaussAssignment(K, (g(1, 0),), 0)
    x = MPoly.x(K, 1, 0, 0)
    f = K.t_power(1) * x + x * x
    assert gauss_value(A, f) == g(1, 1)


def test_equal_mu_takes_min():
    K = hahn(5)
    A = GaussAssignment(K, (), 1)
    y = MPoly.y(K, 0, 1, 0)
    f = MPoly(K, 0, 1, {((), (1,)): K.t_power(3) + K.t_power(5)})
    assert gauss_value(A, f) == g(3)
    assert gauss_value(A, f + y * K.t_power(5)) == g(3)


def test_residue_examples():
    K = hahn(5)
    A1 = GaussAssignment(K, (), 1)
    y1 = MPoly.y(K, 0, 1, 0)
    assert dict(gauss_residue(A1, y1 + 3)) == {(0,): 3, (1,): 1}
    assert dict(gauss_residue(A1, y1 * y1 + K.t_power(1))) == {(2,): 1}
    A2 = GaussAssignment(K, (), 2)
    y = [MPoly.y(K, 0, 2, j) for j in range(2)]
    assert dict(gauss_residue(A2, y[0] * y[1])) == {(1, 1): 1}
    with pytest.raises(NonUnitValue):
        gauss_residue(A1, y1 * K.t_power(1))


def test_assignment_checks():
    K = hahn(5)
    with pytest.raises(DependentValues):
        GaussAssignment(K, (g(1),), 0)
    with pytest.raises(DependentValues):
        GaussAssignment(K, (g(1, 0), g(2, 0)), 0)
    A = GaussAssignment(K, (g(1, 0),), 0)
    with pytest.raises(DimensionMismatch):
        gauss_value(A, MPoly(K, 2, 0, {((1, 0), ()): 1}))


def test_witness_matches_on_example():
    K = hahn(5)
    A = GaussAssignment(K, (g(1, 0),), 1)
    x, y = MPoly.x(K, 1, 1, 0), MPoly.y(K, 1, 1, 0)
    f = x * y + K.t_power(1) * x + y * y * 2
    assert witness_value(A, f, [2]) == gauss_value(A, f)


def test_cancellation_is_flagged():
    K = hahn(5)
    A = GaussAssignment(K, (), 1)
    y = MPoly.y(K, 0, 1, 0)
    f = y - 2 + K.t_power(3)
    w, R = leading_form(A, f)
    assert w.is_zero() and R.evaluate([2]) == 0
    assert witness_value(A, f, [2]) == g(3)
    agrees, cancelling = gauss_case_outcome(A, f, [2])
    assert agrees and cancelling


def test_svtb_examples():
    one = g(1)
    assert check_svtb(ValuedExtensionData((), (one,), 0), [one])
    KQ = ValuedExtensionData((), (g(F(1, 2)),), 0)
    assert check_svtb(KQ, [one])
    assert not check_svtb(ValuedExtensionData((), (one,), 0), [g(2), one])
    assert not check_svtb(ValuedExtensionData((), (one,), 1), [one])


def test_wtd_examples():
    assert wtd_check(1, 0, 1) is WTD.EQUALITY
    assert wtd_check(2, 1, 0) is WTD.STRICT
    assert wtd_check(1, 1, 1) is WTD.VIOLATION


def test_brute_force_200_cases():
    rng = random.Random(4)
    for _ in range(200):
        A, f = random_gauss_case(rng)
        point = [random_residue(A.base.residue_field, rng, nonzero=True) for _ in range(A.y_count)]
        agrees, _ = gauss_case_outcome(A, f, point)
        assert agrees, str(f)


@given(st.integers(0, 10**6))
def test_value_is_multiplicative(seed):
    rng = random.Random(seed)
    A, f = random_gauss_case(rng)
    h = MPoly(A.base, f.nx, f.ny, {key: c for key, c in random_gauss_case_like(A, rng).items()})
    if f.is_zero() or h.is_zero():
        return
    assert gauss_value(A, f * h) == gauss_value(A, f) + gauss_value(A, h)


@given(st.integers(0, 10**6))
def test_leading_residue_is_multiplicative(seed):
    rng = random.Random(seed)
    A, f = random_gauss_case(rng)
    h = MPoly(A.base, f.nx, f.ny, random_gauss_case_like(A, rng))
    if f.is_zero() or h.is_zero():
        return
    wf, Rf = leading_form(A, f)
    wh, Rh = leading_form(A, h)
    w, R = leading_form(A, f * h)
    assert w == wf + wh
    assert dict(R) == dict(Rf * Rh)


@given(st.integers(0, 10**6))
def test_gauss_residue_is_multiplicative_at_value_zero(seed):
    rng = random.Random(seed)
    K = hahn(rng.choice([2, 3, 5]))
    A = GaussAssignment(K, (), 2)

    def unit_poly():
        terms = {((), (rng.randint(0, 2), rng.randint(0, 2))): K.monomial(
            random_residue(K.residue_field, rng, nonzero=True), K.group.elem(rng.randint(0, 2)))
            for _ in range(3)}
        terms[((), (0, 0))] = K.one()
        return MPoly(K, 0, 2, terms)

    f, h = unit_poly(), unit_poly()
    if gauss_value(A, f) != K.group.elem(0) or gauss_value(A, h) != K.group.elem(0):
        return
    assert dict(gauss_residue(A, f * h)) == dict(gauss_residue(A, f) * gauss_residue(A, h))


def random_gauss_case_like(A, rng):
    K = A.base
    k = K.residue_field
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mu = tuple(rng.randint(0, 2) for _ in range(A.nx))
        nu = tuple(rng.randint(0, 2) for _ in range(A.y_count))
        e = K.group.elem(*(rng.randint(-2, 2) for _ in range(K.group.rank)))
        terms[(mu, nu)] = K.monomial(random_residue(k, rng, nonzero=True), e)
    return terms
