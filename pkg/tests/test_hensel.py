import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tamefields.errors import PreconditionFailed
from tamefields.finfield import prime_field
from tamefields.generators import random_residue
from tamefields.hensel import (NoRoot, artin_schreier_trace, as_root_in_field, hensel_lift,
                               newton_iteration_bound, newton_polygon)
from tamefields.ogroup import INFINITY, GroupElem
from tamefields.upoly import UPoly

from conftest import X, hahn


def at_least(K, x, prec):
    v = K.value(x)
    return v is INFINITY or v >= K.group.elem(prec)


def test_exact_root_needs_no_iterations():
    K = hahn(3)
    a = K.one() + K.t_power(2)
    res = hensel_lift(K, X(K) - a, a, 10)
    assert res.root == a and res.iterations == 0


def test_sqrt_one_plus_t():
    K = hahn(3)
    target = K.one() + K.t_power(1)
    res = hensel_lift(K, X(K) ** 2 - target, K.one(), 20)
    assert at_least(K, res.root * res.root - target, 20)
    assert [res.root.coefficient(K.group.elem(i)) for i in range(3)] == [1, 2, 1]
    assert K.value(res.root - K.one()) > K.group.elem(0)


def test_ramified_root_rejected():
    K = hahn(3)
    with pytest.raises(PreconditionFailed):
        hensel_lift(K, X(K) ** 2 - K.t_power(1), K.zero(), 10)


def test_quadratic_convergence_count():
    K = hahn(3)
    res = hensel_lift(K, X(K) ** 2 - (K.one() + K.t_power(1)), K.one(), 40)
    assert res.iterations <= 7
    assert res.iterations <= newton_iteration_bound(K.group.elem(1), K.group.elem(40)) + 1


def test_newton_polygon_examples():
    K = hahn(3)
    x, t = X(K), K.t_power(1)
    np1 = newton_polygon(K, x ** 2 - t)
    assert len(np1.segments) == 1
    assert np1.root_values() == [(GroupElem((F(1, 2),)), 2)]
    np2 = newton_polygon(K, x ** 2 + t * x + t ** 3)
    assert [(i, v) for i, v in np2.vertices] == [(0, K.group.elem(3)), (1, K.group.elem(1)),
                                                 (2, K.group.elem(0))]
    assert np2.root_values() == [(K.group.elem(2), 1), (K.group.elem(1), 1)]
    np3 = newton_polygon(K, x - K.one())
    assert np3.root_values() == [(K.group.elem(0), 1)]


def test_as_root_geometric():
    K = hahn(2)
    t = K.t_power(1)
    z = as_root_in_field(K, t, K.group.elem(20))
    assert z == sum((t ** (2 ** i) for i in range(1, 5)), t)
    assert at_least(K, z * z + z - t, 20)


def test_as_root_dyadic_group():
    K = hahn(2, (2,))
    a = K.t_power(-1)
    prec = K.group.elem(F(-1, 2 ** 8))
    z = as_root_in_field(K, a, prec)
    expected = K.series([((F(-1, 2 ** i),), 1) for i in range(1, 9)])
    assert (z - expected).is_zero() or z - expected == K.one()
    v = K.value(z * z - z - a)
    assert v is INFINITY or v >= prec


def test_as_root_absent_over_z():
    K = hahn(2)
    z = as_root_in_field(K, K.t_power(-1), K.group.elem(0))
    assert isinstance(z, NoRoot) and not z
    assert z.reason == "slope_not_in_group" and "-1/2" in z.detail


def test_as_trace_values_increase():
    K = hahn(3, (3,))
    tr = artin_schreier_trace(K, K.t_power(-1), K.group.elem(F(-1, 3 ** 5)))
    vals = [v for v in tr.residual_values if v is not INFINITY]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def _rand_poly(K, rng, deg):
    k = K.residue_field
    coeffs = [K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(rng.randint(0, 6)))
              if rng.random() < 0.8 else K.zero() for _ in range(deg)]
    coeffs[0] = K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(rng.randint(0, 6)))
    return UPoly(K, coeffs + [K.one()])


@given(st.integers(0, 10**6))
def test_slopes_of_product_are_union(seed):
    rng = random.Random(seed)
    K = hahn(rng.choice([2, 3, 5, 0]), rng.choice(["Z", "Q"]))
    f, g = _rand_poly(K, rng, rng.randint(1, 3)), _rand_poly(K, rng, rng.randint(1, 3))
    s = sorted(newton_polygon(K, f).slope_multiset() + newton_polygon(K, g).slope_multiset(),
               key=lambda e: e.coords)
    assert newton_polygon(K, f * g).slope_multiset() == s


@given(st.integers(0, 10**6))
def test_hensel_quadratic_convergence(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    K = hahn(p)
    k = K.residue_field
    r = random_residue(k, rng, nonzero=True)
    c = K.constant(k.mul(r, r)) + K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(rng.randint(1, 3)))
    f = X(K) ** 2 - c
    res = hensel_lift(K, f, K.constant(r), 24)
    assert at_least(K, res.root * res.root - c, 24)
    assert K.value(res.root - K.constant(r)) > K.group.elem(0)
    for (v0, d0), (v1, _) in zip(res.trace, res.trace[1:]):
        if v0 is INFINITY or v1 is INFINITY:
            continue
        # corrections are truncated at the target, so the doubling holds up to it
        assert v1 >= min(v0 * 2 - d0 * 2, K.group.elem(24))


@given(st.integers(0, 10**6))
def test_as_root_translates_are_roots(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    K = hahn(p, rng.choice(["Z", "Q", (p,)]))
    k = K.residue_field
    a = K.zero()
    for _ in range(2):
        a = a + K.monomial(random_residue(k, rng, nonzero=True), K.group.elem(rng.randint(1, 4)))
    prec = K.group.elem(12)
    z = as_root_in_field(K, a, prec)
    if isinstance(z, NoRoot):
        return
    for i in range(p):
        w = z + K.from_int(i)
        assert at_least(K, w ** p - w - a, 12)
