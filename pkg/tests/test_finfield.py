import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tamefields.errors import NotPrime, UnsupportedField, WrongRing
from tamefields.finfield import (QQ, field_of_order, fq_is_separable, fq_make, fq_pth_root,
                                 fq_poly_factor, is_irreducible, poly_mul, prime_field)

from conftest import hahn


def test_make_moduli():
    assert fq_make(2, 1).q == 2
    assert tuple(fq_make(2, 2).modulus) == (1, 1, 1)
    assert tuple(fq_make(3, 2).modulus) == (1, 0, 1)


def test_make_rejects_nonprime():
    with pytest.raises(NotPrime):
        fq_make(6, 1)
    with pytest.raises(Exception):
        field_of_order(12)


def test_factor_examples():
    F2, F3 = prime_field(2), prime_field(3)
    assert fq_poly_factor(F2, [1, 0, 1]) == [([1, 1], 2)]
    assert fq_poly_factor(F3, [1, 0, 1]) == [([1, 0, 1], 1)]


def test_factor_wrong_ring():
    K = hahn(5)
    with pytest.raises((UnsupportedField, WrongRing)):
        fq_poly_factor(prime_field(5), [K.t_power(1) * -1, 0, 1])


def test_separable_examples():
    F2, F3 = prime_field(2), prime_field(3)
    assert fq_is_separable(F2, [1, 1, 1])
    assert not fq_is_separable(F2, [1, 0, 1])
    assert fq_is_separable(F3, [0, 2, 0, 1])


def test_pth_root_examples():
    F4 = fq_make(2, 2)
    assert fq_pth_root(F4, F4.one) == F4.one
    F2 = prime_field(2)
    assert [fq_pth_root(F2, a) for a in (0, 1)] == [0, 1]
    F9 = fq_make(3, 2)
    b = fq_pth_root(F9, F9.gen)
    assert F9.pow(b, 3) == F9.gen
    with pytest.raises(UnsupportedField):
        fq_pth_root(QQ, Fraction(1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81])
def test_pth_root_exhaustive(q):
    k = field_of_order(q)
    for a in k.elements():
        assert k.pow(fq_pth_root(k, a), k.p) == a


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_field_axioms_random(q):
    k = field_of_order(q)
    rng = random.Random(q)
    for _ in range(1000):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert k.add(k.add(a, b), c) == k.add(a, k.add(b, c))
        assert k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c))
        assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
        assert k.add(a, k.neg(a)) == k.zero
        if a:
            assert k.mul(a, k.inv(a)) == k.one


def _product(k, factors):
    out = [k.one]
    for g, m in factors:
        for _ in range(m):
            out = poly_mul(k, out, g)
    return out


@given(st.sampled_from([2, 3, 4, 5, 9]), st.lists(st.integers(0, 80), min_size=2, max_size=7))
def test_factor_reconstructs(q, raw):
    k = field_of_order(q)
    f = [c % q for c in raw]
    if not any(f[1:]):
        return
    while f[-1] == 0:
        f.pop()
    f = [k.div(c, f[-1]) for c in f]
    factors = fq_poly_factor(k, f)
    assert _product(k, factors) == f
    for g, _ in factors:
        assert g[-1] == k.one and is_irreducible(k, g)
