import itertools
from fractions import Fraction as F

import pytest

from tamefields.classify import (HENS, MAXP, RFD, V0, VGD, VT, check_axiom_instance,
                                 classify_field, kaplansky_check)
from tamefields.errors import InstanceIllFormed
from tamefields.finfield import QQ, fq_make, prime_field
from tamefields.ogroup import Atom, GroupElem, OrderedGroup, og_is_p_divisible
from tamefields.valfield import HahnField, RatFuncField

from conftest import X, group, hahn


def test_tame_verdicts():
    assert classify_field(hahn(5, "Q"))["tame"].is_yes
    assert classify_field(hahn(5, (5,)))["tame"].is_yes
    v = classify_field(hahn(5, "Z"))["tame"]
    assert v.is_no and v.witness == GroupElem((F(1),))
    assert classify_field(hahn(0, "Z"))["tame"].is_yes


def test_kaplansky_verdicts():
    kq = kaplansky_check(hahn(5, "Q"))
    assert kq.is_no and kq.witness == 5
    assert kaplansky_check(hahn(0, "Z")).is_yes
    assert kaplansky_check(hahn(5, "Z")).is_no
    assert classify_field(hahn(5, "Q"))["tame"].is_yes


def test_ratfunc_undecided():
    c = classify_field(RatFuncField(prime_field(2), perfect=True))
    assert not c["tame"].is_yes and not c["tame"].is_no
    assert c["p_divisible_value_group"].is_yes
    assert classify_field(RatFuncField(prime_field(2)))["tame"].is_no


def test_classification_dict_is_serialisable():
    d = classify_field(hahn(3, "Q", "Z")).to_dict()
    assert d["tame"]["status"] == "NO"
    assert set(d) >= {"tame", "separably_tame", "henselian", "defectless", "kaplansky"}


def test_vgd_instances():
    K = hahn(5, "Z")
    v = check_axiom_instance(K, VGD(K.t_power(1), 5))
    assert not v
    K5 = hahn(5, (5,))
    v = check_axiom_instance(K5, VGD(K5.t_power(1), 5))
    assert v and v.witness == K5.t_power(F(-1, 5))


def test_rfd_instances():
    k = fq_make(2, 2)
    K = HahnField(k, group("Q"))
    x = K.constant(k.gen) + K.t_power(F(1, 3))
    v = check_axiom_instance(K, RFD(x, 2))
    assert v
    y = v.witness
    assert K.residue(x * y * y) == k.one
    KQ = hahn(0)
    assert check_axiom_instance(KQ, RFD(KQ.constant(F(9, 4)), 2))
    assert not check_axiom_instance(KQ, RFD(KQ.constant(F(2)), 2))
    with pytest.raises(InstanceIllFormed):
        check_axiom_instance(hahn(3), RFD(hahn(3).one(), 2))


def test_valuation_axioms():
    K = hahn(3, "Q")
    t = K.t_power(F(1, 2))
    assert check_axiom_instance(K, V0(K.zero(), (t, K.one())))
    assert check_axiom_instance(K, V0(t, (K.one(),)))
    assert check_axiom_instance(K, VT(t, K.one() + t))


def test_hens_and_maxp():
    K = hahn(3)
    x = X(K)
    v = check_axiom_instance(K, HENS(x ** 2 - (K.one() + K.t_power(1)), K.one(), K.group.elem(10)))
    assert v and K.value(v.witness - K.one()) > K.group.elem(0)
    assert check_axiom_instance(K, MAXP(x ** 2 - K.t_power(2), K.t_power(1), (K.zero(),)))


ATOMS = [Atom.Z(), Atom.Q()] + [Atom.Zinv(p) for p in (2, 3, 5)] + [Atom.Zinv(2, 3)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tame_iff_p_divisible_exhaustive(p):
    for r in (1, 2):
        for atoms in itertools.product(ATOMS, repeat=r):
            G = OrderedGroup(atoms)
            for k in (prime_field(p), fq_make(p, 2)):
                tame = classify_field(HahnField(k, G))["tame"]
                assert tame.is_yes == og_is_p_divisible(G, p)[0], (str(G), p)
                assert tame.is_yes or tame.is_no
