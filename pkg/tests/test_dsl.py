import random
from fractions import Fraction as F

import pytest

from tamefields.doag.formula import format_formula
from tamefields.dsl import (KINDS, parse_element, parse_field, parse_group, parse_input,
                            parse_mpoly, parse_poly, parse_prime)
from tamefields.errors import DSLSyntaxError, SemanticError
from tamefields.finfield import QQ, fq_make
from tamefields.generators import (random_element, random_field, random_formula,
                                   random_gauss_case, random_group, random_upoly)
from tamefields.ogroup import GroupElem
from tamefields.upoly import UPoly
from tamefields.valfield import HahnField, RatFuncField

from conftest import X, group, hahn

ROUNDS = 200


def test_field_example():
    K = parse_input("field", "F(9)((t^Q))")
    assert isinstance(K, HahnField)
    assert K.residue_field.q == 9 and K.group == group("Q")


def test_poly_example():
    K = parse_field("F(2)((t^Z))")
    f = parse_input("poly", "X^2 - X - t^(-1)", field=K)
    assert isinstance(f, UPoly) and f.degree == 2
    assert f == X(K) ** 2 - X(K) - K.t_power(-1)


def test_not_a_prime_power():
    with pytest.raises(SemanticError):
        parse_input("field", "F(6)((t^Z))")


def test_groups():
    assert parse_group("Q x Z") == group("Q", "Z")
    assert parse_group("Z[1/6]") == group((2, 3))
    assert parse_group("(Z x Q) x Z[1/2]") == group("Z", "Q", (2,))
    assert parse_group("Z × Z") == group("Z", "Z")
    assert parse_group("0").is_trivial()


def test_ratfunc_fields():
    assert parse_field("F(2)(t)") == RatFuncField(fq_make(2, 1))
    assert parse_field("F(3)(t^(1/3^2))") == RatFuncField(fq_make(3, 1), level=2)
    assert parse_field("F(3)(t^(1/3))") == RatFuncField(fq_make(3, 1), level=1)
    assert parse_field("F(3)(t^(1/3^oo))") == RatFuncField(fq_make(3, 1), perfect=True)
    with pytest.raises(SemanticError):
        parse_field("F(3)(t^(1/2))")


def test_elements():
    K = parse_field("F(9)((t^Q))")
    k = K.residue_field
    x = parse_element("(g + 1)*t^(1/2) + 2*g", K)
    assert x.coefficient(K.group.elem(F(1, 2))) == k.add(k.gen, k.one)
    assert K.residue(x) == k.mul(2, k.gen)
    K5 = parse_field("F(5)((t^Z))")
    assert parse_element("7", K5) == K5.from_int(2)
    KQ = parse_field("Q((t^Z))")
    assert parse_element("1/2 + t", KQ) == KQ.constant(F(1, 2)) + KQ.t_power(1)


def test_element_precision():
    K = parse_field("F(3)((t^Z))")
    x = parse_element("1 + t + O(t^3)", K)
    assert not x.is_exact() and x.prec == K.group.elem(3)
    y = parse_element("1/(1 - t)", parse_field("F(3)((t^Z))", default_prec=F(6)))
    assert y.prec == K.group.elem(6)


def test_rank_two_exponents():
    K = parse_field("F(2)((t^(Z x Q)))")
    x = parse_element("t^(1, -1/2)", K)
    assert K.value(x) == GroupElem((F(1), F(-1, 2)))
    with pytest.raises(SemanticError):
        parse_element("t", K)


def test_semantic_errors():
    K = parse_field("F(2)((t^Z))")
    with pytest.raises(SemanticError):
        parse_element("t^(1/2)", K)
    with pytest.raises(SemanticError):
        parse_element("O(t^2)", parse_field("F(2)(t)"))
    with pytest.raises(SemanticError):
        parse_poly("1/X", K)
    with pytest.raises(SemanticError):
        parse_input("element", "1")
    with pytest.raises(SemanticError):
        parse_input("matrix", "1")
    with pytest.raises(SemanticError):
        parse_prime("9")
    assert parse_prime("7") == 7


@pytest.mark.parametrize("text,col", [("F(3)((t^Z)", 11), ("Z x", 4), ("Z[1/]", 5)])
def test_syntax_error_positions(text, col):
    kind = "field" if text.startswith("F") else "group"
    with pytest.raises(DSLSyntaxError) as ei:
        parse_input(kind, text)
    assert ei.value.line == 1 and ei.value.col == col


def test_syntax_error_second_line():
    with pytest.raises(DSLSyntaxError) as ei:
        parse_group("Z x\n  x Q")
    assert ei.value.line == 2 and ei.value.col == 3


def test_mpoly():
    K = parse_field("F(5)((t^Z))")
    f = parse_mpoly("x1*y1 + t*y1^2 + 1", K)
    assert (f.nx, f.ny) == (1, 1)
    g = parse_mpoly("y2", K, nx=2, ny=3)
    assert (g.nx, g.ny) == (2, 3)


# -- round trips: print then parse gives an equal value ----------------------

def test_round_trip_groups():
    rng = random.Random(1)
    for _ in range(ROUNDS):
        G = random_group(rng, max_rank=3)
        assert parse_group(str(G)) == G


def test_round_trip_fields():
    rng = random.Random(2)
    for _ in range(ROUNDS):
        K = random_field(rng)
        assert parse_field(str(K)) == K


def test_round_trip_elements():
    rng = random.Random(3)
    for i in range(ROUNDS):
        K = random_field(rng)
        x = random_element(K, rng)
        if K.backend == "HAHN" and i % 4 == 0 and not x.is_zero():
            x = x.truncate(K.value(x) + K.group.unit(K.group.rank - 1) * 2)
        y = parse_element(str(x), K)
        assert y == x and y.is_exact() == x.is_exact(), str(x)


def test_round_trip_polys():
    rng = random.Random(4)
    for _ in range(ROUNDS):
        K = random_field(rng)
        f = random_upoly(K, rng, rng.randint(0, 4), monic=rng.random() < 0.5)
        assert parse_poly(str(f), K) == f, str(f)


def test_round_trip_mpolys():
    rng = random.Random(5)
    for _ in range(ROUNDS):
        A, f = random_gauss_case(rng)
        assert parse_mpoly(str(f), A.base, nx=f.nx, ny=f.ny) == f, str(f)


def test_round_trip_formulas():
    rng = random.Random(6)
    for _ in range(ROUNDS):
        phi = random_formula(rng, free=("a", "b"), bound=("x", "y", "z"), depth=3)
        assert parse_input("formula", format_formula(phi)) == phi


def test_kinds_listed():
    assert set(KINDS) == {"group", "field", "element", "poly", "mpoly", "formula"}
