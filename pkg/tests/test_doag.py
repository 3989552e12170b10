import random

import pytest
from hypothesis import given, settings, strategies as st

from tamefields.doag import (DISTINGUISHED, PROVED_EQUIVALENT, Atom, Const, doag_decide_sentence,
                             doag_qe, eval_in_q, eval_qf, og_sentence_equiv)
from tamefields.doag.battery import STANDARD_SENTENCES, standard_battery
from tamefields.doag.formula import format_formula, is_quantifier_free, lin, parse_formula
from tamefields.doag.groups import evaluate_in_group
from tamefields.errors import DSLSyntaxError, SemanticError
from tamefields.generators import random_assignment, random_formula

from conftest import group


def qe(text):
    return doag_qe(parse_formula(text))


def test_qe_examples():
    assert qe("exists y (2*y = x)") == Const(True)
    assert qe("exists y (y > 0 & y < x)") == Atom("<", lin({"x": -1}))
    assert qe("exists y (y < x & y > x)") == Const(False)


def test_qe_output_is_quantifier_free():
    phi = qe("forall y (y < x -> exists z (y < z & z < x))")
    assert is_quantifier_free(phi)


def test_decide_examples():
    assert doag_decide_sentence(parse_formula("forall x exists y (y + y = x)"))
    assert not doag_decide_sentence(parse_formula("exists x (x > 0 & forall y (y > 0 -> y >= x))"))
    phi = parse_formula("exists x (x > 0)")
    assert doag_decide_sentence(phi, nontrivial=True)
    assert not doag_decide_sentence(phi, nontrivial=False)


def test_decide_rejects_free_variables():
    with pytest.raises(Exception):
        doag_decide_sentence(parse_formula("x > 0"))


@pytest.mark.parametrize("name,text,truth", STANDARD_SENTENCES)
def test_battery_truth(name, text, truth):
    phi = parse_formula(text)
    assert doag_decide_sentence(phi) == truth
    assert eval_in_q(phi) == truth
    assert evaluate_in_group(group("Q"), phi) == truth


def test_equivalence_verdicts():
    b = standard_battery()
    assert og_sentence_equiv(group("Q"), group("Q", "Q"), b).kind == PROVED_EQUIVALENT
    v = og_sentence_equiv(group("Z"), group("Q"), b)
    assert v.kind == DISTINGUISHED and (v.value1, v.value2) == (False, True)
    assert format_formula(v.sentence) == "forall x (exists y (2*y = x))"
    v = og_sentence_equiv(group((5,)), group("Q"), b)
    assert v.kind == DISTINGUISHED and (v.value1, v.value2) == (False, True)


def test_group_specific_truths():
    least = parse_formula("exists x (x > 0 & forall y (y > 0 -> y >= x))")
    assert evaluate_in_group(group("Z"), least)
    # lex products: the last factor is least significant
    assert evaluate_in_group(group("Q", "Z"), least)
    assert not evaluate_in_group(group("Z", "Q"), least)
    assert evaluate_in_group(group("Z", "Q"), parse_formula("forall x exists y (5*y = x)")) is False
    assert evaluate_in_group(group((5,)), parse_formula("forall x exists y (5*y = x)"))


def test_parse_errors():
    with pytest.raises(DSLSyntaxError) as ei:
        parse_formula("exists x (x <")
    assert ei.value.line == 1 and ei.value.col >= 1
    with pytest.raises(SemanticError):
        parse_formula("x + 1 > 0")


def test_qe_round_trips():
    rng = random.Random(3)
    for _ in range(300):
        nb = rng.randint(1, 3)
        free = ("a", "b")[:4 - nb]
        phi = random_formula(rng, free=free, bound=("x", "y", "z")[:nb])
        qf = doag_qe(phi)
        for _ in range(50):
            env = random_assignment(rng, free)
            assert eval_qf(qf, env) == eval_in_q(phi, env), format_formula(phi)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_qe_idempotent(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, free=("a", "b"), bound=("x", "y"))
    once = doag_qe(phi)
    assert doag_qe(once) == once


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_printer_round_trip(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, free=("a", "b"), bound=("x", "y", "z"))
    assert parse_formula(format_formula(phi)) == phi
