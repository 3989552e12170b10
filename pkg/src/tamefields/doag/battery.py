"""Standard sentences with their hand-derived truth values in nontrivial divisible groups."""

from __future__ import annotations

from .formula import parse_formula

# (name, sentence, truth in every nontrivial divisible ordered abelian group)
STANDARD_SENTENCES = (
    ("div2", "forall x exists y (2*y = x)", True),
    ("div3", "forall x exists y (3*y = x)", True),
    ("density", "forall x forall y (x < y -> exists z (x < z & z < y))", True),
    ("least_positive", "exists x (x > 0 & forall y (y > 0 -> y >= x))", False),
    ("no_least_positive", "forall x (x > 0 -> exists y (y > 0 & y < x))", True),
    ("torsion_free_2", "forall x (2*x = 0 -> x = 0)", True),
    ("torsion_free_5", "forall x (5*x = 0 -> x = 0)", True),
    ("nontrivial", "exists x (x > 0)", True),
    ("all_zero", "forall x (x = 0)", False),
    ("no_maximum", "forall x exists y (y > x)", True),
    ("maximum", "exists x forall y (y <= x)", False),
    ("totality", "forall x forall y (x < y | x = y | y < x)", True),
)


def standard_battery():
    """The sentences of STANDARD_SENTENCES, parsed."""
    return [parse_formula(text) for _, text, _ in STANDARD_SENTENCES]
