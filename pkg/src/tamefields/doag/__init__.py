"""Ordered abelian group formulas and the decision procedure for divisible groups."""

from .evaluate import eval_in_q
from .formula import (FALSE, TRUE, And, Atom, Const, Formula, Implies, Not, Or, Quant,
                      format_formula, free_vars, is_quantifier_free, parse_formula,
                      quantifier_count)
from .groups import (DISTINGUISHED, EQUIVALENT_ON_BATTERY, PROVED_EQUIVALENT, EquivVerdict,
                     canonical, evaluate_in_group, og_sentence_equiv)
from .qe import decide_all_models, doag_decide_sentence, doag_qe, eval_qf, eval_trivial

__all__ = [
    "TRUE", "FALSE", "And", "Atom", "Const", "Formula", "Implies", "Not", "Or", "Quant",
    "format_formula", "free_vars", "is_quantifier_free", "parse_formula", "quantifier_count",
    "doag_qe", "doag_decide_sentence", "decide_all_models", "eval_qf", "eval_trivial",
    "eval_in_q", "og_sentence_equiv", "evaluate_in_group", "canonical", "EquivVerdict",
    "PROVED_EQUIVALENT", "EQUIVALENT_ON_BATTERY", "DISTINGUISHED",
]
