"""Sentence-level comparison of ordered abelian groups.

Nontrivial divisible groups all satisfy the same sentences, which are decided
by quantifier elimination.  Other groups are only evaluated on a catalogue
of recognised sentence shapes (divisibility, nontriviality, discreteness,
density, torsion-freeness), matched up to renaming of bound variables and
normalisation of atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ..errors import DepthBoundExceeded
from ..ogroup import OrderedGroup
from .formula import (And, Atom, Const, Formula, Implies, Not, Or, Quant, format_formula,
                      parse_formula)
from .qe import doag_decide_sentence, eval_trivial, normalize_atom

PROVED_EQUIVALENT = "PROVED_EQUIVALENT"
EQUIVALENT_ON_BATTERY = "EQUIVALENT_ON_BATTERY"
DISTINGUISHED = "DISTINGUISHED"


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _nnf_full(phi: Formula, neg: bool = False) -> Formula:
    """NNF that keeps quantifiers; atoms stay positive or under a single Not."""
    if isinstance(phi, Const):
        return Const(phi.value != neg)
    if isinstance(phi, Atom):
        a = normalize_atom(phi)
        if isinstance(a, Const):
            return Const(a.value != neg)
        if not neg:
            return a
        if a.op == "<":   # !(t < 0) -> t = 0 | -t < 0
            return Or((normalize_atom(Atom("=", a.form)),
                       normalize_atom(Atom("<", tuple((v, -c) for v, c in a.form)))))
        return Not(a)
    if isinstance(phi, Not):
        return _nnf_full(phi.arg, not neg)
    if isinstance(phi, Implies):
        return _nnf_full(Or((Not(phi.left), phi.right)), neg)
    if isinstance(phi, (And, Or)):
        kids = tuple(_nnf_full(a, neg) for a in phi.args)
        flip = isinstance(phi, And) == neg
        return Or(kids) if flip else And(kids)
    kind = phi.kind if not neg else ("exists" if phi.kind == "forall" else "forall")
    return Quant(kind, phi.var, _nnf_full(phi.body, neg))


def canonical(phi: Formula) -> str:
    """A string equal for sentences that differ by renaming and atom normalisation."""
    counter = [0]

    def walk(psi, names):
        if isinstance(psi, Const):
            return "T" if psi.value else "F"
        if isinstance(psi, Atom):
            form = sorted((names.get(v, v), c) for v, c in psi.form)
            return f"[{psi.op} {' '.join(f'{c}{v}' for v, c in form)}]"
        if isinstance(psi, Not):
            return f"!{walk(psi.arg, names)}"
        if isinstance(psi, (And, Or)):
            op = "&" if isinstance(psi, And) else "|"
            flat = []
            for a in psi.args:
                flat.extend(a.args if type(a) is type(psi) else [a])
            return "(" + op.join(sorted(walk(a, names) for a in flat)) + ")"
        name = f"v{counter[0]}"
        counter[0] += 1
        return f"{psi.kind[0].upper()}{name}.{walk(psi.body, {**names, psi.var: name})}"

    return walk(_nnf_full(phi), {})


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

def _div(n):
    return lambda g: all(f.is_divisible_by(n) for f in g.factors)


def _nontrivial(g):
    return not g.is_trivial()


def _discrete(g):
    return not g.is_trivial() and g.factors[-1].kind == "Z"


_TEMPLATES: list[tuple[str, Callable[[OrderedGroup], bool]]] = []


def _register(texts: Sequence[str], truth: Callable[[OrderedGroup], bool]):
    for t in texts:
        _TEMPLATES.append((t, truth))


for _n in range(2, 13):
    _register([f"forall x exists y ({_n}*y = x)", f"forall x exists y (x = {_n}*y)"], _div(_n))
    _register([f"forall x ({_n}*x = 0 -> x = 0)"], lambda g: True)
_register(["forall x exists y (y + y = x)"], _div(2))
_register(["forall x exists y (y + y + y = x)"], _div(3))
_register(["exists x (x > 0)", "exists x (x < 0)", "exists x (x != 0)", "exists x !(x = 0)"],
          _nontrivial)
_register(["exists x (x > 0 & forall y (y > 0 -> y >= x))",
           "exists x (x > 0 & !exists y (y > 0 & y < x))"], _discrete)
_register(["forall x forall y (x < y -> exists z (x < z & z < y))",
           "forall x (x > 0 -> exists y (y > 0 & y < x))"], lambda g: not _discrete(g))
_register(["forall x exists y (y > x)", "forall x exists y (y < x)"], lambda g: True)
_register(["forall x forall y (x < y | x = y | y < x)"], lambda g: True)

_CATALOGUE: dict[str, Callable[[OrderedGroup], bool]] = {}
for _text, _truth in _TEMPLATES:
    _phi = parse_formula(_text)
    _CATALOGUE[canonical(_phi)] = _truth
    _CATALOGUE.setdefault(canonical(Not(_phi)), (lambda t: (lambda g: not t(g)))(_truth))


def evaluate_in_group(g: OrderedGroup, phi: Formula) -> bool:
    """Truth of a sentence in the lex product g."""
    if g.is_trivial():
        return eval_trivial(phi)
    if g.is_divisible():
        return doag_decide_sentence(phi, nontrivial=True)
    truth = _CATALOGUE.get(canonical(phi))
    if truth is None:
        raise DepthBoundExceeded(
            f"{format_formula(phi)} is outside the evaluable fragment for {g}")
    return truth(g)


@dataclass(frozen=True)
class EquivVerdict:
    kind: str
    sentence: Optional[Formula] = None
    value1: Optional[bool] = None
    value2: Optional[bool] = None

    def __str__(self):
        if self.kind == DISTINGUISHED:
            return (f"DISTINGUISHED by {format_formula(self.sentence)}: "
                    f"{self.value1} vs {self.value2}")
        return self.kind


def og_sentence_equiv(g1: OrderedGroup, g2: OrderedGroup,
                      battery: Sequence[Formula]) -> EquivVerdict:
    def divisible_nontrivial(g):
        return not g.is_trivial() and g.is_divisible()

    if (divisible_nontrivial(g1) and divisible_nontrivial(g2)) or (g1.is_trivial() and g2.is_trivial()):
        return EquivVerdict(PROVED_EQUIVALENT)
    for phi in battery:
        a, b = evaluate_in_group(g1, phi), evaluate_in_group(g2, phi)
        if a != b:
            return EquivVerdict(DISTINGUISHED, phi, a, b)
    return EquivVerdict(EQUIVALENT_ON_BATTERY)
