"""Quantifier elimination for divisible ordered abelian groups.

Innermost quantifiers are removed first.  The matrix is put in disjunctive
normal form over the atoms ``t = 0`` and ``t < 0``; an equation in the
eliminated variable is used for substitution, otherwise every lower bound
is paired with every upper bound (Fourier-Motzkin).  A variable with bounds
on one side only can always be chosen, because a nontrivial divisible
ordered group has no endpoints and is dense.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotClosed
from .formula import (FALSE, TRUE, And, Atom, Const, Formula, Implies, Not, Or, Quant,
                      conj, disj, free_vars, lin_add, lin_coeff, lin_primitive, lin_scale)


def _ground(a: Atom):
    """Truth value of an atom without variables, else None."""
    if a.form:
        return None
    return a.op == "="


def normalize_atom(a: Atom) -> Formula:
    g = _ground(a)
    if g is not None:
        return TRUE if g else FALSE
    form = lin_primitive(a.form)
    if a.op == "=" and form[0][1] < 0:
        form = lin_scale(form, -1)
    return Atom(a.op, form)


def nnf(phi: Formula, negate: bool = False) -> Formula:
    """Negation normal form over positive atoms (quantifier-free input)."""
    if isinstance(phi, Const):
        return Const(phi.value != negate)
    if isinstance(phi, Atom):
        if not negate:
            return normalize_atom(phi)
        if phi.op == "=":       # t != 0  <=>  t < 0 | -t < 0
            return disj(normalize_atom(Atom("<", phi.form)),
                        normalize_atom(Atom("<", lin_scale(phi.form, -1))))
        # !(t < 0)  <=>  -t < 0 | t = 0
        return disj(normalize_atom(Atom("<", lin_scale(phi.form, -1))),
                    normalize_atom(Atom("=", phi.form)))
    if isinstance(phi, Not):
        return nnf(phi.arg, not negate)
    if isinstance(phi, Implies):
        return nnf(Or((Not(phi.left), phi.right)), negate)
    if isinstance(phi, And):
        parts = [nnf(a, negate) for a in phi.args]
        return disj(*parts) if negate else conj(*parts)
    if isinstance(phi, Or):
        parts = [nnf(a, negate) for a in phi.args]
        return conj(*parts) if negate else disj(*parts)
    raise ValueError("nnf expects a quantifier-free formula")


def dnf(phi: Formula) -> list[frozenset]:
    """Clauses (sets of atoms) of an NNF formula; [] is false, [set()] is true."""
    if isinstance(phi, Const):
        return [frozenset()] if phi.value else []
    if isinstance(phi, Atom):
        return [frozenset([phi])]
    if isinstance(phi, Or):
        out = []
        for a in phi.args:
            out.extend(dnf(a))
        return _prune(out)
    if isinstance(phi, And):
        clauses = [frozenset()]
        for a in phi.args:
            clauses = _prune([c | d for c in clauses for d in dnf(a)])
        return clauses
    raise ValueError("dnf expects an NNF formula")


def _contradictory(clause: frozenset) -> bool:
    forms = {(a.op, a.form) for a in clause}
    for op, form in forms:
        neg = lin_scale(form, -1)
        if op == "<" and (("<", neg) in forms or ("=", form) in forms or ("=", neg) in forms):
            return True
    return False


def _prune(clauses: list) -> list:
    seen = set()
    out = []
    for c in clauses:
        if c in seen or _contradictory(c):
            continue
        seen.add(c)
        out.append(c)
    # drop clauses that contain another clause (absorption)
    out.sort(key=len)
    kept = []
    for c in out:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _eliminate(clause: frozenset, x: str) -> Formula:
    """Exists x (conjunction of atoms), returned quantifier-free."""
    eqs = [a for a in clause if a.op == "=" and lin_coeff(a.form, x) != 0]
    rest = [a for a in clause if lin_coeff(a.form, x) == 0]
    if eqs:
        pivot = eqs[0]
        c = lin_coeff(pivot.form, x)
        # x = -(pivot - c x)/c ; substitute into every other atom
        out = []
        for a in clause:
            if a is pivot:
                continue
            d = lin_coeff(a.form, x)
            if d == 0:
                out.append(normalize_atom(a))
                continue
            # a.form - (d/c) * pivot.form has no x; for "<" the sign is preserved
            out.append(normalize_atom(Atom(a.op, lin_add(a.form, pivot.form, -d / c))))
        return conj(*out)
    lower, upper = [], []   # x > l  and  x < u, stored as linear forms without x
    for a in clause:
        c = lin_coeff(a.form, x)
        if c == 0:
            continue
        # c x + r < 0  ->  x < -r/c (c > 0)  or  x > -r/c (c < 0)
        r = lin_add(a.form, ((x, c),), -1)
        bound = lin_scale(r, Fraction(-1) / c)
        (upper if c > 0 else lower).append(bound)
    out = [normalize_atom(a) for a in rest]
    for l in lower:
        for u in upper:
            out.append(normalize_atom(Atom("<", lin_add(l, u, -1))))   # l - u < 0
    return conj(*out)


def _exists(x: str, matrix: Formula) -> Formula:
    clauses = dnf(nnf(matrix))
    return disj(*(_eliminate(c, x) for c in clauses))


def simplify(phi: Formula) -> Formula:
    """Quantifier-free formula in canonical DNF."""
    clauses = dnf(nnf(phi))
    return disj(*(conj(*sorted(c, key=_atom_key)) for c in sorted(clauses, key=_clause_key)))


def _atom_key(a: Atom):
    return (a.op, tuple((v, c) for v, c in a.form))


def _clause_key(c):
    return sorted(_atom_key(a) for a in c)


def doag_qe(phi: Formula) -> Formula:
    """Equivalent quantifier-free formula (in nontrivial divisible ordered groups)."""
    if isinstance(phi, (Const, Atom)):
        return simplify(phi)
    if isinstance(phi, Not):
        return simplify(Not(doag_qe(phi.arg)))
    if isinstance(phi, And):
        return simplify(And(tuple(doag_qe(a) for a in phi.args)))
    if isinstance(phi, Or):
        return simplify(Or(tuple(doag_qe(a) for a in phi.args)))
    if isinstance(phi, Implies):
        return simplify(Implies(doag_qe(phi.left), doag_qe(phi.right)))
    body = doag_qe(phi.body)
    if phi.kind == "exists":
        return simplify(_exists(phi.var, body))
    return simplify(Not(_exists(phi.var, Not(body))))


def eval_qf(phi: Formula, env: dict) -> bool:
    """Evaluate a quantifier-free formula at a rational assignment."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Atom):
        s = sum((Fraction(env[v]) * c for v, c in phi.form), Fraction(0))
        return s == 0 if phi.op == "=" else s < 0
    if isinstance(phi, Not):
        return not eval_qf(phi.arg, env)
    if isinstance(phi, And):
        return all(eval_qf(a, env) for a in phi.args)
    if isinstance(phi, Or):
        return any(eval_qf(a, env) for a in phi.args)
    if isinstance(phi, Implies):
        return (not eval_qf(phi.left, env)) or eval_qf(phi.right, env)
    raise ValueError("eval_qf expects a quantifier-free formula")


def eval_trivial(phi: Formula) -> bool:
    """Truth in the trivial group {0}: every variable is 0."""
    if isinstance(phi, Quant):
        return eval_trivial(phi.body)
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Atom):
        return phi.op == "="
    if isinstance(phi, Not):
        return not eval_trivial(phi.arg)
    if isinstance(phi, And):
        return all(eval_trivial(a) for a in phi.args)
    if isinstance(phi, Or):
        return any(eval_trivial(a) for a in phi.args)
    return (not eval_trivial(phi.left)) or eval_trivial(phi.right)


def doag_decide_sentence(phi: Formula, nontrivial: bool = True) -> bool:
    """Truth of a sentence in nontrivial divisible ordered groups, or in {0}."""
    fv = free_vars(phi)
    if fv:
        raise NotClosed(f"free variables: {', '.join(sorted(fv))}")
    if not nontrivial:
        return eval_trivial(phi)
    result = doag_qe(phi)
    if not isinstance(result, Const):
        raise AssertionError(f"QE of a sentence left {result}")
    return result.value


def decide_all_models(phi: Formula):
    """True/False if the sentence has that value in every DOAG (including {0}), else None."""
    a = doag_decide_sentence(phi, nontrivial=True)
    b = doag_decide_sentence(phi, nontrivial=False)
    return a if a == b else None
