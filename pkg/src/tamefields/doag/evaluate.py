"""Direct evaluation of formulas in (Q, <, +) by finite test points.

For ``exists x psi`` with k further bound variables inside psi, the truth of
psi as a function of x can only change at x-coordinates of flats cut out by
at most k+1 of psi's hyperplanes (outer variables fixed).  Testing those
coordinates, the midpoints between them and one point beyond each end
decides the quantifier.  This is independent of the elimination code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .formula import And, Atom, Const, Formula, Implies, Not, Or, Quant


def _atoms(phi: Formula, out: list):
    if isinstance(phi, Atom):
        out.append(phi)
    elif isinstance(phi, Not):
        _atoms(phi.arg, out)
    elif isinstance(phi, (And, Or)):
        for a in phi.args:
            _atoms(a, out)
    elif isinstance(phi, Implies):
        _atoms(phi.left, out)
        _atoms(phi.right, out)
    elif isinstance(phi, Quant):
        _atoms(phi.body, out)
    return out


def _bound(phi: Formula, out: set):
    if isinstance(phi, Quant):
        out.add(phi.var)
        _bound(phi.body, out)
    elif isinstance(phi, Not):
        _bound(phi.arg, out)
    elif isinstance(phi, (And, Or)):
        for a in phi.args:
            _bound(a, out)
    elif isinstance(phi, Implies):
        _bound(phi.left, out)
        _bound(phi.right, out)
    return out


def _solve_symbolic(rows, nvars):
    """Row-reduce rows (space coeffs..., outer coeffs...) and express var 0 if it is fixed.

    Returns (x_form, conditions): x = x_form . env_outer, provided every
    condition form vanishes at env_outer; None when x is not determined.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if not pivots or pivots[0] != 0:
        return None
    if any(m[0][c] != 0 for c in range(1, nvars)):
        return None
    conditions = tuple(tuple(row[nvars:]) for row in m[r:] if any(row[nvars:]))
    return tuple(m[0][nvars:]), conditions


_CACHE: dict = {}


def _symbolic_candidates(x: str, body: Formula):
    key = (x, id(body))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is body:
        return hit[1], hit[2]
    inner = sorted(_bound(body, set()) - {x})
    space = [x] + inner
    atoms = _atoms(body, [])
    outer = sorted({v for a in atoms for v, _ in a.form} - set(space))
    hyper = set()
    for a in atoms:
        coeffs = [Fraction(0)] * len(space)
        rhs = [Fraction(0)] * len(outer)
        for v, c in a.form:
            if v in space:
                coeffs[space.index(v)] += c
            else:
                rhs[outer.index(v)] -= c
        if any(coeffs):
            hyper.add(tuple(coeffs) + tuple(rhs))
    hyper = sorted(hyper)
    forms = set()
    for size in range(1, min(len(inner) + 1, len(hyper)) + 1):
        for subset in combinations(hyper, size):
            if all(h[0] == 0 for h in subset):
                continue
            sol = _solve_symbolic(subset, len(space))
            if sol is not None:
                forms.add(sol)
    if len(_CACHE) > 4096:
        _CACHE.clear()
    _CACHE[key] = (body, outer, tuple(forms))
    return outer, tuple(forms)


def _dot(form, vals):
    return sum((c * v for c, v in zip(form, vals) if c), Fraction(0))


def candidate_points(x: str, body: Formula, env: dict) -> list:
    outer, forms = _symbolic_candidates(x, body)
    vals = [Fraction(env[v]) for v in outer]
    cands = set()
    for xf, conds in forms:
        if all(_dot(c, vals) == 0 for c in conds):
            cands.add(_dot(xf, vals))
    pts = sorted(cands)
    if not pts:
        return [Fraction(0)]
    out = [pts[0] - 1] + pts + [pts[-1] + 1]
    out += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return out


def eval_in_q(phi: Formula, env: dict | None = None) -> bool:
    """Truth of phi in (Q, <, +) under the assignment env."""
    env = dict(env or {})
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Atom):
        s = sum((Fraction(env[v]) * c for v, c in phi.form), Fraction(0))
        return s == 0 if phi.op == "=" else s < 0
    if isinstance(phi, Not):
        return not eval_in_q(phi.arg, env)
    if isinstance(phi, And):
        return all(eval_in_q(a, env) for a in phi.args)
    if isinstance(phi, Or):
        return any(eval_in_q(a, env) for a in phi.args)
    if isinstance(phi, Implies):
        return (not eval_in_q(phi.left, env)) or eval_in_q(phi.right, env)
    pts = candidate_points(phi.var, phi.body, env)
    results = (eval_in_q(phi.body, {**env, phi.var: x}) for x in pts)
    return any(results) if phi.kind == "exists" else all(results)
