"""Seeded random generators for groups, fields, elements, polynomials and formulas."""

from __future__ import annotations

import random
from fractions import Fraction

from .doag.formula import FALSE, TRUE, And, Atom as FAtom, Not, Or, Quant, lin
from .finfield import QQ, RationalField, fq_make, prime_field
from .gauss import GaussAssignment, MPoly
from .ogroup import Atom, GroupElem, OrderedGroup
from .upoly import UPoly
from .valfield import HahnField, RatFuncField

SMALL_PRIMES = (2, 3, 5, 7)


def random_residue(k, rng: random.Random, nonzero: bool = False):
    if isinstance(k, RationalField):
        while True:
            c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            if c or not nonzero:
                return c
    while True:
        c = k.from_vector([rng.randrange(k.p) for _ in range(k.n)])
        if c or not nonzero:
            return c


def random_group(rng: random.Random, max_rank: int = 2) -> OrderedGroup:
    atoms = []
    for _ in range(rng.randint(1, max_rank)):
        kind = rng.choice(["Z", "Q", "Zloc"])
        if kind == "Zloc":
            atoms.append(Atom.Zinv(*rng.sample(SMALL_PRIMES, rng.randint(1, 2))))
        else:
            atoms.append(Atom(kind))
    return OrderedGroup(tuple(atoms))


def random_residue_field(rng: random.Random, allow_q: bool = True):
    if allow_q and rng.random() < 0.2:
        return QQ
    p = rng.choice(SMALL_PRIMES)
    n = rng.choice([1, 1, 1, 2]) if p < 5 else 1
    return fq_make(p, n) if n > 1 else prime_field(p)


def random_hahn_field(rng: random.Random, max_rank: int = 2) -> HahnField:
    return HahnField(random_residue_field(rng), random_group(rng, max_rank))


def random_ratfunc_field(rng: random.Random) -> RatFuncField:
    k = random_residue_field(rng)
    if isinstance(k, RationalField):
        return RatFuncField(k)
    choice = rng.randrange(3)
    if choice == 0:
        return RatFuncField(k)
    if choice == 1:
        return RatFuncField(k, level=rng.randint(1, 3))
    return RatFuncField(k, level=rng.randint(0, 4), perfect=True)


def random_field(rng: random.Random, backend: str | None = None):
    backend = backend or rng.choice(["HAHN", "RATFUNC"])
    return random_hahn_field(rng) if backend == "HAHN" else random_ratfunc_field(rng)


def _random_exponent(K, rng: random.Random, size: int = 4) -> GroupElem:
    if K.backend == "HAHN":
        return K.group.random_element(rng, size=size)
    if K.perfect:
        den = K.p ** rng.randint(0, 3)
    else:
        den = K.p ** rng.randint(0, K.level) if K.level else 1
    return GroupElem((Fraction(rng.randint(-size, size), den),))


def random_element(K, rng: random.Random, terms: int = 3, zero_rate: float = 0.05):
    """A random exact element of K (Hahn series or rational function)."""
    k = K.residue_field
    if rng.random() < zero_rate:
        return K.zero()
    if K.backend == "HAHN":
        pairs = [(_random_exponent(K, rng), random_residue(k, rng, nonzero=True))
                 for _ in range(rng.randint(1, terms))]
        return K.series(pairs)

    def laurent():
        d = {}
        for _ in range(rng.randint(1, terms)):
            e = _random_exponent(K, rng).coords[0]
            d[e] = random_residue(k, rng, nonzero=True)
        return d

    num = laurent()
    den = laurent() if rng.random() < 0.5 else None
    x = K.element(num, den) if den is None or any(den.values()) else K.element(num)
    return x


def random_unit_or_integral(K, rng: random.Random):
    """Element of value >= 0 (zero allowed)."""
    x = random_element(K, rng)
    if x.is_zero():
        return x
    v = K.value(x)
    return x * K.t_power(-v) if v.sign() < 0 else x


def random_upoly(K, rng: random.Random, degree: int, monic: bool = True) -> UPoly:
    coeffs = [random_element(K, rng, terms=2, zero_rate=0.3) for _ in range(degree)]
    coeffs.append(K.one() if monic else random_element(K, rng, zero_rate=0.0))
    return UPoly(K, coeffs)


def random_gauss_case(rng: random.Random):
    """(assignment, polynomial) with Hahn base, 1-2 x variables and 0-2 y variables."""
    k = random_residue_field(rng)
    base_rank = rng.randint(1, 2)
    g = OrderedGroup(tuple(Atom.Q() if rng.random() < 0.5 else Atom.Z() for _ in range(base_rank)))
    K = HahnField(k, g)
    nx = rng.randint(0, 2)
    ny = rng.randint(0, 2)
    pad = nx
    # each x value has a nonzero coordinate in its own padding slot, so independence holds
    xs = []
    for i in range(nx):
        coords = [Fraction(0)] * (pad + base_rank)
        coords[i] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        for j in range(i + 1, pad + base_rank):
            if rng.random() < 0.5:
                coords[j] = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        xs.append(GroupElem(tuple(coords)))
    A = GaussAssignment(K, tuple(xs), ny)
    terms = {}
    for _ in range(rng.randint(1, 5)):
        mu = tuple(rng.randint(0, 3) for _ in range(nx))
        nu = tuple(rng.randint(0, 3) for _ in range(ny))
        c = K.series([(g.elem(*(Fraction(rng.randint(-3, 3), 1) for _ in range(base_rank))),
                       random_residue(k, rng, nonzero=True)) for _ in range(rng.randint(1, 2))])
        terms[(mu, nu)] = c
    return A, MPoly(K, nx, ny, terms)


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

def random_atom(rng: random.Random, names) -> FAtom:
    used = rng.sample(list(names), rng.randint(1, min(2, len(names))))
    form = lin({v: rng.choice([-2, -1, 1, 2, 3]) for v in used})
    return FAtom(rng.choice(["=", "<", "<"]), form)


def random_qf(rng: random.Random, names, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return random_atom(rng, names)
    r = rng.random()
    if r < 0.2:
        return Not(random_qf(rng, names, depth - 1))
    args = tuple(random_qf(rng, names, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(args) if r < 0.6 else Or(args)


def random_formula(rng: random.Random, free=("a", "b"), bound=("x", "y"), depth: int = 2):
    """A formula whose quantifier prefix binds some of ``bound`` over a random matrix."""
    names = list(free) + list(bound)
    body = random_qf(rng, names, depth)
    for v in reversed(bound):
        if rng.random() < 0.85:
            body = Quant(rng.choice(["exists", "forall"]), v, body)
        else:
            # leave v free too: quantify it existentially to keep the free set fixed
            body = Quant("exists", v, body)
    return body


def random_sentence(rng: random.Random, depth: int = 2):
    return random_formula(rng, free=(), bound=("x", "y", "z"), depth=depth)


def random_assignment(rng: random.Random, names) -> dict:
    return {v: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for v in names}


__all__ = [
    "random_residue", "random_group", "random_residue_field", "random_hahn_field",
    "random_ratfunc_field", "random_field", "random_element", "random_unit_or_integral",
    "random_upoly", "random_gauss_case", "random_atom", "random_qf", "random_formula",
    "random_sentence", "random_assignment", "TRUE", "FALSE",
]
