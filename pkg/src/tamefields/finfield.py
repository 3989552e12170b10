"""Residue fields: finite fields F_q and the rationals.

Elements of ``F_q`` (q = p^n) are encoded as integers ``0 <= a < q`` whose
base-p digits are the coefficients of ``a`` in the power basis of a fixed
generator ``g`` (a root of the field's modulus).  Elements of ``Q`` are
:class:`fractions.Fraction`.  Polynomials over either field are lists of
coefficients, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import NotPrime, UnsupportedField, WrongRing
from .ogroup import is_prime

FACTOR_SEED = 0x5EED


class FiniteField:
    kind = "FINITE"

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if n < 1:
            raise ValueError("degree must be positive")
        self.p = p
        self.n = n
        self.q = p**n
        if modulus is None:
            modulus = _lex_smallest_irreducible(p, n)
        modulus = [c % p for c in modulus]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if n > 1 and not is_irreducible(prime_field(p), modulus):
            raise ValueError("modulus is not irreducible")
        self.modulus = tuple(modulus)
        self._exp = self._log = None
        if n > 1:
            self._build_tables()

    # -- structure ---------------------------------------------------------
    @property
    def char(self) -> int:
        return self.p

    @property
    def char_exponent(self) -> int:
        return self.p

    def is_finite(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def gen(self) -> int:
        # the class of X modulo the modulus
        if self.n == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def from_int(self, k: int) -> int:
        return k % self.p

    def is_element(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.q

    def vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vector(self, v: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(v) + [0] * (self.n - len(v))):
            a = a * self.p + (c % self.p)
        return a

    # -- arithmetic ---------------------------------------------------------
    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self.from_vector([x + y for x, y in zip(self.vector(a), self.vector(b))])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self.from_vector([-x for x in self.vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.p ** (self.n - 1))

    def _slow_mul(self, a: int, b: int) -> int:
        fp = prime_field(self.p)
        prod = poly_mod(fp, poly_mul(fp, _trim(self.vector(a)), _trim(self.vector(b))),
                        list(self.modulus))
        return self.from_vector(prod)

    def _build_tables(self):
        order = self.q - 1
        for cand in range(2, self.q):
            exp = [1] * order
            x = 1
            seen_one = False
            for i in range(1, order):
                x = self._slow_mul(x, cand)
                if x == 1:
                    seen_one = True
                    break
                exp[i] = x
            if not seen_one:
                self._exp = exp
                self._log = {v: i for i, v in enumerate(exp)}
                return
        raise RuntimeError("no primitive element found")

    # -- printing -----------------------------------------------------------
    def format(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.vector(a)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        if not terms:
            return "0"
        return terms[0] if len(terms) == 1 else "(" + " + ".join(terms) + ")"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __str__(self):
        return f"F({self.q})"

    __repr__ = __str__


class RationalField:
    """The field Q, used as residue field in residue characteristic 0."""

    kind = "RATIONALS"
    p = 1
    n = 1
    char = 0
    char_exponent = 1
    zero = Fraction(0)
    one = Fraction(1)

    def is_finite(self) -> bool:
        return False

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def is_element(self, a) -> bool:
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return Fraction(a) + b

    def neg(self, a):
        return -Fraction(a)

    def sub(self, a, b):
        return Fraction(a) - b

    def mul(self, a, b):
        return Fraction(a) * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        return Fraction(a) ** e

    def pth_root(self, a):
        raise UnsupportedField("p-th roots are not defined over Q (characteristic 0)")

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a) if a.denominator == 1 or a >= 0 else f"({a})"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"

    __repr__ = __str__


QQ = RationalField()
ResidueFieldDesc = FiniteField | RationalField


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(p, 1, [0, 1])


@lru_cache(maxsize=None)
def fq_make(p: int, n: int = 1) -> FiniteField:
    """F_{p^n} with the lexicographically smallest monic irreducible modulus."""
    return FiniteField(p, n)


def field_of_order(q: int) -> FiniteField:
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1 or not is_prime(p):
                raise NotPrime(f"{q} is not a prime power")
            return fq_make(p, n)
    raise NotPrime(f"{q} is not a prime power")


def _lex_smallest_irreducible(p: int, n: int) -> list[int]:
    fp = prime_field(p) if n > 1 else None
    for k in range(p**n):
        low = []
        x = k
        for _ in range(n):
            x, r = divmod(x, p)
            low.append(r)
        f = low + [1]
        if n == 1 or is_irreducible(fp, f):
            return f
    raise RuntimeError("unreachable: irreducible polynomials exist in every degree")


# -- polynomial arithmetic over a field object --------------------------------

def _trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_trim(k, f) -> list:
    f = list(f)
    while f and k.is_zero(f[-1]):
        f.pop()
    return f


def poly_deg(f) -> int:
    return len(f) - 1


def poly_add(k, f, g) -> list:
    n = max(len(f), len(g))
    out = [k.add(f[i] if i < len(f) else k.zero, g[i] if i < len(g) else k.zero)
           for i in range(n)]
    return poly_trim(k, out)


def poly_neg(k, f) -> list:
    return [k.neg(c) for c in f]


def poly_sub(k, f, g) -> list:
    return poly_add(k, f, poly_neg(k, g))


def poly_scale(k, f, c) -> list:
    return poly_trim(k, [k.mul(c, a) for a in f])


def poly_mul(k, f, g) -> list:
    if not f or not g:
        return []
    out = [k.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if k.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = k.add(out[i + j], k.mul(a, b))
    return poly_trim(k, out)


def poly_divmod(k, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = k.inv(g[-1])
    q = [k.zero] * max(len(f) - len(g) + 1, 0)
    if isinstance(k, FiniteField) and k.n == 1:
        return _divmod_prime(k.p, f, g, q, inv_lead)
    while len(f) >= len(g) and f:
        c = k.mul(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = k.sub(f[shift + i], k.mul(c, b))
        f = poly_trim(k, f)
    return poly_trim(k, q), f


def _divmod_prime(p: int, f: list, g: list, q: list, inv_lead: int):
    dg = len(g) - 1
    while len(f) > dg and f:
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        q[shift] = c
        if c:
            for i, b in enumerate(g):
                if b:
                    f[shift + i] = (f[shift + i] - c * b) % p
        _trim(f)
    return _trim(q), f


def poly_mod(k, f, g) -> list:
    return poly_divmod(k, f, g)[1]


def poly_monic(k, f) -> list:
    if not f:
        return []
    return poly_scale(k, f, k.inv(f[-1]))


def poly_gcd(k, f, g) -> list:
    f, g = poly_trim(k, f), poly_trim(k, g)
    while g:
        f, g = g, poly_mod(k, f, g)
    return poly_monic(k, f)


def poly_deriv(k, f) -> list:
    return poly_trim(k, [k.mul(k.from_int(i), c) for i, c in enumerate(f)][1:])


def poly_powmod(k, f, e: int, m) -> list:
    result = [k.one]
    base = poly_mod(k, f, m)
    while e:
        if e & 1:
            result = poly_mod(k, poly_mul(k, result, base), m)
        base = poly_mod(k, poly_mul(k, base, base), m)
        e >>= 1
    return result


def poly_eval(k, f, x):
    acc = k.zero
    for c in reversed(f):
        acc = k.add(k.mul(acc, x), c)
    return acc


def poly_is_one(f) -> bool:
    return len(f) == 1 and f[0] == 1


def is_irreducible(k: FiniteField, f) -> bool:
    """Rabin-style test: no common factor with X^{q^i} - X for i <= deg/2."""
    f = poly_monic(k, poly_trim(k, f))
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [k.zero, k.one]
    h = x
    for _ in range(n // 2):
        h = poly_powmod(k, h, k.q, f)
        if not poly_is_one(poly_gcd(k, poly_sub(k, h, x), f)):
            return False
    return True


def _check_poly(k, f):
    if isinstance(k, RationalField):
        raise UnsupportedField("factorization over Q is not supported")
    for c in f:
        if not k.is_element(c):
            raise WrongRing(f"coefficient {c!r} is not an element of {k}")


def _poly_pth_root(k: FiniteField, f) -> list:
    out = []
    for i in range(0, len(f), k.p):
        out.append(k.pth_root(f[i]))
    return poly_trim(k, out)


def squarefree_decomposition(k: FiniteField, f) -> list:
    """Pairs (g, e) with g squarefree, pairwise coprime, f = lc * prod g^e."""
    f = poly_monic(k, f)
    if poly_deg(f) <= 0:
        return []
    out = []
    c = poly_gcd(k, f, poly_deriv(k, f))
    w = poly_divmod(k, f, c)[0]
    i = 1
    while poly_deg(w) > 0:
        y = poly_gcd(k, w, c)
        z = poly_divmod(k, w, y)[0]
        if poly_deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = poly_divmod(k, c, y)[0]
    if poly_deg(c) > 0:
        root = _poly_pth_root(k, c)
        out.extend((g, e * k.p) for g, e in squarefree_decomposition(k, root))
    return out


def distinct_degree(k: FiniteField, f) -> list:
    out = []
    x = [k.zero, k.one]
    h = x
    i = 1
    while poly_deg(f) >= 2 * i:
        h = poly_powmod(k, h, k.q, f)
        g = poly_gcd(k, poly_sub(k, h, x), f)
        if not poly_is_one(g):
            out.append((g, i))
            f = poly_divmod(k, f, g)[0]
            h = poly_mod(k, h, f)
        i += 1
    if poly_deg(f) > 0:
        out.append((f, poly_deg(f)))
    return out


def equal_degree(k: FiniteField, f, d: int, rng: random.Random) -> list:
    if poly_deg(f) == d:
        return [f]
    n = poly_deg(f)
    while True:
        a = poly_trim(k, [rng.randrange(k.q) for _ in range(n)])
        if poly_deg(a) < 1:
            continue
        if k.p == 2:
            t = a
            acc = a
            for _ in range(k.n * d - 1):
                t = poly_mod(k, poly_mul(k, t, t), f)
                acc = poly_add(k, acc, t)
            b = acc
        else:
            b = poly_sub(k, poly_powmod(k, a, (k.q**d - 1) // 2, f), [k.one])
        g = poly_gcd(k, b, f)
        if 0 < poly_deg(g) < n:
            h = poly_divmod(k, f, g)[0]
            return equal_degree(k, g, d, rng) + equal_degree(k, h, d, rng)


def _sort_key(item):
    g, e = item
    return (len(g), list(reversed(g)), e)


def fq_poly_factor(k, f, seed: int = FACTOR_SEED) -> list:
    """Monic irreducible factors with multiplicities (leading unit dropped)."""
    _check_poly(k, f)
    f = poly_trim(k, f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(k, f):
        for h, d in distinct_degree(k, g):
            for factor in equal_degree(k, h, d, rng):
                out.append((factor, e))
    return sorted(out, key=_sort_key)


def fq_is_separable(k, f) -> bool:
    f = poly_trim(k, f)
    if poly_deg(f) < 1:
        raise ValueError("separability needs a nonconstant polynomial")
    return poly_deg(poly_gcd(k, f, poly_deriv(k, f))) == 0


def fq_pth_root(k, a):
    if isinstance(k, RationalField):
        raise UnsupportedField("Q has characteristic 0")
    return k.pth_root(a)


def format_poly(k, f, var: str = "X") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if k.is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = k.format(c)
        if not mono:
            terms.append(cs)
        elif c == k.one:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"
