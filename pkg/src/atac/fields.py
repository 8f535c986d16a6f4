"""Finite fields GF(p^k) with table-driven arithmetic.

Elements are the integers ``0 .. q-1``; the base-``p`` digits of an element
are the coefficients of its polynomial representative (lowest degree first).
The modulus is the lexicographically smallest monic irreducible polynomial of
degree ``k``, so element labels are reproducible.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .errors import ConstructionError, NotPrimePower


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int):
    """``(p, k)`` with ``q == p**k`` for prime ``p``, or ``None``."""
    if q < 2:
        return None
    p = next(f for f in itertools.count(2) if q % f == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``k`` over GF(p), coefficients lowest first."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        # lexicographic order on (c_{k-1}, ..., c_0)
        poly = list(reversed(low)) + [1]
        if poly[0] != 0 and _is_irreducible(poly, p):
            return tuple(poly)
    raise ConstructionError(f"no irreducible polynomial of degree {k} over GF({p})")


class FiniteField:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise NotPrimePower(q)
        self.q = q
        self.p, self.k = pk
        self.modulus = irreducible_modulus(self.p, self.k)
        p, k = self.p, self.k
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._from_digits([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
        self._mul = [[self._poly_mul(da, db) for db in digits] for da in digits]
        self._neg = [self._from_digits([(-x) % p for x in da]) for da in digits]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)
        self._check_axioms()
        assert len(digits[0]) == k

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, ds) -> int:
        a = 0
        for d in reversed(list(ds)):
            a = a * self.p + d
        return a

    def _poly_mul(self, da, db) -> int:
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        red = _poly_mod(prod, list(self.modulus), self.p)
        return self._from_digits(red + [0] * (self.k - len(red)))

    def _check_axioms(self) -> None:
        q = self.q
        # every nonzero element invertible; checked exhaustively for small fields
        if q <= 81:
            for a in range(1, q):
                if self._mul[a][self._inv[a]] != 1:
                    raise ConstructionError(f"GF({q}): element {a} has no inverse")
        rng = random.Random(q)
        for _ in range(200):
            a, b, c = (rng.randrange(q) for _ in range(3))
            if self.mul(a, self.mul(b, c)) != self.mul(self.mul(a, b), c):
                raise ConstructionError(f"GF({q}): multiplication not associative")
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                raise ConstructionError(f"GF({q}): distributivity fails")

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    return FiniteField(q)
