"""Shared number-theoretic primitives: primes, factorization, divisor
functions, squarefree sieve, and the Kronecker symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError

__all__ = [
    "FactoredInteger",
    "DirichletCharacterD",
    "sieve_primes",
    "factorize",
    "omega",
    "squarefree_sieve",
    "divisors",
    "divisor_count",
    "kronecker",
    "is_fundamental_discriminant",
]


@dataclass(frozen=True)
class FactoredInteger:
    """Canonical factorization: n = prod p^e with primes ascending."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise InputError(f"malformed factorization for {self.n}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise InputError(f"factorization does not multiply back to {self.n}")

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass(frozen=True)
class DirichletCharacterD:
    """Real character n -> (D|n) attached to a negative discriminant D."""

    D: int

    def __post_init__(self):
        if self.D >= 0 or self.D % 4 not in (0, 1):
            raise InputError(f"not a negative discriminant: {self.D}")

    def __call__(self, n: int) -> int:
        return kronecker(self.D, n)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending; empty for limit < 2."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].tolist()


_prime_cache: list[int] = []
_prime_cache_limit = 1


def _primes_through(limit: int) -> list[int]:
    global _prime_cache, _prime_cache_limit
    if limit > _prime_cache_limit:
        _prime_cache_limit = max(limit, 2 * _prime_cache_limit, 1 << 10)
        _prime_cache = sieve_primes(_prime_cache_limit)
    return _prime_cache


def factorize(n: int) -> FactoredInteger:
    """Trial division assisted by a cached prime list; n = 1 gives ()."""
    if n < 1:
        raise InputError(f"factorize requires n >= 1, got {n}")
    m = n
    out: list[tuple[int, int]] = []
    for p in _primes_through(math.isqrt(n) + 1):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return FactoredInteger(n, tuple(out))


def omega(n: int) -> int:
    """Number of distinct prime divisors; omega(1) = 0."""
    return factorize(n).omega


def squarefree_sieve(limit: int) -> np.ndarray:
    """Boolean table indexed 0..limit; entry n is True iff n squarefree."""
    if limit < 1:
        raise InputError("squarefree_sieve requires limit >= 1")
    return _kernels.squarefree_table(limit).astype(bool)


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending, enumerated from the factorization."""
    fi = factorize(n)
    out = [1]
    for p, e in fi.factors:
        pk = 1
        grown = []
        for _ in range(e):
            pk *= p
            grown.extend(d * pk for d in out)
        out.extend(grown)
    return sorted(out)


def divisor_count(n: int) -> int:
    d = 1
    for _, e in factorize(n).factors:
        d *= e + 1
    return d


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D|n) for n >= 1, completely multiplicative in n.

    Standard extension at 2: (D|2) = 0 for even D, +1 for D = +-1 mod 8,
    -1 for D = +-3 mod 8.
    """
    if n == 0:
        raise InputError("kronecker symbol needs n >= 1")
    if n < 0:
        raise InputError("kronecker symbol implemented for positive n only")
    a = D
    result = 1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        tz = (n & -n).bit_length() - 1
        n >>= tz
        if tz % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D >= 0 or D % 4 not in (0, 1):
        return False
    if D % 4 == 1:
        return factorize(-D).is_squarefree
    m = D // 4
    return m % 4 in (2, 3) and factorize(-m).is_squarefree
