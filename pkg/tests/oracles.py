"""Independent oracles used to freeze expected values.

Everything here is deliberately implemented by a different route than the
library code it checks: pentagonal-number eta expansion instead of
Eisenstein series, schoolbook convolution instead of packed big-integer
multiplication, Euler-criterion Legendre symbols instead of the binary
Kronecker algorithm, and brute-force enumeration instead of sieves.
"""

from __future__ import annotations

import math
from fractions import Fraction


def trial_division_primes(limit: int) -> list[int]:
    out = []
    for n in range(2, limit + 1):
        if all(n % p for p in out if p * p <= n):
            out.append(n)
    return out


def is_prime_naive(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def divisors_brute(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def squarefree_naive(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion, odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def factorize_naive(n: int) -> list[tuple[int, int]]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def kronecker_via_factorization(D: int, n: int) -> int:
    """(D|n) built multiplicatively from Legendre symbols at odd primes
    and the standard rule at 2."""
    out = 1
    for p, e in factorize_naive(n):
        if p == 2:
            if D % 2 == 0:
                return 0
            val = 1 if D % 8 in (1, 7) else -1
        else:
            val = legendre_euler(D, p)
        if val == 0:
            return 0
        out *= val**e
    return out


def schoolbook_mul(a: list[int], b: list[int], limit: int) -> list[int]:
    out = [0] * (limit + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > limit:
            continue
        for j, bj in enumerate(b):
            if i + j > limit:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def eta24_tau(limit: int) -> list[int]:
    """tau(n) for n = 0..limit via the 24th power of the pentagonal series.

    eta-quotient route: Delta = q * prod(1-q^n)^24; prod(1-q^n) expands by
    the pentagonal number theorem into a sparse signed series.
    """
    sparse: list[tuple[int, int]] = []
    k = 0
    while True:
        done = True
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e <= limit:
                sparse.append((e, (-1) ** (kk % 2)))
                done = False
        if k and done:
            break
        k += 1
    power = [1] + [0] * limit
    for _ in range(24):
        nxt = [0] * (limit + 1)
        for i, v in enumerate(power):
            if v == 0:
                continue
            for e, s in sparse:
                if i + e > limit:
                    continue
                nxt[i + e] += v if s > 0 else -v
        power = nxt
    tau = [0] * (limit + 1)
    for n in range(1, limit + 1):
        tau[n] = power[n - 1]
    return tau


def rep_count_brute(a: int, b: int, c: int, n: int) -> int:
    """Representation count by exhaustive search over a safe box."""
    count = 0
    lim = math.isqrt(4 * max(a, c) * n) + 2
    for x in range(-lim, lim + 1):
        for y in range(-lim, lim + 1):
            if a * x * x + b * x * y + c * y * y == n:
                count += 1
    return count


def reduce_brute(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Gauss reduction by explicit unit translations (x -> x +- 1)."""
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a:
            c = a - b + c
            b = b - 2 * a
            continue
        if b <= -a:
            c = a + b + c
            b = b + 2 * a
            continue
        if b < 0 and (a == c or -b == a):
            b = -b
        return a, b, c


def fold_constants_brute(ell: int) -> tuple[Fraction, Fraction]:
    A = Fraction(0)
    B = Fraction(0)
    for n in range(ell // 2 + 1):
        cb = math.comb(ell, n)
        A += Fraction((ell - 2 * n + 1) * (ell - 2 * n), ell - n + 1) * cb
        B += Fraction((ell - 2 * n + 1) ** 2, ell - n + 1) * cb
    return A, B


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def chebyshev_U(m: int) -> list[int]:
    """Second-kind Chebyshev polynomial coefficients (ascending)."""
    if m == 0:
        return [1]
    prev, cur = [1], [0, 2]
    for _ in range(m - 1):
        nxt = [0] + [2 * v for v in cur]
        for i, v in enumerate(prev):
            nxt[i] -= v
        prev, cur = cur, nxt
    return cur


def hecke_prime_power(ap: int, p: int, k: int, m: int) -> int:
    """a(p^m) by direct recursion, independent of the library helper."""
    vals = [1, ap]
    for _ in range(m - 1):
        vals.append(ap * vals[-1] - p ** (k - 1) * vals[-2])
    return vals[m]


def sigma_integral_equation(beta_fn, beta0: float, x1: float, U: float, h: float):
    """Solve u*sigma(u) = integral_0^u sigma(t) beta(u-t) dt directly.

    Marches the integral equation itself on a uniform grid (trapezoid in
    t, implicit in the last cell), a scheme independent of the
    transformed-variable delay march in the library.
    """
    n = int(round(U / h))
    sig = [0.0] * (n + 1)
    for i in range(n + 1):
        u = i * h
        if 0 < u <= x1:
            sig[i] = u ** (beta0 - 1.0)
    i0 = int(math.floor(x1 / h))
    for i in range(i0 + 1, n + 1):
        u = i * h
        acc = 0.0
        # trapezoid over t = 0..u with weights beta(u - t)
        for j in range(0, i + 1):
            t = j * h
            w = 0.5 if j in (0, i) else 1.0
            if j == i:
                continue  # handled implicitly below
            s = u - t
            acc += w * sig[j] * beta_fn(s) * h
        denom = u - 0.5 * h * beta0
        sig[i] = acc / denom
    return sig
