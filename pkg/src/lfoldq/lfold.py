"""Combinatorial core of the fold-power coefficients: Chebyshev
decomposition of x^ell, the fold constants (A, B), fold and
symmetric-power coefficient evaluation, and exact verification of the
prime-level decomposition identities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InputError, InternalConsistencyError
from .modforms import Eigenform, coefficient_prime_power, normalized_lambda
from .ntkernel import factorize, kronecker
from .quadforms import r_star

__all__ = [
    "ChebyshevDecomposition",
    "FoldConstants",
    "SignedValue",
    "DecompositionCheck",
    "chebyshev_T",
    "cheb_decomposition",
    "fold_constants",
    "lfold_coefficient",
    "sym_coefficient",
    "verify_fcrel",
    "verify_decomposition_prime",
    "binomial_identity_check",
    "binomial_difference",
]


@dataclass(frozen=True)
class ChebyshevDecomposition:
    """x^ell = sum_j coeffs[j] * T_(ell-j)(x), coeffs[j] integer."""

    ell: int
    coeffs: tuple[int, ...]  # index j = 0..ell


@dataclass(frozen=True)
class FoldConstants:
    ell: int
    A: int
    B: int

    def __post_init__(self):
        if not self.B > self.A >= 1:
            raise InternalConsistencyError(
                f"fold constants out of order: A={self.A}, B={self.B}"
            )


@dataclass(frozen=True)
class SignedValue:
    """Float value paired with the sign taken from exact integers."""

    value: float
    exact_sign: int


@dataclass(frozen=True)
class DecompositionCheck:
    p: int
    ell: int
    D: int
    exact_ok: bool
    float_gap: float
    passed: bool


def chebyshev_T(m: int) -> list[int]:
    """Coefficients of T_m, where T_m(2x) equals the second-kind U_m(x).

    Substituting y = 2x into the U recurrence gives T_0 = 1, T_1 = y,
    T_(m+1) = y*T_m - T_(m-1), all integer.
    """
    if m < 0:
        raise InputError("m must be >= 0")
    prev = [1]
    if m == 0:
        return prev
    cur = [0, 1]
    for _ in range(m - 1):
        nxt = [0] + cur
        for i, v in enumerate(prev):
            nxt[i] -= v
        prev, cur = cur, nxt
    return cur


def binomial_difference(ell: int, n: int) -> int:
    """C(ell, n) - C(ell, n-1), with C(ell, -1) taken as 0."""
    low = math.comb(ell, n - 1) if n >= 1 else 0
    return math.comb(ell, n) - low


def cheb_decomposition(ell: int) -> ChebyshevDecomposition:
    """Exact table A[j] with x^ell = sum_j A[j] T_(ell-j)(x).

    A[j] = C(ell,(ell-j)/2) - C(ell,(ell-j)/2 - 1) for j = ell mod 2,
    else 0.  The identity is re-verified exactly before returning.
    """
    if ell < 1:
        raise InputError("ell must be >= 1")
    coeffs = []
    for j in range(ell + 1):
        if (ell - j) % 2 == 0:
            coeffs.append(binomial_difference(ell, (ell - j) // 2))
        else:
            coeffs.append(0)
    total = [0] * (ell + 1)
    for j, aj in enumerate(coeffs):
        if aj == 0:
            continue
        for i, v in enumerate(chebyshev_T(ell - j)):
            total[i] += aj * v
    expected = [0] * (ell + 1)
    expected[ell] = 1
    if total != expected:
        raise InternalConsistencyError(f"Chebyshev identity failed for ell={ell}")
    return ChebyshevDecomposition(ell=ell, coeffs=tuple(coeffs))


def fold_constants(ell: int) -> FoldConstants:
    """The two fold constants, by exact rational summation.

    A = sum (ell-2n+1)(ell-2n)/(ell-n+1) * C(ell,n),
    B = sum (ell-2n+1)^2 /(ell-n+1) * C(ell,n), n = 0..floor(ell/2).
    Both sums are integers for every ell >= 1 (B telescopes to 2^ell).
    """
    if ell < 1:
        raise InputError("ell must be >= 1")
    A = Fraction(0)
    B = Fraction(0)
    for n in range(ell // 2 + 1):
        binom = math.comb(ell, n)
        A += Fraction((ell - 2 * n + 1) * (ell - 2 * n), ell - n + 1) * binom
        B += Fraction((ell - 2 * n + 1) ** 2, ell - n + 1) * binom
    if A.denominator != 1 or B.denominator != 1:
        raise InternalConsistencyError(f"fold constants not integral for ell={ell}")
    return FoldConstants(ell=ell, A=int(A), B=int(B))


def lfold_coefficient(form: Eigenform, ell: int, n: int) -> SignedValue:
    """lambda(n)^ell for squarefree n coprime to the level, odd ell.

    The float value is the ell-th power of the normalized eigenvalue; the
    sign is read off the exact integer a(n) (sign(x^ell) = sign(x) for
    odd ell).
    """
    if ell < 1 or ell % 2 == 0:
        raise InputError("ell must be odd and >= 1")
    if n < 1:
        raise InputError("n must be >= 1")
    if math.gcd(n, form.level) != 1:
        raise InputError(f"n={n} shares a factor with the level {form.level}")
    if not factorize(n).is_squarefree:
        raise InputError(f"n={n} is not squarefree")
    lam = normalized_lambda(form, n)
    return SignedValue(value=lam.value**ell, exact_sign=lam.exact_sign)


def sym_coefficient(form: Eigenform, m: int, n: int) -> float:
    """Symmetric-power coefficient: sum over d with d^m | n of
    lambda((n/d^m)^m); at primes this is lambda(p^m).

    m = 1 is the plain eigenvalue lambda(n) by the usual convention (no
    zeta factor in that case).
    """
    if m < 1 or n < 1:
        raise InputError("m and n must be >= 1")
    if math.gcd(n, form.level) != 1:
        raise InputError(f"n={n} shares a factor with the level {form.level}")
    if m == 1:
        return _lambda_of(form, n, 1)
    total = 0.0
    d = 1
    while d**m <= n:
        if n % (d**m) == 0:
            j = n // d**m
            total += _lambda_of(form, j, m)
        d += 1
    return total


def _lambda_of(form: Eigenform, j: int, m: int) -> float:
    """lambda(j^m) from exact a at prime powers."""
    a = 1
    for p, e in factorize(j).factors:
        a *= coefficient_prime_power(form, p, e * m)
    jm = j**m
    with gmpy2.context(precision=96):
        return float(gmpy2.mpfr(a) / gmpy2.mpfr(jm) ** (gmpy2.mpfr(form.weight - 1) / 2))


def verify_fcrel(form: Eigenform, ell: int, p: int) -> bool:
    """Exact prime-level fold identity, with the denominator cleared:

    a(p)^ell == sum_n (C(ell,n) - C(ell,n-1)) * a(p^(ell-2n)) * p^(n(k-1)).
    """
    if ell < 1:
        raise InputError("ell must be >= 1")
    lhs = coefficient_prime_power(form, p, 1) ** ell
    k = form.weight
    rhs = 0
    for n in range(ell // 2 + 1):
        rhs += (
            binomial_difference(ell, n)
            * coefficient_prime_power(form, p, ell - 2 * n)
            * p ** (n * (k - 1))
        )
    return lhs == rhs


def verify_decomposition_prime(
    form: Eigenform, D: int, ell: int, p: int
) -> DecompositionCheck:
    """Prime-level decomposition identity behind the Dirichlet-series split:

    lambda(p)^ell * rstar(p) == [sum_n (C-C) lambda_sym^(ell-2n)(p)] * (1 + chi_D(p)),

    checked both in binary64 (tolerance 1e-9) and exactly after lifting by
    p^(ell(k-1)/2) (the lifted identity is the verify_fcrel relation times
    the integer 1 + chi_D(p))."""
    chi = kronecker(D, p)
    rs = r_star(D, p)
    if rs != 1 + chi:
        raise InternalConsistencyError(f"r_star({p}) != 1 + chi({p})")
    lam = normalized_lambda(form, p).value
    lhs = lam**ell * rs
    rhs = 0.0
    for n in range(ell // 2 + 1):
        rhs += binomial_difference(ell, n) * sym_coefficient(form, ell - 2 * n, p)
    rhs *= 1 + chi
    gap = abs(lhs - rhs)
    exact_ok = verify_fcrel(form, ell, p)  # exact side, times integer (1+chi)
    passed = exact_ok and gap <= 1e-9 * max(1.0, abs(lhs), abs(rhs))
    return DecompositionCheck(
        p=p, ell=ell, D=D, exact_ok=exact_ok, float_gap=gap, passed=passed
    )


def binomial_identity_check(ell: int) -> bool:
    """C(ell,n) - C(ell,n-1) == (ell-2n+1)/(ell-n+1) * C(ell,n), exactly."""
    if ell < 1:
        raise InputError("ell must be >= 1")
    for n in range(ell // 2 + 1):
        lhs = Fraction(binomial_difference(ell, n))
        rhs = Fraction(ell - 2 * n + 1, ell - n + 1) * math.comb(ell, n)
        if n == 0:
            rhs = Fraction(1)
        if lhs != rhs:
            return False
    return True
