"""Binary quadratic forms of negative discriminant: Gauss reduction,
class-set enumeration, lattice representation counts, and the
character-divisor-sum representation formula."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError
from .ntkernel import divisors, factorize, kronecker, sieve_primes

__all__ = [
    "QuadraticForm",
    "ClassSet",
    "RepFormulaReport",
    "reduce_form",
    "class_set",
    "unit_count",
    "representation_counts",
    "r_star",
    "r_star_table",
    "verify_rep_formula",
]


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x1, x2) = a*x1^2 + b*x1*x2 + c*x2^2 with D = b^2 - 4ac."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x1: int, x2: int) -> int:
        return self.a * x1 * x1 + self.b * x1 * x2 + self.c * x2 * x2

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class ClassSet:
    """All reduced primitive positive-definite forms of discriminant D."""

    D: int
    forms: tuple[QuadraticForm, ...]
    h: int
    w: int


def _require_pd_primitive(Q: QuadraticForm) -> None:
    if not Q.is_positive_definite():
        raise InputError(f"form {Q} is not positive definite")
    if not Q.is_primitive():
        raise InputError(f"form {Q} is not primitive")


def reduce_form(Q: QuadraticForm) -> QuadraticForm:
    """The unique reduced form properly equivalent to Q (Gauss reduction).

    Alternates normalizing b into (-a, a] with swapping (a, c), b -> -b
    while a > c; ties |b| = a and a = c are broken toward b >= 0.
    """
    _require_pd_primitive(Q)
    a, b, c = Q.a, Q.b, Q.c
    D = Q.discriminant
    while True:
        if b > a or b <= -a:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            b = r
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if b < 0 and (a == c or -b == a):
            b = -b
        return QuadraticForm(a, b, c)


def unit_count(D: int) -> int:
    """Units of Q(sqrt(D)): 6 for D = -3, 4 for D = -4, 2 below."""
    if D >= 0:
        raise InputError("unit count defined for negative discriminants")
    if D == -3:
        return 6
    if D == -4:
        return 4
    return 2


def class_set(D: int) -> ClassSet:
    """Enumerate reduced primitive forms via |b| <= a <= sqrt(|D|/3)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise InputError(f"not a negative discriminant: {D}")
    forms: list[QuadraticForm] = []
    bmax = math.isqrt(-D // 3)
    for b in range(abs(D) % 2, bmax + 1, 2):
        m = (b * b - D) // 4
        for a in divisors(m):
            if a < b or a < 1:
                continue
            c = m // a
            if a > c:
                break
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append(QuadraticForm(a, b, c))
            if 0 < b < a and a < c:
                forms.append(QuadraticForm(a, -b, c))
    forms.sort(key=lambda f: (f.a, f.c, -f.b))
    return ClassSet(D=D, forms=tuple(forms), h=len(forms), w=unit_count(D))


def _enum_bounds(Q: QuadraticForm, limit: int) -> tuple[int, int]:
    absD = -Q.discriminant
    bx1 = math.isqrt(4 * Q.c * limit // absD) + 1
    bx2 = math.isqrt(4 * Q.a * limit // absD) + 1
    return bx1, bx2


def representation_counts(Q: QuadraticForm, limit: int) -> np.ndarray:
    """r_Q(n) for 0 <= n <= limit by exact lattice enumeration.

    Index 0 is left 0 (tables start at n = 1).  The box bounds come from
    4aQ = (2a*x1 + b*x2)^2 + |D|*x2^2 and the symmetric identity.
    """
    if limit < 1:
        raise InputError("representation_counts requires limit >= 1")
    if not Q.is_positive_definite():
        raise InputError(f"form {Q} is not positive definite")
    bx1, bx2 = _enum_bounds(Q, limit)
    # positive-definite => max |Q| over the box is attained at a corner
    corners = max(
        abs(Q(sx * bx1, sy * bx2)) for sx in (-1, 1) for sy in (-1, 1)
    )
    if corners < 2**62:
        return _kernels.lattice_rep_counts(Q.a, Q.b, Q.c, limit, bx1, bx2)
    out = np.zeros(limit + 1, dtype=np.int64)
    for x1 in range(-bx1, bx1 + 1):
        for x2 in range(-bx2, bx2 + 1):
            q = Q(x1, x2)
            if 1 <= q <= limit:
                out[q] += 1
    return out


def r_star(D: int, n: int) -> int:
    """Divisor sum of the character: sum over d | n of (D|d)."""
    if n < 1:
        raise InputError("r_star requires n >= 1")
    out = 1
    for p, e in factorize(n).factors:
        c = kronecker(D, p)
        if c == 1:
            loc = e + 1
        elif c == 0:
            loc = 1
        else:
            loc = 1 if e % 2 == 0 else 0
        out *= loc
        if out == 0:
            return 0
    return out


def r_star_table(D: int, limit: int) -> np.ndarray:
    """r_star(D, n) for n = 0..limit as int64 (index 0 unused, = 0)."""
    spf = _kernels.spf_sieve(limit)
    chi = np.zeros(limit + 1, dtype=np.int8)
    for p in sieve_primes(limit):
        chi[p] = kronecker(D, p)
    return _kernels.rstar_table(limit, spf, chi)


@dataclass(frozen=True)
class RepFormulaReport:
    D: int
    status: str  # "pass" | "fail" | "formula not applicable"
    checked_upto: int
    first_failing_n: int | None = None
    h: int | None = None


def verify_rep_formula(Q: QuadraticForm, limit: int) -> RepFormulaReport:
    """Check r_Q(n) = w_D * r_star(n) for all n <= limit (h(D) = 1 only)."""
    _require_pd_primitive(Q)
    D = Q.discriminant
    cs = class_set(D)
    if cs.h != 1:
        return RepFormulaReport(
            D=D, status="formula not applicable", checked_upto=0, h=cs.h
        )
    lattice = representation_counts(Q, limit)
    rs = r_star_table(D, limit)
    expected = cs.w * rs
    mism = np.nonzero(lattice[1:] != expected[1:])[0]
    if mism.size:
        n_bad = int(mism[0]) + 1
        return RepFormulaReport(
            D=D, status="fail", checked_upto=limit, first_failing_n=n_bad, h=1
        )
    return RepFormulaReport(D=D, status="pass", checked_upto=limit, h=1)
