"""Pure NumPy/Python reference implementations of the hot kernels.

Every function here has a compiled twin in ``_fast.pyx`` with identical
semantics.  Integer kernels must agree exactly; floating-point kernels
perform the same IEEE operations in the same order, so results are
bit-identical across backends (the extension is compiled with
``-ffp-contract=off`` to rule out FMA contraction).
"""

import math

import numpy as np

BACKEND = "python"

_LIMB_BITS = 31
_LIMB_MASK = (1 << _LIMB_BITS) - 1


def divisor_power_limbs(limit: int, power: int) -> np.ndarray:
    """Sum of d^power over divisors d of n, for n = 0..limit.

    Values can exceed 64 bits (power 5 at n ~ 1e6 needs ~101 bits), so the
    result is returned as base-2^31 limbs: an int64 array of shape
    (nlimbs, limit+1).  Per-limb accumulated sums stay far below 2^63
    because each n has < 2^20 divisors.
    """
    bound = 2 * limit**power
    nlimbs = (bound.bit_length() + _LIMB_BITS - 1) // _LIMB_BITS
    limbs = np.zeros((nlimbs, limit + 1), dtype=np.int64)
    for d in range(1, limit + 1):
        dp = d**power
        for j in range(nlimbs):
            part = (dp >> (_LIMB_BITS * j)) & _LIMB_MASK
            if part:
                limbs[j, d::d] += part
    return limbs


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table, int32, spf[0] = spf[1] = 0."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest.astype(np.int32)
    return spf


def squarefree_table(limit: int) -> np.ndarray:
    """uint8 table, entry n is 1 iff n is squarefree (entry 0 is 0)."""
    t = np.ones(limit + 1, dtype=np.uint8)
    t[0] = 0
    for d in range(2, math.isqrt(limit) + 1):
        t[d * d :: d * d] = 0
    return t


def omega_table(limit: int) -> np.ndarray:
    """Number of distinct prime factors, int8 (omega(n) <= 15 below 1e18)."""
    om = np.zeros(limit + 1, dtype=np.int8)
    for p in range(2, limit + 1):
        if om[p] == 0:
            om[p::p] += 1
    return om


def divisor_count_table(limit: int) -> np.ndarray:
    """d(n) for n = 0..limit, int32."""
    t = np.ones(limit + 1, dtype=np.int32)
    t[0] = 0
    for d in range(2, limit + 1):
        t[d::d] += 1
    return t


def rstar_table(limit: int, spf: np.ndarray, chi_of_prime: np.ndarray) -> np.ndarray:
    """Divisor sum of a completely multiplicative +-1/0 character.

    chi_of_prime[p] holds the character value at prime p (entries at
    non-prime indices are ignored).  rstar(p^e) is e+1, 1, or (1 if e even
    else 0) for chi = 1, 0, -1 respectively; extended multiplicatively.
    """
    out = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        out[1] = 1
    for n in range(2, limit + 1):
        p = int(spf[n])
        m = n
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        c = int(chi_of_prime[p])
        if c == 0:
            loc = 1
        elif c == 1:
            loc = e + 1
        else:
            loc = 1 if e % 2 == 0 else 0
        out[n] = loc * out[m]
    return out


def lattice_rep_counts(
    a: int, b: int, c: int, limit: int, bx1: int, bx2: int
) -> np.ndarray:
    """Count lattice points with 1 <= a*x1^2 + b*x1*x2 + c*x2^2 <= limit.

    The caller guarantees the form value fits in int64 over the whole
    [-bx1, bx1] x [-bx2, bx2] box.
    """
    x2 = np.arange(-bx2, bx2 + 1, dtype=np.int64)
    cx2sq = c * x2 * x2
    bx2v = b * x2
    hits = []
    for x1 in range(-bx1, bx1 + 1):
        q = a * x1 * x1 + bx2v * x1 + cx2sq
        sel = q[(q >= 1) & (q <= limit)]
        if sel.size:
            hits.append(sel)
    if not hits:
        return np.zeros(limit + 1, dtype=np.int64)
    allq = np.concatenate(hits)
    return np.bincount(allq, minlength=limit + 1).astype(np.int64)


def kahan_sum(terms: np.ndarray) -> float:
    """Compensated (Kahan) sum of a float64 array, in storage order."""
    s = 0.0
    comp = 0.0
    for x in terms.tolist():
        y = x - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


def sigma_march(
    g: np.ndarray,
    sig: np.ndarray,
    i_start: int,
    h: float,
    beta0: float,
    xk: np.ndarray,
    dbk: np.ndarray,
    x1: float,
) -> None:
    """Forward trapezoid march of the delay equation, in place.

    Integrates g'(u) = -u^(-beta0) * sum_k dbk[k] * sigma(u - xk[k]) for
    nodes i_start..n-1, where sigma(u) = g(u) * u^(beta0-1).  Delayed
    values are linear interpolation on the already-filled part of ``sig``;
    the smallest delay xk[0] = x1 exceeds h, so the march is explicit.
    """
    n = g.shape[0] - 1
    nseg = xk.shape[0]
    em1 = beta0 - 1.0

    def rhs(u: float) -> float:
        if u <= x1:
            return 0.0
        acc = 0.0
        for k in range(nseg):
            t = u - xk[k]
            if t <= 0.0:
                break
            r = t / h
            j = int(r)
            w = r - j
            sv = sig[j] * (1.0 - w) + sig[j + 1] * w
            acc += dbk[k] * sv
        return -acc / u**beta0

    d_prev = rhs(i_start * h)
    for i in range(i_start, n):
        u_next = (i + 1) * h
        d_next = rhs(u_next)
        g[i + 1] = g[i] + 0.5 * h * (d_prev + d_next)
        sig[i + 1] = g[i + 1] * u_next**em1
        d_prev = d_next
