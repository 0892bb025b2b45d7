# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, cpow=True
"""Compiled twins of the reference kernels in ``_ref.py``.

Integer kernels are exact; float kernels run the same IEEE operations in
the same order as the reference backend (build uses -ffp-contract=off).
"""

import math

import numpy as np

cimport numpy as cnp

BACKEND = "compiled"

DEF LIMB_BITS = 31
DEF LIMB_MASK = 0x7FFFFFFF

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"


def divisor_power_limbs(long long limit, int power):
    bound = 2 * int(limit) ** power
    cdef int nlimbs = (bound.bit_length() + LIMB_BITS - 1) // LIMB_BITS
    out = np.zeros((nlimbs, limit + 1), dtype=np.int64)
    cdef long long[:, ::1] limbs = out
    cdef long long d, m, j
    cdef uint128 dp
    cdef long long part
    cdef int e
    for d in range(1, limit + 1):
        dp = 1
        for e in range(power):
            dp *= <uint128> d
        j = 0
        while dp != 0:
            part = <long long> (dp & LIMB_MASK)
            if part != 0:
                for m in range(d, limit + 1, d):
                    limbs[j, m] += part
            dp >>= LIMB_BITS
            j += 1
    return out


def spf_sieve(long long limit):
    out = np.zeros(limit + 1, dtype=np.int32)
    cdef int[::1] spf = out
    cdef long long p, m
    for p in range(2, limit + 1):
        if spf[p] == 0:
            for m in range(p, limit + 1, p):
                if spf[m] == 0:
                    spf[m] = <int> p
    return out


def squarefree_table(long long limit):
    out = np.ones(limit + 1, dtype=np.uint8)
    cdef unsigned char[::1] t = out
    t[0] = 0
    cdef long long d, dd, m
    cdef long long r = <long long> math.isqrt(limit)
    for d in range(2, r + 1):
        dd = d * d
        for m in range(dd, limit + 1, dd):
            t[m] = 0
    return out


def omega_table(long long limit):
    out = np.zeros(limit + 1, dtype=np.int8)
    cdef signed char[::1] om = out
    cdef long long p, m
    for p in range(2, limit + 1):
        if om[p] == 0:
            for m in range(p, limit + 1, p):
                om[m] += 1
    return out


def divisor_count_table(long long limit):
    out = np.ones(limit + 1, dtype=np.int32)
    cdef int[::1] t = out
    t[0] = 0
    cdef long long d, m
    for d in range(2, limit + 1):
        for m in range(d, limit + 1, d):
            t[m] += 1
    return out


def rstar_table(long long limit, cnp.ndarray spf_arr, cnp.ndarray chi_arr):
    cdef int[::1] spf = spf_arr
    cdef signed char[::1] chi = chi_arr
    out = np.zeros(limit + 1, dtype=np.int64)
    cdef long long[::1] res = out
    cdef long long n, m, p, loc
    cdef int e, c
    if limit >= 1:
        res[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        m = n
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        c = chi[p]
        if c == 0:
            loc = 1
        elif c == 1:
            loc = e + 1
        else:
            loc = 1 if e % 2 == 0 else 0
        res[n] = loc * res[m]
    return out


def lattice_rep_counts(long long a, long long b, long long c,
                       long long limit, long long bx1, long long bx2):
    out = np.zeros(limit + 1, dtype=np.int64)
    cdef long long[::1] r = out
    cdef long long x1, x2, q
    for x1 in range(-bx1, bx1 + 1):
        for x2 in range(-bx2, bx2 + 1):
            q = a * x1 * x1 + b * x1 * x2 + c * x2 * x2
            if 1 <= q <= limit:
                r[q] += 1
    return out


def kahan_sum(cnp.ndarray terms_arr):
    cdef double[::1] terms = terms_arr
    cdef double s = 0.0, comp = 0.0, x, y, t
    cdef Py_ssize_t i, n = terms.shape[0]
    for i in range(n):
        x = terms[i]
        y = x - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s


cdef double _rhs(double u, double x1, double h, double beta0,
                 double[::1] sig, double[::1] xk, double[::1] dbk,
                 Py_ssize_t nseg):
    cdef double acc, t, r, w, sv
    cdef Py_ssize_t k, j
    if u <= x1:
        return 0.0
    acc = 0.0
    for k in range(nseg):
        t = u - xk[k]
        if t <= 0.0:
            break
        r = t / h
        j = <Py_ssize_t> r
        w = r - j
        sv = sig[j] * (1.0 - w) + sig[j + 1] * w
        acc += dbk[k] * sv
    return -acc / u ** beta0


def sigma_march(cnp.ndarray g_arr, cnp.ndarray sig_arr, Py_ssize_t i_start,
                double h, double beta0, cnp.ndarray xk_arr,
                cnp.ndarray dbk_arr, double x1):
    cdef double[::1] g = g_arr
    cdef double[::1] sig = sig_arr
    cdef double[::1] xk = xk_arr
    cdef double[::1] dbk = dbk_arr
    cdef Py_ssize_t nseg = xk.shape[0]
    cdef Py_ssize_t n = g.shape[0] - 1
    cdef Py_ssize_t i
    cdef double em1 = beta0 - 1.0
    cdef double d_prev, d_next, u_next
    d_prev = _rhs(i_start * h, x1, h, beta0, sig, xk, dbk, nseg)
    for i in range(i_start, n):
        u_next = (i + 1) * h
        d_next = _rhs(u_next, x1, h, beta0, sig, xk, dbk, nseg)
        g[i + 1] = g[i] + 0.5 * h * (d_prev + d_next)
        sig[i + 1] = g[i + 1] * u_next ** em1
        d_prev = d_next
