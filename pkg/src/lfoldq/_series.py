"""Exact integer q-series arithmetic for the cusp-form builder.

Series are plain lists of Python ints indexed by the q-exponent.  Dense
truncated products are computed by Kronecker substitution: coefficients
are packed into one huge integer per sign part with a stride wide enough
that convolution entries cannot overlap, multiplied with GMP, and
unpacked.  This keeps the whole pipeline exact while delegating the hot
loop to GMP's subquadratic multiplication.
"""

from __future__ import annotations

import gmpy2

__all__ = ["mul_trunc", "linear_combination", "exact_divide"]


def _pack(values: list[int], stride: int):
    if not any(values):
        return None
    return gmpy2.pack(values, stride)


def mul_trunc(a: list[int], b: list[int], limit: int) -> list[int]:
    """Exact product of two integer series, truncated to exponent limit."""
    n = min(len(a), limit + 1)
    m = min(len(b), limit + 1)
    a = a[:n]
    b = b[:m]
    maxa = max(max(a, default=0), -min(a, default=0))
    maxb = max(max(b, default=0), -min(b, default=0))
    if maxa == 0 or maxb == 0:
        return [0] * (limit + 1)
    # any unpacked slot holds a sum of at most min(n, m) products
    stride = (maxa * maxb * min(n, m)).bit_length() + 1
    ap = _pack([v if v > 0 else 0 for v in a], stride)
    am = _pack([-v if v < 0 else 0 for v in a], stride)
    bp = _pack([v if v > 0 else 0 for v in b], stride)
    bm = _pack([-v if v < 0 else 0 for v in b], stride)
    pos = gmpy2.mpz(0)
    neg = gmpy2.mpz(0)
    if ap is not None and bp is not None:
        pos += ap * bp
    if am is not None and bm is not None:
        pos += am * bm
    if ap is not None and bm is not None:
        neg += ap * bm
    if am is not None and bp is not None:
        neg += am * bp
    p = gmpy2.unpack(pos, stride) if pos else []
    q = gmpy2.unpack(neg, stride) if neg else []
    out = [0] * (limit + 1)
    for i, v in enumerate(p[: limit + 1]):
        out[i] = int(v)
    for i, v in enumerate(q[: limit + 1]):
        out[i] -= int(v)
    return out


def linear_combination(parts: list[tuple[int, list[int]]], limit: int) -> list[int]:
    """sum of scalar*series, truncated."""
    out = [0] * (limit + 1)
    for scalar, series in parts:
        for i, v in enumerate(series[: limit + 1]):
            if v:
                out[i] += scalar * v
    return out


def exact_divide(series: list[int], divisor: int) -> list[int]:
    """Divide every coefficient, raising ValueError on a nonzero remainder."""
    out = []
    for i, v in enumerate(series):
        q, r = divmod(v, divisor)
        if r:
            raise ValueError(f"coefficient {i} not divisible by {divisor}")
        out.append(q)
    return out
