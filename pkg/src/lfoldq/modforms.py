"""Exact Fourier coefficients of normalized Hecke eigenforms.

Level-1 forms for the six weights with a one-dimensional cusp space are
built from Eisenstein series: Delta = (E4^3 - E6^2)/1728 with
E4 = 1 + 240*sum sigma_3(n) q^n and E6 = 1 - 504*sum sigma_5(n) q^n, and
the higher weights are Delta times monomials in E4, E6.  Every division
is exact; a nonzero remainder aborts the build.  Higher levels enter only
through file ingestion, with all invariants re-verified on load.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import gmpy2
import numpy as np

from . import _kernels, _series
from .errors import InputError, InternalConsistencyError, RangeError

__all__ = [
    "Eigenform",
    "NormalizedEigenvalue",
    "SatakeAngle",
    "DeligneReport",
    "LEVEL_ONE_WEIGHTS",
    "ENGINE_VERSION",
    "build_level_one_eigenform",
    "load_eigenform",
    "save_eigenform",
    "verify_eigenform",
    "normalized_lambda",
    "lambda_table",
    "coefficient_prime_power",
    "coefficient_at",
    "satake_angle",
    "verify_deligne",
]

ENGINE_VERSION = 1

# weight -> factors multiplying Delta (4 for E4, 6 for E6)
_WEIGHT_RECIPE = {12: (), 16: (4,), 18: (6,), 20: (4, 4), 22: (4, 6), 26: (4, 4, 6)}
LEVEL_ONE_WEIGHTS = tuple(sorted(_WEIGHT_RECIPE))

CACHE_ENV_VAR = "LFOLD_CACHE_DIR"


@dataclass
class Eigenform:
    """Normalized eigenform with exact integer coefficients a(1..x_max).

    ``coeffs[n]`` is a(n); index 0 is unused (0).  Instances are treated
    as immutable once built.
    """

    label: str
    weight: int
    level: int
    coeffs: list[int]
    x_max: int

    def a(self, n: int) -> int:
        if not 1 <= n <= self.x_max:
            raise RangeError(f"a({n}) outside stored range 1..{self.x_max}")
        return self.coeffs[n]


@dataclass(frozen=True)
class NormalizedEigenvalue:
    n: int
    value: float
    exact_sign: int


@dataclass(frozen=True)
class SatakeAngle:
    p: int
    theta: float


@dataclass(frozen=True)
class DeligneReport:
    passed: bool
    checked_upto: int
    first_violation_n: int | None = None


def _eisenstein_series(power: int, scale: int, limit: int) -> list[int]:
    """1 + scale * sum_{n>=1} sigma_power(n) q^n, exact."""
    limbs = _kernels.divisor_power_limbs(limit, power)
    sig = _kernels.ints_from_limbs(limbs)
    out = [scale * v for v in sig]
    out[0] = 1
    return out


def build_level_one_eigenform(weight: int, upto: int, use_cache: bool = True) -> Eigenform:
    """The unique normalized cusp eigenform of the given level-1 weight.

    Weights 12, 16, 18, 20, 22, 26 are the ones whose cusp space is
    one-dimensional.  When ``use_cache`` is set and LFOLD_CACHE_DIR points
    somewhere, a verified file round-trip is used to skip rebuilds.
    """
    if weight not in _WEIGHT_RECIPE:
        raise InputError(
            f"unsupported weight {weight}; built-in weights: {LEVEL_ONE_WEIGHTS}"
        )
    if upto < 1:
        raise InputError("upto must be >= 1")
    cache = _cache_path(weight, upto) if use_cache else None
    if cache is not None and cache.exists():
        return load_eigenform(cache)
    e4 = _eisenstein_series(3, 240, upto)
    e6 = _eisenstein_series(5, -504, upto)
    e4sq = _series.mul_trunc(e4, e4, upto)
    e4cb = _series.mul_trunc(e4sq, e4, upto)
    e6sq = _series.mul_trunc(e6, e6, upto)
    diff = [x - y for x, y in zip(e4cb, e6sq)]
    try:
        series = _series.exact_divide(diff, 1728)
    except ValueError as exc:
        raise InternalConsistencyError(f"E4^3 - E6^2 not divisible by 1728: {exc}")
    for factor in _WEIGHT_RECIPE[weight]:
        series = _series.mul_trunc(series, e4 if factor == 4 else e6, upto)
    form = Eigenform(
        label=f"lvl1-wt{weight}",
        weight=weight,
        level=1,
        coeffs=series[: upto + 1],
        x_max=upto,
    )
    if form.coeffs[1] != 1:
        raise InternalConsistencyError("built form is not normalized: a(1) != 1")
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        save_eigenform(form, cache)
    return form


def _cache_path(weight: int, upto: int) -> Path | None:
    root = os.environ.get(CACHE_ENV_VAR)
    if not root:
        return None
    return Path(root) / f"eigenform-w{weight}-N1-X{upto}-v{ENGINE_VERSION}.csv"


# ---------------------------------------------------------------------------
# coefficient file format: header "n,a", rows from n = 1 with no gaps,
# plus a JSON sidecar <path>.meta.json with label/weight/level/count

def save_eigenform(form: Eigenform, path: str | Path) -> None:
    path = Path(path)
    with open(path, "w") as fh:
        fh.write("n,a\n")
        for n in range(1, form.x_max + 1):
            fh.write(f"{n},{form.coeffs[n]}\n")
    meta = {
        "label": form.label,
        "weight": form.weight,
        "level": form.level,
        "count": form.x_max,
    }
    with open(_sidecar(path), "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def load_eigenform(path: str | Path) -> Eigenform:
    """Parse a coefficient file and re-verify every type invariant."""
    path = Path(path)
    sidecar = _sidecar(path)
    if not sidecar.exists():
        raise InputError(f"missing metadata sidecar {sidecar}")
    with open(sidecar) as fh:
        meta = json.load(fh)
    for key in ("label", "weight", "level", "count"):
        if key not in meta:
            raise InputError(f"metadata missing field {key!r}")
    coeffs = [0]
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "n,a":
            raise InputError(f"bad header {header!r}, expected 'n,a'")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                n_str, a_str = line.split(",")
                n = int(n_str)
                a = int(a_str)
            except ValueError:
                raise InputError(f"unparseable row at line {lineno}: {line!r}")
            if n != len(coeffs):
                raise InputError(f"row gap at line {lineno}: expected n={len(coeffs)}")
            coeffs.append(a)
    count = len(coeffs) - 1
    if count < 1:
        raise InputError("coefficient file has no rows")
    if count != meta["count"]:
        raise InputError(f"metadata count {meta['count']} != rows {count}")
    form = Eigenform(
        label=str(meta["label"]),
        weight=int(meta["weight"]),
        level=int(meta["level"]),
        coeffs=coeffs,
        x_max=count,
    )
    problems = verify_eigenform(form)
    if problems:
        raise InputError(f"invariants violated: {problems[0]}")
    return form


def verify_eigenform(form: Eigenform) -> list[str]:
    """All violated invariants, checked exactly; empty list when clean.

    Multiplicativity is checked by rebuilding each a(n) from its
    prime-power part: with the Hecke recursion verified on prime powers,
    a(n) = a(p^e) * a(n/p^e) for every n is equivalent to full coprime
    multiplicativity.
    """
    problems: list[str] = []
    X = form.x_max
    if form.coeffs[1] != 1:
        problems.append("a(1) != 1 (not normalized)")
        return problems
    k = form.weight
    spf = _kernels.spf_sieve(X)
    # Hecke recursion on stored prime powers, p coprime to the level
    for p in _primes_from_spf(spf):
        if form.level % p == 0:
            continue
        pk = p * p
        prev, cur = 1, form.coeffs[p]
        while pk <= X:
            nxt = form.coeffs[p] * cur - p ** (k - 1) * prev
            if form.coeffs[pk] != nxt:
                problems.append(
                    f"Hecke recursion fails at p={p}, power {pk}"
                )
                return problems
            prev, cur = cur, form.coeffs[pk]
            pk *= p
    # multiplicativity via prime-power split
    for n in range(2, X + 1):
        p = int(spf[n])
        m = n
        pe = 1
        while m % p == 0:
            m //= p
            pe *= p
        if m == 1:
            continue
        if form.coeffs[n] != form.coeffs[pe] * form.coeffs[m]:
            problems.append(f"multiplicativity fails at pair ({pe},{m})")
            return problems
    # Deligne bound, exact: a(n)^2 <= d(n)^2 * n^(k-1)
    d = _kernels.divisor_count_table(X)
    for n in range(1, X + 1):
        an = form.coeffs[n]
        if an * an > int(d[n]) ** 2 * n ** (k - 1):
            problems.append(f"Deligne bound fails at n={n}")
            return problems
    return problems


def _primes_from_spf(spf: np.ndarray) -> list[int]:
    idx = np.nonzero(spf[2:] == np.arange(2, spf.shape[0], dtype=spf.dtype))[0] + 2
    return idx.tolist()


# ---------------------------------------------------------------------------

def _lambda_mpfr(a: int, n: int, weight: int) -> float:
    # 96-bit intermediate keeps the final binary64 within 1 ulp
    with gmpy2.context(precision=96):
        v = gmpy2.mpfr(a) / gmpy2.mpfr(n) ** (gmpy2.mpfr(weight - 1) / 2)
        return float(v)


def normalized_lambda(form: Eigenform, n: int) -> NormalizedEigenvalue:
    """lambda(n) = a(n) / n^((k-1)/2) with the sign taken from the integer."""
    a = form.a(n)
    value = _lambda_mpfr(a, n, form.weight)
    return NormalizedEigenvalue(n=n, value=value, exact_sign=(a > 0) - (a < 0))


def lambda_table(form: Eigenform, limit: int) -> np.ndarray:
    """Float64 table of lambda(n) for n = 0..limit (index 0 is 0).

    Bulk path for the summatory kernels: one correctly-rounded float per
    exact integer coefficient, divided by n^((k-1)/2) in float64.  The
    fixed elementwise evaluation keeps reruns bit-identical.
    """
    if limit > form.x_max:
        raise RangeError(f"limit {limit} beyond stored range {form.x_max}")
    num = np.zeros(limit + 1, dtype=np.float64)
    for n in range(1, limit + 1):
        num[n] = float(form.coeffs[n])
    ns = np.arange(limit + 1, dtype=np.float64)
    ns[0] = 1.0
    return num / ns ** ((form.weight - 1) / 2)


def coefficient_at(form: Eigenform, n: int) -> int:
    """Exact a(n) for any n >= 1 whose primes are (stored or) coprime to N."""
    if n < 1:
        raise InputError("n must be >= 1")
    if n <= form.x_max:
        return form.coeffs[n]
    out = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out *= coefficient_prime_power(form, p, e)
        p += 1 if p == 2 else 2
    if m > 1:
        out *= coefficient_prime_power(form, m, 1)
    return out


def coefficient_prime_power(form: Eigenform, p: int, m: int) -> int:
    """a(p^m) by the recursion a(p^(r+1)) = a(p)a(p^r) - p^(k-1)a(p^(r-1))."""
    if form.level % p == 0:
        raise InputError(f"prime {p} divides the level {form.level}")
    if m < 0:
        raise InputError("exponent must be >= 0")
    if m == 0:
        return 1
    if p**m <= form.x_max:
        return form.coeffs[p**m]
    if p > form.x_max:
        raise RangeError(f"a({p}) not stored; cannot start the recursion")
    ap = form.coeffs[p]
    pk1 = p ** (form.weight - 1)
    prev, cur = 1, ap
    for _ in range(m - 1):
        prev, cur = cur, ap * cur - pk1 * prev
    return cur


def satake_angle(form: Eigenform, p: int) -> SatakeAngle:
    """theta in [0, pi] with lambda(p) = 2 cos(theta)."""
    lam = normalized_lambda(form, p).value
    if abs(lam) > 2.0 + 1e-9:
        raise InternalConsistencyError(
            f"|lambda({p})| = {abs(lam)} exceeds 2; coefficients corrupted"
        )
    x = min(1.0, max(-1.0, lam / 2.0))
    return SatakeAngle(p=p, theta=math.acos(x))


def verify_deligne(form: Eigenform, upto: int) -> DeligneReport:
    """Exact check a(n)^2 <= d(n)^2 * n^(k-1) for all n <= upto."""
    if upto > form.x_max:
        raise RangeError(f"upto {upto} beyond stored range {form.x_max}")
    d = _kernels.divisor_count_table(upto)
    k = form.weight
    for n in range(1, upto + 1):
        an = form.coeffs[n]
        if an * an > int(d[n]) ** 2 * n ** (k - 1):
            return DeligneReport(passed=False, checked_upto=upto, first_violation_n=n)
    return DeligneReport(passed=True, checked_upto=upto)
