"""Summatory functions of fold-power eigenvalues over quadratic-form
values, the sieve-weighted mean-value sum and its main term, the two
closed-form bound evaluators, and first-sign-change search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InputError, RangeError
from .modforms import Eigenform, lambda_table
from .ntkernel import is_fundamental_discriminant, kronecker, omega, sieve_primes
from .quadforms import (
    QuadraticForm,
    class_set,
    r_star_table,
    representation_counts,
    unit_count,
)
from .sigma import SigmaSolution, alpha_step, h_Y_value, pow_step

__all__ = [
    "BoundInputs",
    "SumReport",
    "SignChangeResult",
    "EulerProduct",
    "L1Result",
    "MainTermResult",
    "LowerBoundReport",
    "summatory_SQ",
    "summatory_SD",
    "E_eta",
    "main_term_E",
    "euler_P1",
    "L1_chi",
    "thm11_bound",
    "thm11_log_bound",
    "thm12_bound",
    "thm12_log_bound",
    "first_sign_change",
    "bound_ratio_sweep",
    "lowerbound_lhs",
]


@dataclass(frozen=True)
class BoundInputs:
    """Inputs shared by the closed-form bound evaluators."""

    ell: int
    k: int
    N: int
    D: int
    X: float = 1.0
    Y: float = 1.0
    u: float = 1.0
    epsilon: float = 0.01
    u0: float | None = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise InputError("epsilon must be > 0")
        if self.X < 1 or self.Y < 1:
            raise InputError("X and Y must be >= 1")
        if self.u < 1:
            raise InputError("u must be >= 1")
        if self.u0 is not None and self.u0 <= 1:
            raise InputError("u0 must be > 1")
        if self.D >= 0:
            raise InputError("D must be a negative discriminant")


@dataclass(frozen=True)
class SumReport:
    grid: tuple[int, ...]
    S_values: tuple[float, ...]
    log_bound_values: tuple[float, ...]
    ratios: tuple[float, ...]
    exponent_variant: str = "statement"


@dataclass(frozen=True)
class SignChangeResult:
    mode: str  # "I" | "Q" | "D"
    n_star: int | None
    witness_a: int | None
    witness_form: QuadraticForm | None
    search_limit: int


@dataclass(frozen=True)
class EulerProduct:
    value: float
    log_tail_bound: float
    cutoff: int


@dataclass(frozen=True)
class L1Result:
    value: float
    h: int
    w: int
    warning: str | None = None
    partial_sum: float | None = None


@dataclass(frozen=True)
class MainTermResult:
    main: float
    error_envelope: float


@dataclass(frozen=True)
class LowerBoundReport:
    lhs: float
    main_term: float
    ratio: float
    sigma_u: float
    Y: float
    u: float
    beta0: float
    negative_gq_primes: tuple[int, ...] = field(default=())
    lambda_sum: float | None = None


def _squarefree_coprime_mask(limit: int, N: int) -> np.ndarray:
    mask = _kernels.squarefree_table(limit).astype(bool)
    if N > 1:
        ns = np.arange(limit + 1, dtype=np.int64)
        gcds = np.gcd(ns, N)
        mask &= gcds == 1
    mask[0] = False
    return mask


def _fold_terms(form: Eigenform, ell: int, limit: int) -> np.ndarray:
    lam = lambda_table(form, limit)
    return lam**ell


def summatory_SQ(
    form: Eigenform,
    Q: QuadraticForm,
    ell: int,
    X: int,
    r_table: np.ndarray | None = None,
) -> float:
    """Sum of lambda(n)^ell * r_Q(n) over squarefree n <= X coprime to N.

    r_Q comes from exact lattice enumeration (valid for any class number);
    accumulation is compensated, ascending in n.
    """
    _check_sum_args(form, ell, X)
    if r_table is None:
        r_table = representation_counts(Q, X)
    mask = _squarefree_coprime_mask(X, form.level)
    mask &= r_table[: X + 1] > 0
    terms = _fold_terms(form, ell, X)[: X + 1] * r_table[: X + 1]
    return float(_kernels.kahan_sum(np.ascontiguousarray(terms[mask])))


def summatory_SD(form: Eigenform, D: int, ell: int, X: int) -> float:
    """Class-set variant: the weight is sum of r_Q over all reduced forms
    of discriminant D."""
    _check_sum_args(form, ell, X)
    cs = class_set(D)
    combined = np.zeros(X + 1, dtype=np.int64)
    for Q in cs.forms:
        combined += representation_counts(Q, X)
    mask = _squarefree_coprime_mask(X, form.level)
    mask &= combined > 0
    terms = _fold_terms(form, ell, X)[: X + 1] * combined
    return float(_kernels.kahan_sum(np.ascontiguousarray(terms[mask])))


def _check_sum_args(form: Eigenform, ell: int, X: int) -> None:
    if ell < 1 or ell % 2 == 0:
        raise InputError("ell must be odd and >= 1")
    if X < 1:
        raise InputError("X must be >= 1")
    if X > form.x_max:
        raise RangeError(
            f"X={X} beyond stored coefficients ({form.x_max}); build or load more"
        )


def E_eta(D: int, N: int, eta: float, X: int) -> float:
    """Sieve-weighted mean-value sum: sum over squarefree n <= X coprime
    to N of eta^omega(n) * rstar(n).

    This is the divisor-sum convention; the lattice-count convention is
    w_D times larger when h(D) = 1.
    """
    if X < 1:
        raise InputError("X must be >= 1")
    if eta <= 0:
        raise InputError("eta must be positive")
    mask = _squarefree_coprime_mask(X, N)
    rs = r_star_table(D, X)
    mask &= rs != 0
    om = _kernels.omega_table(X)
    terms = np.power(float(eta), om.astype(np.float64)) * rs.astype(np.float64)
    return float(_kernels.kahan_sum(np.ascontiguousarray(terms[mask])))


def euler_P1(D: int, N: int, eta: float, prime_cutoff: int) -> EulerProduct:
    """Truncated Euler product P(1).

    Factor (1 - 1/p)^eta (1 - chi(p)/p)^eta (1 + eta(1+chi(p))/p) for
    p not dividing N; the trailing parenthesis is omitted for p | N.
    The 1/p terms cancel, so the log-tail is O(eta^2 / cutoff); the
    returned bound is (eta + 2*eta^2) / cutoff.
    """
    if prime_cutoff < 2:
        raise InputError("prime_cutoff must be >= 2")
    if eta == 0:
        return EulerProduct(value=1.0, log_tail_bound=0.0, cutoff=prime_cutoff)
    acc = 1.0
    for p in sieve_primes(prime_cutoff):
        chi = kronecker(D, p)
        base = (1.0 - 1.0 / p) ** eta * (1.0 - chi / p) ** eta
        if N % p == 0:
            acc *= base
        else:
            acc *= base * (1.0 + eta * (1 + chi) / p)
    tail = (abs(eta) + 2.0 * eta * eta) / prime_cutoff
    return EulerProduct(value=acc, log_tail_bound=tail, cutoff=prime_cutoff)


def L1_chi(D: int, crosscheck_terms: int = 0) -> L1Result:
    """Class-number-formula value 2*pi*h(D) / (w_D * sqrt(|D|)).

    With crosscheck_terms > 0 the partial character sum
    sum_{n<=T} chi_D(n)/n is also evaluated for comparison.
    """
    if D >= 0:
        raise InputError("D must be negative")
    cs = class_set(D)
    value = 2.0 * math.pi * cs.h / (cs.w * math.sqrt(-D))
    warning = None
    if not is_fundamental_discriminant(D):
        warning = f"D={D} is not fundamental; formula evaluated with computed h={cs.h}"
    partial = None
    if crosscheck_terms > 0:
        acc = 0.0
        comp = 0.0
        for n in range(1, crosscheck_terms + 1):
            c = kronecker(D, n)
            if c == 0:
                continue
            x = c / n
            y = x - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
        partial = acc
    return L1Result(value=value, h=cs.h, w=cs.w, warning=warning, partial_sum=partial)


def _gamma(eta: float) -> float:
    # exact factorial for integer arguments; libm (Lanczos-class,
    # well under 1e-12 relative) otherwise
    if float(eta).is_integer() and 1 <= eta <= 170:
        return float(math.factorial(int(eta) - 1))
    return math.gamma(eta)


def main_term_E(
    D: int, N: int, eta: float, X: int, prime_cutoff: int = 10**6
) -> MainTermResult:
    """Main term P(1) L(1,chi)^eta / Gamma(eta) * X (log X)^(eta-1), with
    the error envelope main * L_N^(2e*eta+2) sqrt(N) / log X, where
    L_N = log(omega(N) + 3); the implied constant is reported as 1."""
    if X < 3:
        raise InputError("X must be >= 3")
    p1 = euler_P1(D, N, eta, prime_cutoff).value
    l1 = L1_chi(D).value
    logx = math.log(X)
    main = p1 * l1**eta / _gamma(eta) * X * logx ** (eta - 1.0)
    LN = math.log(omega(N) + 3)
    envelope = abs(main) * LN ** (2 * math.e * eta + 2) * math.sqrt(N) / logx
    return MainTermResult(main=main, error_envelope=envelope)


def thm11_log_bound(inputs: BoundInputs, exponent_variant: str = "statement") -> float:
    """log of X^(1-1/B+eps) * (N^A (k sqrt(|D|))^B)^(1/B+eps).

    ``exponent_variant`` "statement" uses 1 - 1/B; "proof" uses the
    1 - 2/B exponent that appears in the sign-change argument.
    """
    if inputs.ell % 2 == 0 or inputs.ell < 3:
        raise InputError("ell must be odd and >= 3")
    from .lfold import fold_constants

    fc = fold_constants(inputs.ell)
    if exponent_variant == "statement":
        x_exp = 1.0 - 1.0 / fc.B + inputs.epsilon
    elif exponent_variant == "proof":
        x_exp = 1.0 - 2.0 / fc.B + inputs.epsilon
    else:
        raise InputError(f"unknown exponent variant {exponent_variant!r}")
    log_conductor = fc.A * math.log(inputs.N) + fc.B * math.log(
        inputs.k * math.sqrt(-inputs.D)
    )
    return x_exp * math.log(inputs.X) + (1.0 / fc.B + inputs.epsilon) * log_conductor


def thm11_bound(inputs: BoundInputs, exponent_variant: str = "statement") -> float:
    return math.exp(thm11_log_bound(inputs, exponent_variant))


def thm12_log_bound(inputs: BoundInputs, class_variant: bool = False) -> float:
    """log of the first-sign-change bound

        (N^A k^B)^(1/(2u0)+eps) * (2pi/w_D)^(-2^(ell-1) B/u0)
        * |D|^((1-2^(ell-1)) B/(2u0)+eps),

    and with ``class_variant`` the additional factor
    h(D)^(-(2^(ell-1)+1) B/(2u0)) (the |D| exponent is unchanged:
    (1-2^(ell-1)) = -(2^(ell-1)-1))."""
    if inputs.ell % 2 == 0 or inputs.ell < 3:
        raise InputError("ell must be odd and >= 3")
    if inputs.u0 is None or inputs.u0 <= 1:
        raise InputError("u0 > 1 is required for the sign-change bound")
    from .lfold import fold_constants

    fc = fold_constants(inputs.ell)
    u0 = inputs.u0
    eps = inputs.epsilon
    two_lm1 = 2.0 ** (inputs.ell - 1)
    w = unit_count(inputs.D)
    out = (1.0 / (2 * u0) + eps) * (
        fc.A * math.log(inputs.N) + fc.B * math.log(inputs.k)
    )
    out += (-two_lm1 * fc.B / u0) * math.log(2.0 * math.pi / w)
    out += ((1.0 - two_lm1) * fc.B / (2 * u0) + eps) * math.log(-inputs.D)
    if class_variant:
        h = class_set(inputs.D).h
        out += (-(two_lm1 + 1.0) * fc.B / (2 * u0)) * math.log(h)
    return out


def thm12_bound(inputs: BoundInputs, class_variant: bool = False) -> float:
    return math.exp(thm12_log_bound(inputs, class_variant))


def first_sign_change(
    form: Eigenform,
    ell: int,
    mode: str,
    target: QuadraticForm | int | None,
    limit: int,
) -> SignChangeResult:
    """Smallest squarefree n <= limit, coprime to the level, with a(n) < 0
    (equivalently lambda(n)^ell < 0 for odd ell), honoring the mode:

    I: no representability constraint; Q: r_Q(n) > 0 for the given form;
    D: represented by some reduced form of the given discriminant.
    The ascending exhaustive scan makes the minimality unconditional.
    """
    if ell < 1 or ell % 2 == 0:
        raise InputError("ell must be odd and >= 1")
    if limit > form.x_max:
        raise RangeError(f"limit {limit} beyond stored range {form.x_max}")
    if mode not in ("I", "Q", "D"):
        raise InputError(f"unknown mode {mode!r}")
    forms: tuple[QuadraticForm, ...]
    if mode == "I":
        forms = ()
        rep_tables = []
    elif mode == "Q":
        if not isinstance(target, QuadraticForm):
            raise InputError("mode Q needs a QuadraticForm target")
        forms = (target,)
        rep_tables = [representation_counts(target, limit)]
    else:
        if not isinstance(target, int):
            raise InputError("mode D needs a discriminant target")
        forms = class_set(target).forms
        rep_tables = [representation_counts(Q, limit) for Q in forms]
    sqf = _kernels.squarefree_table(limit)
    for n in range(1, limit + 1):
        if not sqf[n] or math.gcd(n, form.level) != 1:
            continue
        if form.coeffs[n] >= 0:
            continue
        if mode == "I":
            return SignChangeResult(
                mode=mode,
                n_star=n,
                witness_a=form.coeffs[n],
                witness_form=None,
                search_limit=limit,
            )
        for Q, table in zip(forms, rep_tables):
            if table[n] > 0:
                return SignChangeResult(
                    mode=mode,
                    n_star=n,
                    witness_a=form.coeffs[n],
                    witness_form=Q,
                    search_limit=limit,
                )
    return SignChangeResult(
        mode=mode, n_star=None, witness_a=None, witness_form=None, search_limit=limit
    )


def bound_ratio_sweep(
    form: Eigenform,
    Q: QuadraticForm,
    ell: int,
    X_grid: list[int],
    epsilon: float,
) -> SumReport:
    """|S(X)| / bound(X) on an ascending grid.

    The summatory values come from one ascending compensated pass with
    checkpoints at the grid values, so each S(X) is bit-identical to an
    individual run at that X.
    """
    if not X_grid or any(x2 <= x1 for x1, x2 in zip(X_grid, X_grid[1:])):
        raise InputError("X grid must be non-empty and strictly increasing")
    X_max = X_grid[-1]
    _check_sum_args(form, ell, X_max)
    r_table = representation_counts(Q, X_max)
    mask = _squarefree_coprime_mask(X_max, form.level)
    mask &= r_table > 0
    terms = _fold_terms(form, ell, X_max) * r_table
    tvals: list[float] = []
    s = 0.0
    comp = 0.0
    checkpoints = set(X_grid)
    terms_list = terms.tolist()
    mask_list = mask.tolist()
    for n in range(1, X_max + 1):
        if mask_list[n]:
            x = terms_list[n]
            y = x - comp
            t = s + y
            comp = (t - s) - y
            s = t
        if n in checkpoints:
            tvals.append(s)
    logs = []
    ratios = []
    for X, S in zip(X_grid, tvals):
        inp = BoundInputs(
            ell=ell, k=form.weight, N=form.level, D=Q.discriminant, X=X, epsilon=epsilon
        )
        lb = thm11_log_bound(inp)
        logs.append(lb)
        ratios.append(math.exp(math.log(abs(S)) - lb) if S != 0.0 else 0.0)
    return SumReport(
        grid=tuple(X_grid),
        S_values=tuple(tvals),
        log_bound_values=tuple(logs),
        ratios=tuple(ratios),
    )


def lowerbound_lhs(
    D: int,
    N: int,
    ell: int,
    Y: int,
    u: float,
    form: Eigenform | None = None,
    K: int = 20,
    sigma_solution: SigmaSolution | None = None,
    prime_cutoff: int = 10**5,
) -> LowerBoundReport:
    """Sieve-weighted sum sum_{n <= Y^u} h_Y(n)^ell * rstar(n) over
    squarefree n coprime to N, against its predicted main term

        sigma(u) * P(1) L(1,chi)^(2^ell) / Gamma(2^ell) * (log Y^u)^(2^ell - 1) * Y^u.

    With ``form`` given, also reports the convolution positivity
    diagnostic: the primes p <= Y where g(p) = (lambda(p)^ell - h_Y(p)^ell)
    * rstar(p) is negative (the sign-change argument needs g >= 0, which
    holds only while the eigenvalues stay nonnegative), plus the actual
    eigenvalue sum over the same range.
    """
    if Y < 2:
        raise InputError("Y must be >= 2")
    if u < 1:
        raise InputError("u must be >= 1")
    if ell < 1 or ell % 2 == 0:
        raise InputError("ell must be odd and >= 1")
    limit = int(round(Y**u))
    alpha = alpha_step(K)
    beta0 = 2.0**ell
    hy = np.zeros(limit + 1, dtype=np.float64)
    for p in sieve_primes(limit):
        hy[p] = h_Y_value(p, Y, N, alpha)
    # multiplicative over squarefree support
    spf = _kernels.spf_sieve(limit)
    hfull = np.zeros(limit + 1, dtype=np.float64)
    if limit >= 1:
        hfull[1] = 1.0
    sqf = _kernels.squarefree_table(limit)
    for n in range(2, limit + 1):
        if not sqf[n]:
            continue
        p = int(spf[n])
        hfull[n] = hy[p] * hfull[n // p]
    rs = r_star_table(D, limit)
    mask = _squarefree_coprime_mask(limit, N)
    mask &= rs != 0
    terms = hfull**ell * rs.astype(np.float64)
    lhs = float(_kernels.kahan_sum(np.ascontiguousarray(terms[mask])))
    # main term
    if sigma_solution is None:
        from .sigma import solve_sigma

        beta = pow_step(alpha, ell)
        sigma_solution = solve_sigma(beta, U=max(2.0, u + 0.5), h=1e-4, ell=ell)
    sig_u = sigma_solution.sigma_at(u)
    p1 = euler_P1(D, N, beta0, prime_cutoff).value
    l1 = L1_chi(D).value
    log_yu = u * math.log(Y)
    main = sig_u * p1 * l1**beta0 / _gamma(beta0) * log_yu ** (beta0 - 1.0) * (Y**u)
    ratio = lhs / main if main != 0 else math.inf
    neg_primes: tuple[int, ...] = ()
    lam_sum = None
    if form is not None:
        bad = []
        lam = lambda_table(form, min(limit, form.x_max))
        for p in sieve_primes(min(int(Y), form.x_max)):
            if N % p == 0:
                continue
            g = (lam[p] ** ell - hy[p] ** ell) * rs[p]
            if g < 0:
                bad.append(p)
        neg_primes = tuple(bad)
        if limit <= form.x_max:
            lam_sum = float(
                _kernels.kahan_sum(
                    np.ascontiguousarray((lam[: limit + 1] ** ell * rs)[mask])
                )
            )
    return LowerBoundReport(
        lhs=lhs,
        main_term=main,
        ratio=ratio,
        sigma_u=sig_u,
        Y=float(Y),
        u=u,
        beta0=beta0,
        negative_gq_primes=neg_primes,
        lambda_sum=lam_sum,
    )
