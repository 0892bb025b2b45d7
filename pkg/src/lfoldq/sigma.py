"""Step-function sieve kernel, the auxiliary prime weight h_Y, and the
delay-differential equation for the density sigma(u).

The kernel alpha takes the value 2 on (0, 1/(K+1)] (truncation of the
infinitely many steps accumulating at 0), 2*cos(pi/(m+1)) on each
(1/(m+1), 1/m], and -2 beyond t = 1.  For odd ell the solver works with
beta = alpha^ell: sigma(u) = u^(beta0-1) on (0, x1] and then

    d/du (u^(1-beta0) sigma(u)) = -u^(-beta0) * sum_k sigma(u - x_k) (b_(k-1) - b_k)

is integrated forward by the trapezoid rule on g(u) = u^(1-beta0) sigma(u),
which removes the u^(beta0-1) stiffness near 0.  Delayed values are linear
interpolation on the already-computed grid; since the smallest delay x1
far exceeds the step, the march stays explicit.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError

__all__ = [
    "StepFunction",
    "SigmaSolution",
    "U0Result",
    "MCEstimate",
    "alpha_step",
    "pow_step",
    "h_Y_value",
    "solve_sigma",
    "residual_integral_eq",
    "find_u0",
    "I_j_montecarlo",
]


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous-from-the-left step function on (0, infinity).

    values[0] on (0, breakpoints[0]], values[j] on
    (breakpoints[j-1], breakpoints[j]], tail beyond the last breakpoint.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    tail: float

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints):
            raise InputError("need one value per breakpoint interval")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise InputError("breakpoints must be strictly increasing")

    def __call__(self, t: float) -> float:
        if t <= 0:
            raise InputError("step function defined for t > 0")
        if t > self.breakpoints[-1]:
            return self.tail
        # first breakpoint >= t identifies the interval (x_(j-1), x_j]
        j = bisect.bisect_left(self.breakpoints, t)
        return self.values[j]

    @property
    def x1(self) -> float:
        return self.breakpoints[0]

    @property
    def truncation_order(self) -> int:
        return len(self.breakpoints) - 1

    def jump_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Jump locations x_k and drops (value before - value after)."""
        xs = np.asarray(self.breakpoints, dtype=np.float64)
        after = np.asarray(self.values[1:] + (self.tail,), dtype=np.float64)
        before = np.asarray(self.values, dtype=np.float64)
        return xs, before - after


def alpha_step(K: int) -> StepFunction:
    """The truncated kernel: 2 on (0, 1/(K+1)], 2cos(pi/(m+1)) on
    (1/(m+1), 1/m] for m = K..1, and -2 on (1, infinity)."""
    if K < 1:
        raise InputError("truncation order K must be >= 1")
    breakpoints = tuple(1.0 / (K + 1 - j) for j in range(K + 1))
    values = (2.0,) + tuple(2.0 * math.cos(math.pi / (K + 2 - j)) for j in range(1, K + 1))
    return StepFunction(breakpoints=breakpoints, values=values, tail=-2.0)


def pow_step(alpha: StepFunction, ell: int) -> StepFunction:
    """Pointwise ell-th power of a step function."""
    if ell < 1:
        raise InputError("ell must be >= 1")
    return StepFunction(
        breakpoints=alpha.breakpoints,
        values=tuple(v**ell for v in alpha.values),
        tail=alpha.tail**ell,
    )


def h_Y_value(p: int, Y: float, N: int, alpha: StepFunction) -> float:
    """Weight at a prime: 0 if p | N, -2 if p > Y, else alpha(log p/log Y)."""
    if Y < 2:
        raise InputError("Y must be >= 2")
    if N % p == 0:
        return 0.0
    if p > Y:
        return -2.0
    return alpha(math.log(p) / math.log(Y))


@dataclass
class SigmaSolution:
    """sigma on a uniform grid u_i = i*h, 0 <= i <= n."""

    beta0: float
    h: float
    U: float
    sigma: np.ndarray
    g: np.ndarray  # transformed variable u^(1-beta0) sigma(u)
    K: int
    ell: int
    x1: float

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.sigma.shape[0]) * self.h

    def sigma_at(self, u: float) -> float:
        if u < 0 or u > self.U + 1e-12:
            raise InputError(f"u={u} outside solved range [0, {self.U}]")
        r = u / self.h
        j = int(r)
        if j >= self.sigma.shape[0] - 1:
            return float(self.sigma[-1])
        w = r - j
        return float(self.sigma[j] * (1.0 - w) + self.sigma[j + 1] * w)


def solve_sigma(beta: StepFunction, U: float, h: float, ell: int) -> SigmaSolution:
    """Integrate the delay equation for the kernel beta up to U.

    The initial region (0, x1] is seeded analytically with u^(beta0-1)
    (exact, not integrated).  h must resolve the breakpoint spacing.
    """
    if h > 1e-3:
        raise InputError("grid step too coarse: need h <= 1e-3")
    if not 1.0 < U <= 10.0:
        raise InputError("U must lie in (1, 10]")
    gaps = [beta.breakpoints[0]] + [
        b2 - b1 for b1, b2 in zip(beta.breakpoints, beta.breakpoints[1:])
    ]
    if h > min(gaps) / 4.0:
        raise InputError(
            f"grid step {h} too coarse for breakpoint gap {min(gaps):.3g}"
        )
    beta0 = beta.values[0]
    x1 = beta.x1
    n = int(round(U / h))
    sigma = np.zeros(n + 1, dtype=np.float64)
    g = np.zeros(n + 1, dtype=np.float64)
    i_start = int(math.floor(x1 / h))
    while (i_start + 1) * h <= x1:
        i_start += 1
    em1 = beta0 - 1.0
    for i in range(0, i_start + 1):
        u = i * h
        sigma[i] = u**em1 if u > 0 else 0.0
        g[i] = 1.0
    g[0] = 1.0
    xk, dbk = beta.jump_points()
    _kernels.sigma_march(g, sigma, i_start, h, beta0, xk, dbk, x1)
    return SigmaSolution(
        beta0=beta0,
        h=h,
        U=n * h,
        sigma=sigma,
        g=g,
        K=beta.truncation_order,
        ell=ell,
        x1=x1,
    )


def residual_integral_eq(sol: SigmaSolution, beta: StepFunction, u: float) -> float:
    """|u*sigma(u) - integral_0^u sigma(t) beta(u-t) dt|.

    The integral splits over the constancy segments of beta (so the jump
    locations never fall inside a quadrature cell) and uses the composite
    trapezoid rule on the grid within each segment, with linear
    interpolation at segment ends.
    """
    h = sol.h
    n = sol.sigma.shape[0] - 1
    i_u = u / h
    if abs(i_u - round(i_u)) > 1e-9 or not 0 <= round(i_u) <= n:
        raise InputError(f"u={u} is not a grid node within the solved range")
    i_u = int(round(i_u))
    sig = sol.sigma
    # prefix trapezoid integrals of sigma at the grid nodes
    cum = np.zeros(n + 1)
    np.cumsum(0.5 * h * (sig[:-1] + sig[1:]), out=cum[1:])

    def S(v: float) -> float:
        # integral of sigma over [0, v] with linear interpolation in the cell
        if v <= 0.0:
            return 0.0
        r = v / h
        j = int(r)
        if j >= n:
            return float(cum[n])
        w = r - j
        sa = sig[j]
        sb = sig[j] * (1.0 - w) + sig[j + 1] * w
        return float(cum[j] + 0.5 * (sa + sb) * (w * h))

    # segments of beta in the s variable: (lo, hi] with constant value
    segs: list[tuple[float, float, float]] = []
    lo = 0.0
    for j, x in enumerate(beta.breakpoints):
        segs.append((lo, x, beta.values[j]))
        lo = x
    segs.append((lo, math.inf, beta.tail))
    total = 0.0
    for lo, hi, val in segs:
        if lo >= u:
            break
        t_hi = u - lo
        t_lo = u - min(hi, u)
        total += val * (S(t_hi) - S(t_lo))
    return abs(u * sol.sigma_at(u) - total)


@dataclass(frozen=True)
class U0Result:
    u0: float
    status: str  # "crossed" | "no crossing"
    K: int
    h: float
    ell: int


def find_u0(sol: SigmaSolution) -> U0Result:
    """Positivity threshold of sigma beyond the seeded region.

    Returns the first zero crossing after x1 (bisection on the linear
    interpolant between the bracketing nodes), or U with status
    "no crossing" when sigma stays positive on the whole grid.
    """
    sig = sol.sigma
    n = sig.shape[0] - 1
    start = int(math.floor(sol.x1 / sol.h)) + 1
    cross = None
    for i in range(start, n + 1):
        if sig[i] <= 0.0:
            cross = i
            break
    if cross is None:
        return U0Result(u0=sol.U, status="no crossing", K=sol.K, h=sol.h, ell=sol.ell)
    lo = (cross - 1) * sol.h
    hi = cross * sol.h
    flo = sig[cross - 1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = sol.sigma_at(mid)
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return U0Result(
        u0=0.5 * (lo + hi), status="crossed", K=sol.K, h=sol.h, ell=sol.ell
    )


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


def I_j_montecarlo(
    beta: StepFunction, u: float, j: int, samples: int, seed: int = 0
) -> MCEstimate:
    """Monte-Carlo value of the j-fold correction integral

        I_j(u) = int over t_i >= 0, sum t_i <= u of
                 (u - sum t_i)^(beta0-1) prod (beta0 - beta(t_i)) dt_i/t_i.

    Importance sampling draws t_i with density proportional to 1/t on
    [x1, u]; the integrand vanishes for t_i <= x1 (beta = beta0 there), so
    nothing is lost by the truncation.
    """
    if j not in (1, 2):
        raise InputError("only j in {1, 2} supported")
    if u <= 0:
        raise InputError("u must be positive")
    b0 = beta.values[0]
    x1 = beta.x1
    if u <= x1:
        return MCEstimate(value=0.0, std_error=0.0, samples=samples, seed=seed)
    rng = np.random.default_rng(seed)
    lnr = math.log(u / x1)
    ts = x1 * (u / x1) ** rng.random((samples, j))
    rem = u - ts.sum(axis=1)
    vals = np.zeros(samples)
    ok = rem > 0
    if ok.any():
        tsel = ts[ok]
        weight = np.ones(tsel.shape[0])
        for col in range(j):
            bt = np.fromiter(
                (beta(t) for t in tsel[:, col]), dtype=np.float64, count=tsel.shape[0]
            )
            weight *= b0 - bt
        vals[ok] = rem[ok] ** (b0 - 1.0) * weight * lnr**j
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return MCEstimate(value=mean, std_error=se, samples=samples, seed=seed)
