"""Decomposition of fractional integrals into integer derivatives plus moments.

The left integral of a C^n function is expanded as

    I^alpha x(t) ~ sum_{i<n} A_i(alpha,N) (t-a)^(alpha+i) x^(i)(t)
                 + sum_{p=n..N} B(alpha,p) (t-a)^(alpha+n-1-p) V_p(t),

with V_p(t) = int_a^t (p-n+1)(tau-a)^(p-n) x(tau) dtau. The module computes
the coefficients and their truncation tails, the moment integrals, the
left/right approximations, the classical analytic-series baseline, and the
truncation error bound.

The full A_i series sums to zero, so the truncated A_i(alpha, N) equals
minus its own tail; both are computed from their respective index forms and
tested against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .quadrature import integrate_adaptive
from .reference import FunctionSpec, Interval, exact_fractional_integral, validate_order
from .special import gamma, gamma_ratio_sequence, reciprocal_gamma_product

__all__ = [
    "ExpansionParams",
    "CoefficientSet",
    "MomentState",
    "GridResult",
    "coeff_A",
    "coeff_B",
    "tail_A",
    "tail_B",
    "coefficient_set",
    "moments_left",
    "moments_right",
    "approx_left",
    "approx_right",
    "approx_analytic_series",
    "truncation_bound",
    "binomial_reference",
    "l2_error",
    "decomposition_grid",
    "analytic_series_grid",
]


@dataclass(frozen=True)
class ExpansionParams:
    """Smoothness order n >= 1 and truncation order N >= n."""

    n: int
    N: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.N < self.n:
            raise ValueError(f"N must be >= n, got N={self.N} < n={self.n}")


@dataclass(frozen=True)
class MomentState:
    """One moment value V_p(t) (left) or W_p(t) (right)."""

    p: int
    value: float
    side: str


@dataclass(frozen=True)
class CoefficientSet:
    """Precomputed A_i and B_p for fixed (alpha, n, N) and side.

    Right-side sets carry (-1)^i on A_i (the reflected derivatives alternate
    sign); B is identical on both sides, as the reflection identity
    I_right[x] = I_left[x(a+b-.)] requires.
    """

    alpha: float
    params: ExpansionParams
    side: str
    A: tuple[float, ...]
    B: tuple[float, ...]
    integer_order: bool

    def B_at(self, p: int) -> float:
        return self.B[p - self.params.n]

    def without_A(self) -> "CoefficientSet":
        """Copy with all A_i zeroed (the ablation variant)."""
        return replace(self, A=tuple(0.0 for _ in self.A))


def _check_index(params: ExpansionParams, i: int) -> None:
    if not 0 <= i <= params.n - 1:
        raise ValueError(f"i must be in [0, n-1] = [0, {params.n - 1}], got {i}")


def coeff_A(alpha: float, params: ExpansionParams, i: int) -> float:
    """A_i(alpha, N) = 1/Gamma(alpha+i+1) [1 + sum_{p=n-i}^N Gamma(p-alpha-n+1)
    / (Gamma(-alpha-i) (p-n+1+i)!)].

    Integer alpha collapses the bracket to 1 (each term has a gamma pole in
    the denominator): A_i = 1/Gamma(alpha+i+1).
    """
    alpha = validate_order(alpha)
    _check_index(params, i)
    if float(alpha).is_integer():
        return 1.0 / gamma(alpha + i + 1.0)
    n, N = params.n, params.N
    # arguments p - alpha - n + 1 for p = n-i .. N, via the ratio recurrence
    seq = gamma_ratio_sequence(1.0 - alpha - i, N - n + i + 1)
    g_neg = gamma(-alpha - i)
    bracket = 1.0
    fact = 1.0  # (p - n + 1 + i)! = (q + 1)! for q = p - (n - i)
    for q, g_val in enumerate(seq):
        if q > 0:
            fact *= q + 1.0
        bracket += g_val / (g_neg * fact)
    return bracket / gamma(alpha + i + 1.0)


def coeff_B(alpha: float, params: ExpansionParams, p: int) -> float:
    """B(alpha, p) = Gamma(p-alpha-n+1) / (Gamma(alpha)Gamma(1-alpha)(p-n+1)!).

    Computed through sin(pi*alpha)/pi, so integer alpha gives exactly 0.
    """
    alpha = validate_order(alpha)
    n = params.n
    if not n <= p <= params.N:
        raise ValueError(f"p must be in [n, N] = [{n}, {params.N}], got {p}")
    rgp = reciprocal_gamma_product(alpha)
    if rgp == 0.0:
        return 0.0
    return rgp * gamma(p - alpha - n + 1.0) / math.factorial(p - n + 1)


def tail_A(alpha: float, params: ExpansionParams, i: int) -> float:
    """Neglected part of the A_i series beyond N:
    -1/Gamma(alpha+i+1) sum_{p=0}^{N-n+i+1} Gamma(p-alpha-i)/(Gamma(-alpha-i) p!).

    Depends only on (alpha, i, N-n). Zero at integer alpha.
    """
    alpha = validate_order(alpha)
    _check_index(params, i)
    if float(alpha).is_integer():
        return 0.0
    m = params.N - params.n
    seq = gamma_ratio_sequence(-alpha - i, m + i + 2)
    total = 0.0
    fact = 1.0
    for p, g_val in enumerate(seq):
        if p > 0:
            fact *= p
        total += g_val / (seq[0] * fact)
    return -total / gamma(alpha + i + 1.0)


def tail_B(alpha: float, params: ExpansionParams) -> float:
    """Neglected part of the B series beyond N:
    -1/(Gamma(alpha)Gamma(1-alpha)) sum_{p=0}^{N-n+1} Gamma(p-alpha)/p!.

    Depends only on (alpha, N-n). Zero at integer alpha.
    """
    alpha = validate_order(alpha)
    rgp = reciprocal_gamma_product(alpha)
    if rgp == 0.0:
        return 0.0
    m = params.N - params.n
    seq = gamma_ratio_sequence(-alpha, m + 2)
    total = 0.0
    fact = 1.0
    for p, g_val in enumerate(seq):
        if p > 0:
            fact *= p
        total += g_val / fact
    return -rgp * total


def coefficient_set(alpha: float, params: ExpansionParams,
                    side: str = "left") -> CoefficientSet:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    alpha = validate_order(alpha)
    n, N = params.n, params.N
    A = [coeff_A(alpha, params, i) for i in range(n)]
    B = [coeff_B(alpha, params, p) for p in range(n, N + 1)]
    if side == "right":
        A = [a * (-1.0) ** i for i, a in enumerate(A)]
    return CoefficientSet(alpha=alpha, params=params, side=side,
                          A=tuple(A), B=tuple(B),
                          integer_order=float(alpha).is_integer())


def moments_left(x: FunctionSpec, params: ExpansionParams, a: float, t: float,
                 rel_tol: float = 1e-10) -> list[MomentState]:
    """V_p(t) = int_a^t (p-n+1)(tau-a)^(p-n) x(tau) dtau for p = n..N."""
    if t < a:
        raise ValueError("t must be >= a")
    n = params.n
    out = []
    for p in range(n, params.N + 1):
        if t == a:
            val = 0.0
        else:
            val = integrate_adaptive(
                lambda tau, _p=p: (_p - n + 1) * (tau - a) ** (_p - n) * x(tau),
                a, t, rel_tol=rel_tol,
            )
        out.append(MomentState(p=p, value=val, side="left"))
    return out


def moments_right(x: FunctionSpec, params: ExpansionParams, t: float, b: float,
                  rel_tol: float = 1e-10) -> list[MomentState]:
    """W_p(t) = int_t^b (p-n+1)(b-tau)^(p-n) x(tau) dtau for p = n..N."""
    if t > b:
        raise ValueError("t must be <= b")
    n = params.n
    out = []
    for p in range(n, params.N + 1):
        if t == b:
            val = 0.0
        else:
            val = integrate_adaptive(
                lambda tau, _p=p: (_p - n + 1) * (b - tau) ** (_p - n) * x(tau),
                t, b, rel_tol=rel_tol,
            )
        out.append(MomentState(p=p, value=val, side="right"))
    return out


def approx_left(x: FunctionSpec, alpha: float, params: ExpansionParams,
                a: float, t: float, coeffs: CoefficientSet | None = None) -> float:
    """Truncated decomposition of the left integral at one point.

    Returns 0 at t = a (every term carries a positive power of t - a).
    Pass a precomputed or modified CoefficientSet (e.g. without_A()) to
    override the coefficients.
    """
    if coeffs is None:
        coeffs = coefficient_set(alpha, params, side="left")
    if t == a:
        return 0.0
    n = params.n
    s = t - a
    val = 0.0
    for i in range(n):
        if coeffs.A[i] != 0.0:
            val += coeffs.A[i] * s ** (alpha + i) * float(x.derivative(i)(t))
    for state in moments_left(x, params, a, t):
        val += coeffs.B_at(state.p) * s ** (alpha + n - 1 - state.p) * state.value
    return val


def approx_right(x: FunctionSpec, alpha: float, params: ExpansionParams,
                 t: float, b: float, coeffs: CoefficientSet | None = None) -> float:
    """Truncated decomposition of the right integral; mirror of approx_left."""
    if coeffs is None:
        coeffs = coefficient_set(alpha, params, side="right")
    if t == b:
        return 0.0
    n = params.n
    s = b - t
    val = 0.0
    for i in range(n):
        if coeffs.A[i] != 0.0:
            val += coeffs.A[i] * s ** (alpha + i) * float(x.derivative(i)(t))
    for state in moments_right(x, params, t, b):
        val += coeffs.B_at(state.p) * s ** (alpha + n - 1 - state.p) * state.value
    return val


def approx_analytic_series(x: FunctionSpec, alpha: float, N: int, a: float,
                           t: float) -> float:
    """Classical derivative-series baseline, truncated at N:

    1/Gamma(alpha) sum_{k=0}^N (-1)^k (t-a)^(k+alpha) / ((k+alpha) k!) x^(k)(t).

    Valid for analytic functions; exact for polynomials of degree <= N.
    """
    alpha = validate_order(alpha)
    if t == a:
        return 0.0
    total = 0.0
    fact = 1.0
    for k in range(N + 1):
        if k > 0:
            fact *= k
        total += ((-1.0) ** k * (t - a) ** (k + alpha) / ((k + alpha) * fact)
                  * float(x.derivative(k)(t)))
    return total / gamma(alpha)


def truncation_bound(x: FunctionSpec, alpha: float, params: ExpansionParams,
                     a: float, t: float) -> float:
    """Upper bound on the binomial-remainder truncation error:

    L_n (t-a)^(alpha+n) e^((alpha+n-1)^2 + alpha+n-1)
        / (Gamma(alpha+n) (alpha+n-1) N^(alpha+n-1)),

    with L_n = max_[a,t] |x^(n)|.
    """
    alpha = validate_order(alpha)
    n, N = params.n, params.N
    ln = x.derivative_max(n, a, t)
    an = alpha + n
    return (ln * (t - a) ** an * math.exp((an - 1.0) ** 2 + an - 1.0)
            / (gamma(an) * (an - 1.0) * N ** (an - 1.0)))


def binomial_reference(x: FunctionSpec, alpha: float, params: ExpansionParams,
                       a: float, t: float) -> float:
    """n-fold integration-by-parts form with the binomial kernel truncated at N.

    This is the quantity the truncation bound controls:

        sum_{i<n} (t-a)^(alpha+i)/Gamma(alpha+i+1) x^(i)(a)
        + (t-a)^(alpha+n-1)/Gamma(alpha+n)
          * sum_{p=0}^N Gamma(p-alpha-n+1)/(Gamma(1-alpha-n) p!)
            * (t-a)^(-p) int_a^t (tau-a)^p x^(n)(tau) dtau
    """
    alpha = validate_order(alpha)
    n, N = params.n, params.N
    if t == a:
        return 0.0
    val = 0.0
    for i in range(n):
        val += (t - a) ** (alpha + i) / gamma(alpha + i + 1.0) * float(x.derivative(i)(a))
    xn = x.derivative(n)
    seq = gamma_ratio_sequence(1.0 - alpha - n, N + 1)
    g0 = seq[0]
    total = 0.0
    fact = 1.0
    for p in range(N + 1):
        if p > 0:
            fact *= p
        moment = integrate_adaptive(
            lambda tau, _p=p: (tau - a) ** _p * np.asarray(xn(tau), dtype=float),
            a, t,
        )
        total += seq[p] / (g0 * fact) * moment / (t - a) ** p
    return val + (t - a) ** (alpha + n - 1) / gamma(alpha + n) * total


@dataclass
class GridResult:
    """Approximation and exact values sampled on a grid."""

    t: np.ndarray
    approx: np.ndarray
    exact: np.ndarray
    label: str = ""

    @property
    def error(self) -> np.ndarray:
        return self.exact - self.approx


def l2_error(result: GridResult) -> float:
    """sqrt(int (exact - approx)^2 dt) by the trapezoid rule on the grid."""
    if len(result.t) < 2:
        raise ValueError("grid needs at least 2 points")
    diff = result.error
    return float(np.sqrt(np.trapezoid(diff * diff, result.t)))


def _exact_on_grid(x: FunctionSpec, alpha: float, a: float,
                   tgrid: np.ndarray) -> np.ndarray:
    return np.array([exact_fractional_integral(x, alpha, a, float(t)) for t in tgrid])


def decomposition_grid(x: FunctionSpec, alpha: float, params: ExpansionParams,
                       interval: Interval, points: int = 101,
                       coeffs: CoefficientSet | None = None,
                       exact: np.ndarray | None = None) -> GridResult:
    """Evaluate the left decomposition and the exact integral on a uniform grid."""
    if coeffs is None:
        coeffs = coefficient_set(alpha, params, side="left")
    tgrid = interval.grid(points)
    approx = np.array([
        approx_left(x, alpha, params, interval.a, float(t), coeffs=coeffs)
        for t in tgrid
    ])
    if exact is None:
        exact = _exact_on_grid(x, alpha, interval.a, tgrid)
    return GridResult(t=tgrid, approx=approx, exact=exact,
                      label=f"decomp(n={params.n},N={params.N})")


def analytic_series_grid(x: FunctionSpec, alpha: float, N: int,
                         interval: Interval, points: int = 101,
                         exact: np.ndarray | None = None) -> GridResult:
    """Evaluate the analytic-series baseline and the exact integral on a grid."""
    tgrid = interval.grid(points)
    approx = np.array([
        approx_analytic_series(x, alpha, N, interval.a, float(t)) for t in tgrid
    ])
    if exact is None:
        exact = _exact_on_grid(x, alpha, interval.a, tgrid)
    return GridResult(t=tgrid, approx=approx, exact=exact, label=f"series(N={N})")
