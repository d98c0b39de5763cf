"""Ground-truth fractional integrals.

Closed forms for the standard test functions (powers, exp, sin) plus a
quadrature oracle that evaluates the Riemann-Liouville definition directly.
The oracle removes the weak endpoint singularity exactly with the
substitution u = (t - tau)^alpha, after which the integrand is bounded and
composite Simpson converges at full order for smooth functions:

    I^alpha x(t) = 1/(alpha Gamma(alpha)) * int_0^{(t-a)^alpha} x(t - u^(1/alpha)) du
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import integrate_adaptive
from .special import gamma

__all__ = [
    "Interval",
    "FunctionSpec",
    "SeriesConvergenceError",
    "validate_order",
    "exact_power_integral",
    "exact_exp_integral",
    "exact_sin_integral",
    "exact_fractional_integral",
    "rl_integral_oracle",
    "rl_right_integral_oracle",
]

_SERIES_TERM_CAP = 10_000


class SeriesConvergenceError(RuntimeError):
    """Series tail still above tolerance after the term cap."""


def validate_order(alpha: float) -> float:
    """Check alpha > 0 and return it as a float."""
    a = float(alpha)
    if not a > 0.0:
        raise ValueError(f"fractional order must be positive, got {alpha!r}")
    return a


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    def grid(self, points: int) -> np.ndarray:
        if points < 2:
            raise ValueError("grid needs at least 2 points")
        return np.linspace(self.a, self.b, points)


def _falling_factorial(x: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= x - j
    return out


@dataclass(frozen=True)
class FunctionSpec:
    """Evaluatable real function with derivative evaluators.

    Built-in kinds (power/exp/sin) carry analytic derivatives of any order;
    custom functions fall back to central finite differences with a declared
    step and maximum usable order.
    """

    kind: str
    label: str
    func: Callable[[np.ndarray], np.ndarray]
    deriv_factory: Callable[[int], Callable[[np.ndarray], np.ndarray]] = field(repr=False)
    max_order: int | None = None  # None: any order
    exponent: float | None = None  # power kind
    scale: float = 1.0

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    def derivative(self, order: int) -> Callable[[np.ndarray], np.ndarray]:
        """Evaluator for the order-th derivative (order 0 is the function)."""
        if order == 0:
            return self.func
        if self.max_order is not None and order > self.max_order:
            raise ValueError(
                f"{self.label!r} provides derivatives up to order {self.max_order}, "
                f"requested {order}"
            )
        return self.deriv_factory(order)

    def derivative_max(self, order: int, a: float, b: float) -> float:
        """max over [a, b] of |d^order x/dt^order| (the L_n of the error bound)."""
        if self.kind == "power":
            g = self.exponent
            c = abs(self.scale * _falling_factorial(g, order))
            if c == 0.0:
                return 0.0
            power = g - order
            if power >= 0.0:
                return c * max(abs(a), abs(b)) ** power
            if a > 0.0:
                return c * a**power
            return math.inf
        if self.kind == "exp":
            return abs(self.scale) * math.exp(b)
        if self.kind == "sin":
            # |sin(t + order*pi/2)| peaks where the shifted argument is pi/2 + k*pi
            shift = order * math.pi / 2.0
            k_lo = math.ceil((a + shift - math.pi / 2.0) / math.pi)
            k_hi = math.floor((b + shift - math.pi / 2.0) / math.pi)
            if k_hi >= k_lo:
                return abs(self.scale)
            return abs(self.scale) * max(
                abs(math.sin(a + shift)), abs(math.sin(b + shift))
            )
        grid = np.linspace(a, b, 1025)
        return float(np.max(np.abs(self.derivative(order)(grid))))

    @classmethod
    def power(cls, exponent: float, scale: float = 1.0) -> "FunctionSpec":
        """scale * t^exponent for exponent >= 0."""
        if exponent < 0:
            raise ValueError("power exponent must be >= 0")
        label = f"{scale:g}*t^{exponent:g}" if scale != 1.0 else f"t^{exponent:g}"

        def func(t, _s=scale, _g=exponent):
            return _s * np.power(t, _g)

        def deriv(i, _s=scale, _g=exponent):
            c = _s * _falling_factorial(_g, i)

            def d(t, _c=c, _q=_g - i):
                if _c == 0.0:
                    return np.zeros_like(np.asarray(t, dtype=float))
                return _c * np.power(np.asarray(t, dtype=float), _q)

            return d

        return cls(kind="power", label=label, func=func, deriv_factory=deriv,
                   exponent=float(exponent), scale=float(scale))

    @classmethod
    def constant(cls, value: float) -> "FunctionSpec":
        return cls.power(0.0, scale=value)

    @classmethod
    def exp(cls) -> "FunctionSpec":
        return cls(kind="exp", label="exp(t)", func=np.exp,
                   deriv_factory=lambda i: np.exp)

    @classmethod
    def sin(cls) -> "FunctionSpec":
        def deriv(i):
            def d(t, _shift=i * math.pi / 2.0):
                return np.sin(np.asarray(t, dtype=float) + _shift)

            return d

        return cls(kind="sin", label="sin(t)", func=np.sin, deriv_factory=deriv)

    @classmethod
    def custom(cls, func: Callable[[np.ndarray], np.ndarray], domain: Interval,
               max_order: int = 4, label: str = "custom",
               step: float | None = None) -> "FunctionSpec":
        """Wrap a callable; derivatives are central finite differences.

        The default step is (b - a) * 1e-5, reasonable for first and second
        derivatives; higher orders get noisy, hence the max_order cap.
        """
        h = step if step is not None else domain.length * 1e-5

        def vec(t, _f=func):
            t = np.asarray(t, dtype=float)
            out = _f(t)
            return np.broadcast_to(np.asarray(out, dtype=float), t.shape).copy() \
                if np.ndim(out) == 0 else np.asarray(out, dtype=float)

        def deriv(i, _h=h):
            # i-fold central difference: sum_k (-1)^k C(i,k) f(t + (i/2 - k) h) / h^i
            coeffs = [(-1.0) ** k * math.comb(i, k) for k in range(i + 1)]
            offsets = [(i / 2.0 - k) * _h for k in range(i + 1)]

            def d(t):
                t = np.asarray(t, dtype=float)
                acc = np.zeros_like(t)
                for c, o in zip(coeffs, offsets):
                    acc += c * vec(t + o)
                return acc / _h**i

            return d

        return cls(kind="custom", label=label, func=vec, deriv_factory=deriv,
                   max_order=max_order)

    @classmethod
    def from_samples(cls, t: np.ndarray, x: np.ndarray, max_order: int = 2,
                     label: str = "samples") -> "FunctionSpec":
        """Piecewise-linear interpolant of sampled values."""
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        dom = Interval(float(t[0]), float(t[-1]))
        return cls.custom(lambda tt: np.interp(tt, t, x), dom,
                          max_order=max_order, label=label)


def exact_power_integral(gamma_exp: float, alpha: float, t: float) -> float:
    """I^alpha of t^gamma_exp from 0: Gamma(g+1)/Gamma(g+alpha+1) * t^(g+alpha)."""
    alpha = validate_order(alpha)
    if t < 0:
        raise ValueError("t must be >= 0")
    return gamma(gamma_exp + 1.0) / gamma(gamma_exp + alpha + 1.0) * t ** (gamma_exp + alpha)


def exact_exp_integral(alpha: float, t: float, terms: int = _SERIES_TERM_CAP) -> float:
    """I^alpha of exp from 0: sum_k t^(k+alpha)/Gamma(k+alpha+1).

    The series converges factorially; summation stops once the next term
    drops below 1e-14 of the partial sum.
    """
    alpha = validate_order(alpha)
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 0.0
    total = 0.0
    g = gamma(alpha + 1.0)
    tp = t**alpha
    for k in range(terms):
        term = tp / g
        total += term
        if term < 1e-14 * abs(total):
            return total
        g *= alpha + 1.0 + k
        tp *= t
    raise SeriesConvergenceError(
        f"exp series not converged after {terms} terms (t={t:g}, alpha={alpha:g})"
    )


def exact_sin_integral(alpha: float, t: float, terms: int = _SERIES_TERM_CAP) -> float:
    """I^alpha of sin from 0: sum_k (-1)^k t^(2k+1+alpha)/Gamma(2k+2+alpha)."""
    alpha = validate_order(alpha)
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 0.0
    total = 0.0
    for k in range(terms):
        term = (-1.0) ** k * t ** (2 * k + 1 + alpha) / gamma(2 * k + 2 + alpha)
        total += term
        if abs(term) < 1e-14 * max(abs(total), 1e-300):
            return total
    raise SeriesConvergenceError(
        f"sin series not converged after {terms} terms (t={t:g}, alpha={alpha:g})"
    )


def rl_integral_oracle(x: FunctionSpec | Callable, alpha: float, a: float, t: float,
                       panels: int = 16, rel_tol: float = 1e-10,
                       max_panels: int = 1 << 22) -> float:
    """Left Riemann-Liouville integral of order alpha by direct quadrature.

    This is the independent reference all approximations are checked
    against. Panel doubling continues until successive Simpson values agree
    to rel_tol.
    """
    alpha = validate_order(alpha)
    if t < a:
        raise ValueError(f"t = {t:g} below left endpoint a = {a:g}")
    if t == a:
        return 0.0
    xf = x if callable(x) else x.func
    upper = (t - a) ** alpha
    inv = 1.0 / alpha

    def integrand(u):
        return np.asarray(xf(t - u**inv), dtype=float)

    val = integrate_adaptive(integrand, 0.0, upper, panels=panels,
                             rel_tol=rel_tol, max_panels=max_panels)
    return val / (alpha * gamma(alpha))


def rl_right_integral_oracle(x: FunctionSpec | Callable, alpha: float, t: float,
                             b: float, panels: int = 16, rel_tol: float = 1e-10,
                             max_panels: int = 1 << 22) -> float:
    """Right Riemann-Liouville integral, mirror of the left oracle."""
    alpha = validate_order(alpha)
    if t > b:
        raise ValueError(f"t = {t:g} above right endpoint b = {b:g}")
    if t == b:
        return 0.0
    xf = x if callable(x) else x.func
    upper = (b - t) ** alpha
    inv = 1.0 / alpha

    def integrand(u):
        return np.asarray(xf(t + u**inv), dtype=float)

    val = integrate_adaptive(integrand, 0.0, upper, panels=panels,
                             rel_tol=rel_tol, max_panels=max_panels)
    return val / (alpha * gamma(alpha))


def exact_fractional_integral(x: FunctionSpec, alpha: float, a: float,
                              t: float) -> float:
    """Best available exact value of the left integral at one point.

    Closed forms cover the built-in kinds when the lower limit is 0;
    everything else goes through the quadrature oracle.
    """
    if t == a:
        return 0.0
    if a == 0.0:
        if x.kind == "power":
            return x.scale * exact_power_integral(x.exponent, alpha, t)
        if x.kind == "exp":
            return x.scale * exact_exp_integral(alpha, t)
        if x.kind == "sin":
            return x.scale * exact_sin_integral(alpha, t)
    return rl_integral_oracle(x, alpha, a, t)
