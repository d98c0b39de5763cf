"""Composite Simpson quadrature with panel doubling."""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["QuadratureConvergenceError", "composite_simpson", "integrate_adaptive"]


class QuadratureConvergenceError(RuntimeError):
    """Panel doubling hit the cap before successive estimates agreed."""

    def __init__(self, message: str, last: float, previous: float):
        super().__init__(f"{message} (last two estimates {previous:.16g}, {last:.16g})")
        self.last = last
        self.previous = previous


def composite_simpson(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                      panels: int) -> float:
    x = np.linspace(lo, hi, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    fx = np.asarray(f(x), dtype=float)
    return float(np.dot(w, fx)) * (hi - lo) / (3.0 * panels)


def integrate_adaptive(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                       panels: int = 16, rel_tol: float = 1e-10,
                       max_panels: int = 1 << 22) -> float:
    """Composite Simpson, doubling panels until successive values agree.

    Convergence means |S_2n - S_n| <= rel_tol * |S_2n| (with an absolute
    floor for integrals near zero). Raises QuadratureConvergenceError with
    the last two estimates if the panel cap is reached first.
    """
    if hi <= lo:
        return 0.0
    if panels < 16:
        raise ValueError("panels must be >= 16")
    n = panels
    prev = cur = composite_simpson(f, lo, hi, n)
    while n < max_panels:
        n *= 2
        cur = composite_simpson(f, lo, hi, n)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise QuadratureConvergenceError(
        f"Simpson rule did not converge within {max_panels} panels", cur, prev
    )
