"""Initial-value integration and two-point boundary-value solvers.

Fixed-step classical RK4 keeps trajectories deterministic and reproducible.
Boundary-value problems are solved either by damped-Newton shooting with a
finite-difference Jacobian, or — for affine systems whose modes grow in both
directions, where single shooting is ill-conditioned — by trapezoidal
collocation assembled as one sparse linear system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

__all__ = [
    "OdeSystem",
    "Trajectory",
    "IntegrationError",
    "integrate_rk4",
    "integrate_rk4_checked",
    "BvpProblem",
    "ShootingError",
    "ShootingResult",
    "solve_bvp_shooting",
    "solve_bvp_collocation",
]


class IntegrationError(RuntimeError):
    """State became non-finite during integration."""

    def __init__(self, message: str, t_blowup: float):
        super().__init__(message)
        self.t_blowup = t_blowup


class ShootingError(RuntimeError):
    """Newton iteration on the shooting map failed to converge."""

    def __init__(self, message: str, residual_history: list[float]):
        super().__init__(message)
        self.residual_history = residual_history


@dataclass(frozen=True)
class OdeSystem:
    """First-order system y' = rhs(t, y) on t_span.

    y0 may be None for systems embedded in a boundary-value problem, where
    the initial state is assembled by the BVP solver.
    """

    dimension: int
    rhs: Callable[[float, np.ndarray], np.ndarray]
    t_span: tuple[float, float]
    y0: np.ndarray | None = None


@dataclass
class Trajectory:
    """Grid of integration times and states, both endpoints included."""

    t: np.ndarray  # shape (steps+1,)
    y: np.ndarray  # shape (steps+1, dimension)

    def component(self, index: int) -> np.ndarray:
        return self.y[:, index]

    def interpolant(self, index: int) -> Callable[[np.ndarray], np.ndarray]:
        """Piecewise-linear evaluator of one state component."""
        t, v = self.t, self.y[:, index]
        if t[0] > t[-1]:
            t, v = t[::-1], v[::-1]
        return lambda tt: np.interp(tt, t, v)


def _rk4_loop(rhs, t0: float, y0: np.ndarray, t1: float, steps: int) -> Trajectory:
    h = (t1 - t0) / steps
    y = np.array(y0, dtype=float)
    ts = np.empty(steps + 1)
    ys = np.empty((steps + 1, y.size))
    ts[0] = t0
    ys[0] = y
    t = t0
    for k in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2.0, y + h / 2.0 * k1)
        k3 = rhs(t + h / 2.0, y + h / 2.0 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (k + 1) * h
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"integration blew up at t = {t:.6g}", t)
        ts[k + 1] = t
        ys[k + 1] = y
    return Trajectory(t=ts, y=ys)


def integrate_rk4(system: OdeSystem, steps: int) -> Trajectory:
    """Classical fixed-step 4th-order Runge-Kutta over system.t_span."""
    if steps < 16:
        raise ValueError("steps must be >= 16")
    if system.y0 is None:
        raise ValueError("system has no initial state")
    t0, t1 = system.t_span
    return _rk4_loop(system.rhs, t0, np.asarray(system.y0, dtype=float), t1, steps)


def integrate_rk4_checked(system: OdeSystem, steps: int) -> tuple[Trajectory, float]:
    """Integrate, plus a step-halving Richardson estimate of the endpoint error.

    The estimate |y_h(b) - y_{h/2}(b)|_inf / 15 applies to the returned
    (fine, 2*steps) trajectory.
    """
    coarse = integrate_rk4(system, steps)
    fine = integrate_rk4(system, 2 * steps)
    est = float(np.max(np.abs(coarse.y[-1] - fine.y[-1]))) / 15.0
    return fine, est


@dataclass(frozen=True)
class BvpProblem:
    """Two-point BVP: some initial components known, the rest shot for.

    known_initial: (index, value) pairs fixed at t_span[0];
    known_terminal: (index, value) pairs required at t_span[1];
    free_initial: indices adjusted by the solver. The counts must satisfy
    len(known_initial) + len(free_initial) = dimension and
    len(known_terminal) = len(free_initial).
    """

    system: OdeSystem
    known_initial: tuple[tuple[int, float], ...]
    known_terminal: tuple[tuple[int, float], ...]
    free_initial: tuple[int, ...]

    def __post_init__(self):
        dim = self.system.dimension
        if len(self.known_initial) + len(self.free_initial) != dim:
            raise ValueError("known_initial + free_initial must cover the state")
        if len(self.known_terminal) != len(self.free_initial):
            raise ValueError("need one terminal condition per free initial value")

    def assemble_initial(self, free_values: np.ndarray) -> np.ndarray:
        y0 = np.zeros(self.system.dimension)
        for idx, val in self.known_initial:
            y0[idx] = val
        for idx, val in zip(self.free_initial, free_values):
            y0[idx] = val
        return y0

    def terminal_residual(self, y_end: np.ndarray) -> np.ndarray:
        return np.array([y_end[idx] - val for idx, val in self.known_terminal])


@dataclass
class ShootingResult:
    trajectory: Trajectory
    free_values: np.ndarray
    residual_norm: float
    iterations: int


def solve_bvp_shooting(problem: BvpProblem, steps: int, tol: float = 1e-10,
                       fd_step: float = 1e-6, max_iter: int = 50,
                       initial_guess: np.ndarray | None = None) -> ShootingResult:
    """Damped Newton on the shooting map with a forward-difference Jacobian.

    Backtracking halves the step until the residual norm decreases. An
    affine shooting map (linear ODE, linear conditions) converges in one or
    two iterations.
    """
    nfree = len(problem.free_initial)
    if nfree > 4:
        raise ValueError("shooting supports at most 4 free initial values")
    t0, t1 = problem.system.t_span

    def residual(free: np.ndarray) -> np.ndarray:
        y0 = problem.assemble_initial(free)
        traj = _rk4_loop(problem.system.rhs, t0, y0, t1, steps)
        return problem.terminal_residual(traj.y[-1])

    s = (np.zeros(nfree) if initial_guess is None
         else np.asarray(initial_guess, dtype=float).copy())
    history: list[float] = []
    for iteration in range(max_iter):
        r = residual(s)
        norm = float(np.max(np.abs(r)))
        history.append(norm)
        if norm < tol:
            traj = _rk4_loop(problem.system.rhs, t0, problem.assemble_initial(s),
                             t1, steps)
            return ShootingResult(trajectory=traj, free_values=s,
                                  residual_norm=norm, iterations=iteration)
        jac = np.empty((nfree, nfree))
        for j in range(nfree):
            ds = fd_step * (1.0 + abs(s[j]))
            sp = s.copy()
            sp[j] += ds
            jac[:, j] = (residual(sp) - r) / ds
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        damping = 1.0
        for _ in range(10):
            if np.max(np.abs(residual(s + damping * step))) < norm:
                break
            damping *= 0.5
        s = s + damping * step
    raise ShootingError(
        f"shooting did not converge in {max_iter} iterations "
        f"(last residual {history[-1]:.3e})", history
    )


def _affine_parts(rhs, t: float, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Extract M(t), g(t) of an affine rhs(t, y) = M(t) y + g(t)."""
    g = np.asarray(rhs(t, np.zeros(dim)), dtype=float)
    M = np.empty((dim, dim))
    eye = np.eye(dim)
    for j in range(dim):
        M[:, j] = np.asarray(rhs(t, eye[j]), dtype=float) - g
    return M, g


def solve_bvp_collocation(problem: BvpProblem, grid: np.ndarray) -> Trajectory:
    """Trapezoidal collocation for BVPs with rhs affine in the state.

    One sparse linear solve over the whole grid: boundary conditions are
    imposed as exact rows, so this stays well-posed for dichotomic systems
    (modes growing in both directions) where single shooting loses rank.
    The grid may be non-uniform (log-spaced grids resolve endpoint layers).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ValueError("grid must be 1-d with at least 3 points")
    dim = problem.system.dimension
    npts = grid.size
    rhs = problem.system.rhs

    parts = [_affine_parts(rhs, float(t), dim) for t in grid]

    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    rvec = np.zeros(dim * npts)
    eye = np.eye(dim)
    row = 0
    for k in range(npts - 1):
        h = grid[k + 1] - grid[k]
        Mk, gk = parts[k]
        Mk1, gk1 = parts[k + 1]
        left = -(eye + h / 2.0 * Mk)
        right = eye - h / 2.0 * Mk1
        for i in range(dim):
            for j in range(dim):
                if left[i, j] != 0.0:
                    rows.append(row + i)
                    cols.append(k * dim + j)
                    vals.append(left[i, j])
                if right[i, j] != 0.0:
                    rows.append(row + i)
                    cols.append((k + 1) * dim + j)
                    vals.append(right[i, j])
            rvec[row + i] = h / 2.0 * (gk[i] + gk1[i])
        row += dim
    for idx, val in problem.known_initial:
        rows.append(row)
        cols.append(idx)
        vals.append(1.0)
        rvec[row] = val
        row += 1
    for idx, val in problem.known_terminal:
        rows.append(row)
        cols.append((npts - 1) * dim + idx)
        vals.append(1.0)
        rvec[row] = val
        row += 1
    if row != dim * npts:
        raise ValueError("boundary conditions do not square the system")

    matrix = scipy.sparse.csc_matrix(
        (vals, (rows, cols)), shape=(dim * npts, dim * npts)
    )
    solution = scipy.sparse.linalg.spsolve(matrix, rvec)
    return Trajectory(t=grid.copy(), y=solution.reshape(npts, dim))
