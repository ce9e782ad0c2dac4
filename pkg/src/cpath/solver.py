"""Damped Newton solver for points of the central path.

For fixed mu > 0 the maximizer of the barrier problem solves

    F(x, s, y) = ( A'y - c,  Ax + s - b,  Sy - mu*e ) = 0,   s, y > 0

where S is the diagonal matrix of s.  Starting from a feasible point
(Ax + s = b) the Newton direction reduces to the n x n normal equations

    A' S^-1 Y A dx = c - mu * A' S^-1 e
    ds = -A dx
    dy = mu * S^-1 e - y - S^-1 Y ds

and the matrix on the left is symmetric positive definite whenever A
has full column rank and s, y > 0.  Steps are damped by the usual ratio
test so that s and y stay strictly positive, with a fraction omega < 1
of the distance to the boundary, capped at the full Newton step.

Iteration stops once max(||F||, alpha*||dx||) drops below epsilon,
which bounds the distance to the exact path point by epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .model import CenteredPoint, PathProblem, strictly_feasible_point

__all__ = [
    "SolverConfig",
    "NewtonStep",
    "SingularSystemError",
    "ConvergenceError",
    "kkt_residual",
    "newton_step",
    "center",
]


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for the Newton iteration.

    omega is the boundary fraction of the damped step, in (0, 1);
    epsilon the stopping tolerance on max(||F||, alpha*||dx||);
    max_iters the iteration budget before giving up.
    """

    omega: float = 0.9
    epsilon: float = 1e-9
    max_iters: int = 200

    def __post_init__(self):
        if not 0.0 < self.omega < 1.0:
            raise ValueError("omega must lie strictly between 0 and 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class NewtonStep:
    dx: np.ndarray
    ds: np.ndarray
    dy: np.ndarray
    alpha: float  # primal stepsize (applied to x and s)
    beta: float   # dual stepsize (applied to y)


class SingularSystemError(RuntimeError):
    """Normal equations not positive definite, even after regularization."""


class ConvergenceError(RuntimeError):
    """Newton loop ran out of iterations; carries the last iterate."""

    def __init__(self, message: str, last: CenteredPoint):
        super().__init__(message)
        self.last = last


def kkt_residual(problem: PathProblem, x, s, y, mu: float):
    """Residual vector and norm of the optimality system at (x, s, y).

    Returns (F, ||F||) with F the concatenation of the dual, primal and
    centering residuals.  s and y must be strictly positive; that is a
    domain constraint of the barrier, not a solvable state.
    """
    x, s, y = (np.asarray(v, dtype=float) for v in (x, s, y))
    if np.any(s <= 0) or np.any(y <= 0):
        raise ValueError("kkt_residual needs s > 0 and y > 0")
    if mu <= 0:
        raise ValueError("mu must be positive")
    A, b, c = problem.A, problem.b, problem.c
    F = np.concatenate([A.T @ y - c, A @ x + s - b, s * y - mu])
    return F, float(np.linalg.norm(F))


def _ratio_cap(v: np.ndarray, dv: np.ndarray) -> float:
    """Largest t with v + t*dv >= 0, infinite when dv never decreases."""
    neg = dv < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(v[neg] / -dv[neg]))


def newton_step(problem: PathProblem, x, s, y, mu: float,
                config: SolverConfig = SolverConfig()) -> NewtonStep:
    """One Newton direction with its damped stepsizes.

    Assumes the iterate is primal feasible (Ax + s = b); the solve then
    needs only the normal equations above.  A singular factorization is
    retried once with a tiny trace-scaled shift before giving up.
    """
    x, s, y = (np.asarray(v, dtype=float) for v in (x, s, y))
    if np.any(s <= 0) or np.any(y <= 0):
        raise ValueError("newton_step needs s > 0 and y > 0")
    A, c = problem.A, problem.c

    w = y / s
    M = A.T @ (w[:, None] * A)
    rhs = c - mu * (A.T @ (1.0 / s))
    try:
        dx = cho_solve(cho_factor(M), rhs)
    except LinAlgError:
        M = M + (1e-12 * np.trace(M)) * np.eye(M.shape[0])
        try:
            dx = cho_solve(cho_factor(M), rhs)
        except LinAlgError as exc:
            raise SingularSystemError(
                "normal equations are singular; A fails the rank assumption"
            ) from exc

    ds = -(A @ dx)
    dy = mu / s - y - w * ds

    alpha = min(1.0, config.omega * _ratio_cap(s, ds))
    beta = min(1.0, config.omega * _ratio_cap(y, dy))
    return NewtonStep(dx=dx, ds=ds, dy=dy, alpha=alpha, beta=beta)


def center(problem: PathProblem, mu: float,
           start: CenteredPoint | tuple | None = None,
           config: SolverConfig = SolverConfig()) -> CenteredPoint:
    """The central-path point x(mu), Newton-certified.

    start warm-starts the iteration, typically with a point centered at
    a nearby mu; anything with x, s, y attributes or a plain (x, s, y)
    triple is accepted.  Cold starts use a strictly feasible point with
    the matching barrier duals y = mu / s.

    Raises ConvergenceError (carrying the last iterate) if the budget
    runs out, which for a validated problem signals mu or the start
    being far outside the solver's comfort zone.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    poly = problem.polytope
    if start is None:
        x = strictly_feasible_point(poly)
        s = poly.slacks(x)
        y = mu / s
    else:
        if isinstance(start, tuple):
            x, s, y = (np.asarray(v, dtype=float) for v in start)
        else:
            x, s, y = (np.array(v, dtype=float) for v in (start.x, start.s, start.y))
        if np.any(s <= 0) or np.any(y <= 0):
            raise ValueError("warm start must have s > 0 and y > 0")

    x = np.asarray(x, dtype=float).copy()
    s = np.asarray(s, dtype=float).copy()
    y = np.asarray(y, dtype=float).copy()

    # For mu around 1e8 the products s_i y_i are quantized at mu * eps,
    # i.e. above epsilon: the absolute residual target is then not
    # representable.  Stalled steps with no residual progress mean the
    # iterate sits on that floor, and the floor certificate is returned
    # with its honest residual instead of erroring out.
    best = None
    stalled = 0
    for it in range(1, config.max_iters + 1):
        _, norm_f = kkt_residual(problem, x, s, y, mu)
        if best is None or norm_f < best.residual:
            best = CenteredPoint(x=x.copy(), s=s.copy(), y=y.copy(), mu=mu,
                                 residual=norm_f, iterations=it - 1)
        step = newton_step(problem, x, s, y, mu, config)
        step_size = step.alpha * float(np.linalg.norm(step.dx))
        x_next = x + step.alpha * step.dx
        s_next = s + step.alpha * step.ds
        y_next = y + step.beta * step.dy
        if max(norm_f, step_size) < config.epsilon:
            # Keep whichever side of the final step certifies better.
            _, norm_after = kkt_residual(problem, x_next, s_next, y_next, mu)
            if norm_after <= norm_f:
                x, s, y, norm_f = x_next, s_next, y_next, norm_after
            return CenteredPoint(x=x, s=s, y=y, mu=mu,
                                 residual=norm_f, iterations=it)
        if step_size < config.epsilon and norm_f >= 0.99 * best.residual:
            stalled += 1
            if stalled >= 5:
                return best
        else:
            stalled = 0
        x, s, y = x_next, s_next, y_next

    _, norm_f = kkt_residual(problem, x, s, y, mu)
    raise ConvergenceError(
        f"no convergence at mu={mu:g} after {config.max_iters} iterations "
        f"(residual {norm_f:.3e})",
        last=CenteredPoint(x=x, s=s, y=y, mu=mu, residual=norm_f,
                           iterations=config.max_iters),
    )
