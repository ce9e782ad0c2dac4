"""Problem data for linear programs in inequality form.

The whole package works on one shape of problem:

    maximize  c'x   subject to  Ax <= b

with the log-barrier relaxation

    maximize  c'x + mu * sum(log(s_i)),   s = b - Ax > 0.

A polytope here is always the feasible set {x : Ax <= b}.  Everything
downstream (the Newton solver, the path sampler, the scene composer)
assumes the three structural facts checked by :func:`validate_problem`:
A has full column rank, the feasible set is bounded, and it has a
nonempty strict interior.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

__all__ = [
    "Polytope",
    "PathProblem",
    "CenteredPoint",
    "ComplementarityPartition",
    "ValidationReport",
    "validate_problem",
    "strictly_feasible_point",
    "barrier_objective",
    "problem_from_dict",
    "problem_to_dict",
    "load_problem",
]

RANK_TOL = 1e-10


def _readonly(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


class DimensionError(ValueError):
    """Shapes of A, b, c do not describe one problem."""


@dataclass(frozen=True)
class Polytope:
    """Feasible set {x : Ax <= b} of an inequality system.

    A is (m, n) with one row per constraint, b is (m,).  Construction
    only checks shapes; the model assumptions (rank, boundedness,
    interior) are checked separately by :func:`validate_problem`.
    """

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", _readonly(self.A))
        object.__setattr__(self, "b", _readonly(self.b))
        if self.A.ndim != 2:
            raise DimensionError(f"A must be 2-d, got shape {self.A.shape}")
        if self.b.shape != (self.A.shape[0],):
            raise DimensionError(
                f"b has shape {self.b.shape}, expected ({self.A.shape[0]},)"
            )
        if not (np.isfinite(self.A).all() and np.isfinite(self.b).all()):
            raise DimensionError("A and b must be finite")

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def slacks(self, x) -> np.ndarray:
        """b - Ax, positive strictly inside the polytope."""
        return self.b - self.A @ np.asarray(x, dtype=float)

    def contains(self, x, tol: float = 0.0) -> bool:
        return bool(np.all(self.slacks(x) >= -tol))


@dataclass(frozen=True)
class PathProblem:
    """A polytope together with the objective direction c."""

    polytope: Polytope
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", _readonly(self.c))
        if self.c.shape != (self.polytope.n,):
            raise DimensionError(
                f"c has shape {self.c.shape}, expected ({self.polytope.n},)"
            )
        if not np.isfinite(self.c).all():
            raise DimensionError("c must be finite")

    @property
    def A(self) -> np.ndarray:
        return self.polytope.A

    @property
    def b(self) -> np.ndarray:
        return self.polytope.b


@dataclass(frozen=True)
class CenteredPoint:
    """One point x(mu) of the central path with its certificate.

    x is primal, s the slack vector, y the dual (multiplier) vector.
    residual is the norm of the optimality system at (x, s, y, mu);
    iterations counts the Newton steps the solver spent to get here.
    """

    x: np.ndarray
    s: np.ndarray
    y: np.ndarray
    mu: float
    residual: float
    iterations: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", _readonly(self.x))
        object.__setattr__(self, "s", _readonly(self.s))
        object.__setattr__(self, "y", _readonly(self.y))


@dataclass(frozen=True)
class ComplementarityPartition:
    """Index split of constraints at the optimal endpoint.

    sigma_s holds rows whose slack stays positive (inactive at the
    optimum), sigma_y rows whose multiplier stays positive (active).
    Under strict complementarity the two sets partition {0..m-1}.
    """

    sigma_s: frozenset[int]
    sigma_y: frozenset[int]

    def covers(self, m: int) -> bool:
        return self.sigma_s | self.sigma_y == set(range(m))

    def separates(self) -> bool:
        return not (self.sigma_s & self.sigma_y)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...] = ()
    interior_point: np.ndarray | None = None


def _recession_direction(A: np.ndarray) -> np.ndarray | None:
    """A nonzero d with Ad <= 0 if one exists, else None.

    Any nonzero recession direction has a nonzero coordinate, so it is
    enough to maximize +-d_i over {Ad <= 0} cut to a box.
    """
    m, n = A.shape
    bounds = [(-1.0, 1.0)] * n
    for i in range(n):
        for sign in (1.0, -1.0):
            cost = np.zeros(n)
            cost[i] = -sign  # linprog minimizes
            res = linprog(cost, A_ub=A, b_ub=np.zeros(m), bounds=bounds,
                          method="highs")
            if res.status == 0 and -res.fun > 1e-9:
                return res.x
    return None


def strictly_feasible_point(poly: Polytope) -> np.ndarray:
    """A point with all slacks strictly positive.

    Maximizes the smallest slack (a Chebyshev-like program); raises
    ValueError when the strict interior is empty.  When b > 0 the
    origin is already interior and is returned directly, which covers
    every centered polygon built by the geometry module.
    """
    if np.all(poly.b > 0):
        return np.zeros(poly.n)
    # max t  s.t.  Ax + t*1 <= b
    m, n = poly.m, poly.n
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    A_ub = np.hstack([poly.A, np.ones((m, 1))])
    res = linprog(cost, A_ub=A_ub, b_ub=poly.b,
                  bounds=[(None, None)] * n + [(None, None)],
                  method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        raise ValueError("polytope has no strictly feasible point")
    return res.x[:-1]


def validate_problem(problem) -> ValidationReport:
    """Check the three model assumptions behind the central path.

    Accepts a PathProblem or a bare Polytope.  Full column rank of A
    makes the Newton system definite, boundedness keeps the barrier
    maximizer finite, and a strict interior point is where the barrier
    is defined at all.  Failures are reported, not raised; shape
    mismatches raise DimensionError at construction instead.
    """
    poly = problem.polytope if isinstance(problem, PathProblem) else problem
    A = poly.A
    failures: list[str] = []

    rank = np.linalg.matrix_rank(A, tol=RANK_TOL * np.linalg.norm(A, 2))
    if rank < poly.n:
        failures.append(f"A has column rank {rank} < {poly.n}")

    d = _recession_direction(A)
    if d is not None:
        failures.append(f"feasible set is unbounded along {d.round(6).tolist()}")

    interior = None
    try:
        interior = strictly_feasible_point(poly)
    except ValueError:
        failures.append("feasible set has empty strict interior")

    return ValidationReport(ok=not failures, failures=tuple(failures),
                            interior_point=interior)


def barrier_objective(problem: PathProblem, x, mu: float) -> float:
    """c'x + mu * sum(log s_i); -inf once any slack is nonpositive."""
    x = np.asarray(x, dtype=float)
    s = problem.polytope.slacks(x)
    if np.any(s <= 0):
        return -np.inf
    return float(problem.c @ x + mu * np.log(s).sum())


def problem_from_dict(data: dict) -> PathProblem:
    """Build a problem from the wire format {"A": .., "b": .., "c": ..}."""
    try:
        A, b, c = data["A"], data["b"], data["c"]
    except (KeyError, TypeError) as exc:
        raise DimensionError(f"problem JSON needs keys A, b, c: {exc}") from exc
    return PathProblem(Polytope(A, b), np.asarray(c, dtype=float))


def problem_to_dict(problem: PathProblem) -> dict:
    return {
        "A": problem.A.tolist(),
        "b": problem.b.tolist(),
        "c": problem.c.tolist(),
    }


def load_problem(path) -> PathProblem:
    with open(path) as fh:
        return problem_from_dict(json.load(fh))
