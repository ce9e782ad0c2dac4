"""Polygon constructions, objective families and closed-form paths.

Regular k-gons are built with unit facet normals

    A_i = (cos((i-1) 2 pi / k), sin((i-1) 2 pi / k)),   b = e,

so facet i touches the unit circle at A_i and the polygon circumscribes
it.  Objectives are generated either by rotating a facet normal
(c = A_i R(theta), a path that leaves the analytic center toward facet
i, twisted by theta) or by randomly interpolating two adjacent normals
(the "leaf" construction used for the seeded ornament patterns).

Two families have closed forms used as solver oracles: the unit disc,
and boxes / cylinders whose paths map onto each other through the
rotation that aligns the objective with a coordinate plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PathProblem, Polytope

__all__ = [
    "AffineMap",
    "LeafSpec",
    "kgon",
    "rotation",
    "facet_objective",
    "transform_problem",
    "leaf_c_vectors",
    "disc_path",
    "cylinder_rotation",
    "cube_cylinder_path",
]

DET_TOL = 1e-12


@dataclass(frozen=True)
class AffineMap:
    """Invertible map x -> Bx + d.

    Near-singular B is rejected at construction: a collapsed map makes
    the transformed constraint matrix lose rank and every guarantee
    downstream with it.  The determinant test is scale-normalized so
    uniformly tiny-but-sane maps still pass.
    """

    B: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        B = np.array(self.B, dtype=float)
        d = np.array(self.d, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ValueError(f"B must be square, got shape {B.shape}")
        if d.shape != (B.shape[0],):
            raise ValueError(f"d has shape {d.shape}, expected ({B.shape[0]},)")
        n = B.shape[0]
        scale = max(np.abs(B).max(), 1e-300)
        if abs(np.linalg.det(B)) <= DET_TOL * scale**n:
            raise ValueError("B is singular or numerically close to it")
        B.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(np.eye(n), np.zeros(n))

    def apply(self, x) -> np.ndarray:
        """Map a point (n,) or a stack of points (k, n)."""
        x = np.asarray(x, dtype=float)
        return x @ self.B.T + self.d

    def inverse(self) -> "AffineMap":
        Binv = np.linalg.inv(self.B)
        return AffineMap(Binv, -(Binv @ self.d))


def kgon(k: int) -> Polytope:
    """Regular k-gon circumscribing the unit circle, centered at 0."""
    if k < 3:
        raise ValueError("a polygon needs at least 3 facets")
    i = np.arange(k)
    ang = 2.0 * np.pi * i / k
    A = np.column_stack([np.cos(ang), np.sin(ang)])
    return Polytope(A, np.ones(k))


def rotation(theta: float) -> np.ndarray:
    """2x2 rotation, oriented so that row-vector action v @ R(theta)
    turns v counterclockwise by theta."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def facet_objective(poly: Polytope, i: int, theta: float) -> np.ndarray:
    """Objective c = A_i R(theta) for facet number i (1-based).

    With theta = 0 the path runs straight from the analytic center to
    the midpoint of facet i; small theta twists it to one side.  Facet
    numbers follow the construction angle (i-1) * 2pi / k, so they are
    1-based like the row indices in the formulas above.
    """
    if not 1 <= i <= poly.m:
        raise ValueError(f"facet index {i} outside 1..{poly.m}")
    if poly.n != 2:
        raise ValueError("facet objectives are defined for planar polygons")
    return poly.A[i - 1] @ rotation(theta)


def transform_problem(problem: PathProblem, t: AffineMap) -> PathProblem:
    """Push a problem through x -> Bx + d so paths map pointwise.

    The image feasible set is {z : A B^-1 z <= b + A B^-1 d} and the
    matching objective is B^-T c; with these choices the path of the
    new problem at every mu is exactly the image of the old path point.
    """
    if t.B.shape[0] != problem.polytope.n:
        raise ValueError("map dimension does not match the problem")
    Binv = np.linalg.inv(t.B)
    A_new = problem.A @ Binv
    b_new = problem.b + A_new @ t.d
    c_new = Binv.T @ problem.c
    return PathProblem(Polytope(A_new, b_new), c_new)


@dataclass(frozen=True)
class LeafSpec:
    """Recipe for the randomized leaf objectives of a k-gon.

    Each of the k leaves sits between adjacent facet normals A_i and
    A_j.  Two bracket vectors pin its sides, drawn with independent
    overshoots alpha ~ N(eta, sigma^2):

        c1' = (1 - alpha1) A_i + alpha1 A_j
        c2' = (1 - alpha2) A_j + alpha2 A_i

    and between them an interior family (1 - beta) A_i + beta A_j with
    beta uniform on [inner_low, inner_high].  Defaults follow the
    ornament recipe: eta = 0.0425, sigma = eta / 3, interior support
    [2 eta, 1 - 2 eta], and three or four interior paths per leaf.
    """

    k: int
    eta: float = 0.0425
    sigma: float | None = None
    inner_low: float | None = None
    inner_high: float | None = None
    paths_per_leaf: tuple[int, int] = (3, 4)
    seed: int = 0

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("a leaf pattern needs a polygon, k >= 3")
        lo, hi = self.paths_per_leaf
        if not (0 <= lo <= hi):
            raise ValueError("paths_per_leaf must be a nondecreasing range")
        if self.resolved_sigma < 0 or self.eta < 0:
            raise ValueError("eta and sigma must be nonnegative")
        if not 0.0 <= self.resolved_inner[0] <= self.resolved_inner[1] <= 1.0:
            raise ValueError("interior support must sit inside [0, 1]")

    @property
    def resolved_sigma(self) -> float:
        return self.eta / 3.0 if self.sigma is None else self.sigma

    @property
    def resolved_inner(self) -> tuple[float, float]:
        lo = 2.0 * self.eta if self.inner_low is None else self.inner_low
        hi = 1.0 - 2.0 * self.eta if self.inner_high is None else self.inner_high
        return lo, hi


def leaf_c_vectors(spec: LeafSpec) -> list[list[np.ndarray]]:
    """Objective vectors for every leaf, brackets first.

    Deterministic in spec.seed; draw order is fixed per leaf as
    (alpha1, alpha2, count, betas) so identical specs always reproduce
    identical patterns.
    """
    poly = kgon(spec.k)
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.resolved_inner
    n_lo, n_hi = spec.paths_per_leaf
    leaves: list[list[np.ndarray]] = []
    for i in range(spec.k):
        ai, aj = poly.A[i], poly.A[(i + 1) % spec.k]
        a1, a2 = rng.normal(spec.eta, spec.resolved_sigma, size=2)
        vectors = [(1 - a1) * ai + a1 * aj, (1 - a2) * aj + a2 * ai]
        count = int(rng.integers(n_lo, n_hi + 1))
        for beta in rng.uniform(lo, hi, size=count):
            vectors.append((1 - beta) * ai + beta * aj)
        leaves.append(vectors)
    return leaves


def disc_path(c, mu: float) -> np.ndarray:
    """Central path of the unit disc {x : ||x|| <= 1}, in closed form.

        x(mu) = (sqrt(mu^2 + ||c||^2) - mu) / ||c||^2 * c

    The path is the straight segment from the origin toward c/||c||;
    mu = 0 returns the boundary optimum and mu = inf the center.
    """
    c = np.asarray(c, dtype=float)
    gamma2 = float(c @ c)
    if gamma2 == 0.0:
        raise ValueError("c must be nonzero")
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if math.isinf(mu):
        return np.zeros_like(c)
    return (math.sqrt(mu * mu + gamma2) - mu) / gamma2 * c


def cylinder_rotation(c) -> np.ndarray:
    """Rotation aligning the (c2, c3) part of the objective with axis 2.

    R maps c to (c1, sqrt(c2^2 + c3^2), 0); applied to the cylinder
    {x1 bounds, x2^2 + x3^2 <= b2^2} it leaves the feasible set fixed,
    which is what lets a box path describe the cylinder path.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise ValueError("cylinder objectives live in R^3")
    r = math.hypot(c[1], c[2])
    if r == 0.0:
        raise ValueError("objective must have a component in the x2-x3 plane")
    return np.array([
        [1.0, 0.0, 0.0],
        [0.0, c[1] / r, c[2] / r],
        [0.0, -c[2] / r, c[1] / r],
    ])


def cube_cylinder_path(c, b, mu: float) -> np.ndarray:
    """Shared central path of the cylinder and the aligned box.

    For the cylinder {|x1| <= b1, x2^2 + x3^2 <= b2^2} with objective c,
    rotate c into the x1-x2 plane, solve each box coordinate from

        t_i x_i^2 + 2 mu x_i - b_i^2 t_i = 0,   t = R c,

    and rotate back.  Coordinates with t_i = 0 stay at 0.  Of the two
    quadratic roots only one lies inside the box; rationalized it reads

        x_i = t_i b_i^2 / (mu + sqrt(mu^2 + t_i^2 b_i^2))

    (b_i^2 under the radical), which keeps the right sign for t_i < 0
    and avoids cancellation at large mu, with x_i -> sign(t_i) b_i as
    mu -> 0.
    """
    c = np.asarray(c, dtype=float)
    b = np.asarray(b, dtype=float)
    if b.shape != (2,):
        raise ValueError("b must be (b1, b2)")
    if np.any(b <= 0):
        raise ValueError("box bounds must be positive")
    if mu <= 0:
        raise ValueError("mu must be positive")
    R = cylinder_rotation(c)
    t = R @ c  # (c1, hypot(c2, c3), 0)

    def axis(ti: float, bi: float) -> float:
        if ti == 0.0:
            return 0.0
        return ti * bi * bi / (mu + math.sqrt(mu * mu + ti * ti * bi * bi))

    z = np.array([axis(t[0], b[0]), axis(t[1], b[1]), 0.0])
    return R.T @ z
