"""Adaptive sampling of central paths into polylines.

A path is drawn from a finite list of centered points with mu running
from mu_max (visually the analytic center) down to mu_min (visually
the optimal face).  Two refinement rules decide where the list needs
more points:

midpoint rule
    For adjacent samples the segment midpoint interpolates both the
    slacks and the duals; its deviation from centrality at the interval
    midpoint mu,

        || 1/4 (s_k + s_k+1)(y_k + y_k+1) - mu e ||,

    bounds how far the drawn chord strays from the true path.  The
    product form makes the test invariant to rescaling s by t and y
    by 1/t.  Intervals failing the bound delta are bisected in mu.

curvature rule
    Chord directions T_k of consecutive segments give finite-difference
    curvature estimates kappa = ||T_k+1 - T_k|| / ||chord||, one per
    interval of the flanking triple.  Intervals with kappa above delta
    are bisected, so points pile up where the path actually bends.
    Chords shorter than min_segment are treated as straight: below the
    solver's own accuracy a direction estimate is noise, and splitting
    such an interval can never improve the drawing.

Bisection picks the geometric mean of the interval by default; mu is a
scale parameter, so halving its exponent is the natural split.  The
arithmetic mean mirrors the original construction and stays available
through the config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .model import CenteredPoint, ComplementarityPartition, PathProblem
from .solver import SolverConfig, center

__all__ = [
    "SamplerConfig",
    "PathPolyline",
    "DegenerateSegmentError",
    "RefinementOverflowError",
    "proximity_measure",
    "pair_deviation",
    "tangent_estimates",
    "refine_midpoint",
    "refine_curvature",
    "estimate_endpoints",
    "trace_path",
    "polyline_to_dict",
]


@dataclass(frozen=True)
class SamplerConfig:
    mu_max: float = 1e8
    mu_min: float = 1e-8
    delta: float = 0.08
    rule: str = "midpoint"  # or "curvature"
    max_points: int = 20000
    bisection: str = "geometric"  # or "arithmetic"
    min_segment: float = 1e-8
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if not 0 < self.mu_min < self.mu_max:
            raise ValueError("need 0 < mu_min < mu_max")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.rule not in ("midpoint", "curvature"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.bisection not in ("geometric", "arithmetic"):
            raise ValueError(f"unknown bisection {self.bisection!r}")
        if self.max_points < 2:
            raise ValueError("max_points must allow at least the endpoints")


@dataclass(frozen=True)
class PathPolyline:
    """A sampled central path, mu strictly decreasing along samples.

    x_c and x_star are the numerically estimated endpoints of the path
    closure (analytic center and optimal-face point); partition is the
    complementarity split observed at the low end.
    """

    problem: PathProblem
    samples: tuple[CenteredPoint, ...]
    x_c: np.ndarray
    x_star: np.ndarray
    partition: ComplementarityPartition | None = None

    def __post_init__(self):
        mus = [p.mu for p in self.samples]
        if len(mus) < 2:
            raise ValueError("a polyline needs at least two samples")
        if not all(a > b for a, b in zip(mus, mus[1:])):
            raise ValueError("samples must be ordered by strictly decreasing mu")

    def points(self) -> np.ndarray:
        return np.array([p.x for p in self.samples])

    def mus(self) -> np.ndarray:
        return np.array([p.mu for p in self.samples])


class DegenerateSegmentError(ValueError):
    """Coincident sample points leave the chord direction undefined."""


class RefinementOverflowError(RuntimeError):
    """Refinement hit max_points; carries the partial polyline."""

    def __init__(self, message: str, partial: PathPolyline):
        super().__init__(message)
        self.partial = partial


def proximity_measure(a: CenteredPoint, b: CenteredPoint, mu: float) -> float:
    """Centrality deviation of the segment midpoint between a and b.

    Componentwise 1/4 (s_a + s_b)(y_a + y_b) - mu, in norm.  Exactly
    zero when a = b sits exactly on the path at mu; grows with both the
    mu gap and the slack disagreement of the endpoints.
    """
    v = 0.25 * (a.s + b.s) * (a.y + b.y) - mu
    return float(np.linalg.norm(v))


def pair_deviation(a: CenteredPoint, b: CenteredPoint) -> float:
    """Midpoint-rule score of one interval: the deviation measured at
    the interval's own midpoint mu, which is what the chord midpoint
    actually approximates."""
    return proximity_measure(a, b, 0.5 * (a.mu + b.mu))


def tangent_estimates(x0, x1, x2):
    """Chord directions and curvature estimates of a sample triple.

    Returns (T0, T1, kappa0, kappa1): unit chords x0->x1 and x1->x2,
    and ||T1 - T0|| divided by each chord length, the curvature charged
    to the leading and trailing interval respectively.
    """
    x0, x1, x2 = (np.asarray(v, dtype=float) for v in (x0, x1, x2))
    d0, d1 = x1 - x0, x2 - x1
    l0, l1 = float(np.linalg.norm(d0)), float(np.linalg.norm(d1))
    if l0 == 0.0 or l1 == 0.0:
        raise DegenerateSegmentError("coincident samples have no tangent")
    t0, t1 = d0 / l0, d1 / l1
    dt = float(np.linalg.norm(t1 - t0))
    return t0, t1, dt / l0, dt / l1


def _bisect_mu(hi: float, lo: float, mode: str) -> float:
    if mode == "geometric":
        return math.sqrt(hi * lo)
    return 0.5 * (hi + lo)


def _overflow(problem, pts, config, rule) -> RefinementOverflowError:
    partial = _assemble(problem, pts, config)
    return RefinementOverflowError(
        f"{rule} refinement exceeded max_points={config.max_points}", partial)


def refine_midpoint(path: PathPolyline, config: SamplerConfig) -> PathPolyline:
    """Insert samples until every interval passes the midpoint bound.

    Scans intervals in mu order and bisects failing ones in place, so
    an interval is only left behind once it satisfies the bound (or mu
    bisection has exhausted floating point).  Idempotent on schedules
    that already pass.
    """
    pts = list(path.samples)
    problem = path.problem
    i = 0
    while i < len(pts) - 1:
        a, b = pts[i], pts[i + 1]
        if pair_deviation(a, b) <= config.delta:
            i += 1
            continue
        mu_new = _bisect_mu(a.mu, b.mu, config.bisection)
        if not b.mu < mu_new < a.mu:
            i += 1  # interval no longer splittable in float
            continue
        if len(pts) >= config.max_points:
            raise _overflow(problem, pts, config, "midpoint")
        pts.insert(i + 1, center(problem, mu_new, start=a, config=config.solver))
    return _assemble(problem, pts, config, like=path)


def _curvature_flags(pts: list[CenteredPoint], config: SamplerConfig) -> np.ndarray:
    """Boolean flag per interval: some flanking triple estimates
    curvature above delta.  Sub-resolution chords count as straight."""
    X = np.array([p.x for p in pts])
    D = np.diff(X, axis=0)
    L = np.linalg.norm(D, axis=1)
    flags = np.zeros(len(pts) - 1, dtype=bool)
    usable = L >= config.min_segment
    T = np.divide(D, np.where(L > 0, L, 1.0)[:, None])
    dT = np.linalg.norm(np.diff(T, axis=0), axis=1)  # one per triple
    pair_ok = usable[:-1] & usable[1:]
    with np.errstate(divide="ignore"):
        flags[:-1] |= pair_ok & (dT / L[:-1] > config.delta)
        flags[1:] |= pair_ok & (dT / L[1:] > config.delta)
    return flags


def refine_curvature(path: PathPolyline, config: SamplerConfig) -> PathPolyline:
    """Insert samples until every curvature estimate is at most delta.

    Needs at least three samples to form one estimate.  Each pass
    bisects every flagged interval once; passes repeat until no flags
    remain or no flagged interval can still be split.
    """
    if len(path.samples) < 3:
        raise ValueError("curvature refinement needs at least 3 samples")
    pts = list(path.samples)
    problem = path.problem
    while True:
        flags = _curvature_flags(pts, config)
        inserted = 0
        for k in np.flatnonzero(flags)[::-1]:
            mu_new = _bisect_mu(pts[k].mu, pts[k + 1].mu, config.bisection)
            if not pts[k + 1].mu < mu_new < pts[k].mu:
                continue
            if len(pts) >= config.max_points:
                raise _overflow(problem, pts, config, "curvature")
            pts.insert(k + 1, center(problem, mu_new, start=pts[k],
                                     config=config.solver))
            inserted += 1
        if not flags.any() or inserted == 0:
            return _assemble(problem, pts, config, like=path)


def _ladder_center(problem: PathProblem, mu: float, start: CenteredPoint,
                   solver: SolverConfig, step: float = 1e4) -> CenteredPoint:
    """Walk mu toward the target in geometric steps, warm-starting each
    stage, so no single Newton run has to cross many orders of
    magnitude."""
    point = start
    while True:
        ratio = point.mu / mu
        if ratio <= step and ratio >= 1.0 / step:
            return center(problem, mu, start=point, config=solver)
        mu_next = point.mu / step if ratio > 1 else point.mu * step
        point = center(problem, mu_next, start=point, config=solver)


def estimate_endpoints(problem: PathProblem, config: SamplerConfig = SamplerConfig()):
    """Numeric stand-ins for the path closure endpoints.

    Returns (x_c, x_star, partition): the path point at mu_max taken as
    the analytic center, the point at mu_min taken as the optimal-face
    center, and the complementarity split read off the low-end slacks
    with threshold sqrt(mu_min).  At mu_min the products s_i y_i equal
    mu_min, so one factor of each pair exceeds sqrt(mu_min) and the
    threshold separates them cleanly under strict complementarity.
    """
    hi = center(problem, config.mu_max, config=config.solver)
    lo = _ladder_center(problem, config.mu_min, hi, config.solver)
    return hi.x, lo.x, _partition_from(lo, config)


def _partition_from(lo: CenteredPoint, config: SamplerConfig) -> ComplementarityPartition:
    thr = math.sqrt(config.mu_min)
    sigma_s = frozenset(int(i) for i in np.flatnonzero(lo.s > thr))
    sigma_y = frozenset(range(len(lo.s))) - sigma_s
    return ComplementarityPartition(sigma_s=sigma_s, sigma_y=sigma_y)


def _assemble(problem, pts, config, like: PathPolyline | None = None) -> PathPolyline:
    if like is not None:
        return replace(like, samples=tuple(pts))
    hi, lo = pts[0], pts[-1]
    return PathPolyline(problem=problem, samples=tuple(pts), x_c=hi.x.copy(),
                        x_star=lo.x.copy(), partition=_partition_from(lo, config))


def trace_path(problem: PathProblem,
               config: SamplerConfig = SamplerConfig()) -> PathPolyline:
    """Sample one central path end to end with the configured rule.

    The midpoint rule starts from just the two extreme mu values; its
    own bound drives every further insertion.  The curvature rule is
    seeded with a coarse geometric ladder (two points per decade of
    mu): curvature estimates compare adjacent chords, so the seed must
    not hide a whole bend inside one enormous interval, and a
    log-uniform grid is the natural coarse schedule for a scale
    parameter.
    """
    hi = center(problem, config.mu_max, config=config.solver)
    if config.rule == "midpoint":
        lo = _ladder_center(problem, config.mu_min, hi, config.solver)
        path = _assemble(problem, [hi, lo], config)
        return refine_midpoint(path, config)

    decades = math.log10(config.mu_max / config.mu_min)
    steps = max(2, math.ceil(2.0 * decades))
    seed = [hi]
    for mu in np.geomspace(config.mu_max, config.mu_min, steps + 1)[1:]:
        seed.append(center(problem, float(mu), start=seed[-1],
                           config=config.solver))
    path = _assemble(problem, seed, config)
    return refine_curvature(path, config)


def polyline_to_dict(path: PathPolyline) -> dict:
    """Wire format {"mu": [...], "x": [[...]], "x_c": [...], "x_star": [...]}."""
    return {
        "mu": [p.mu for p in path.samples],
        "x": [p.x.tolist() for p in path.samples],
        "x_c": path.x_c.tolist(),
        "x_star": path.x_star.tolist(),
    }
