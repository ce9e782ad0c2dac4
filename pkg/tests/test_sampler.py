import math

import numpy as np
import pytest

from cpath.geometry import kgon
from cpath.model import CenteredPoint, PathProblem
from cpath.sampler import (
    DegenerateSegmentError,
    PathPolyline,
    RefinementOverflowError,
    SamplerConfig,
    estimate_endpoints,
    pair_deviation,
    proximity_measure,
    refine_curvature,
    refine_midpoint,
    tangent_estimates,
    trace_path,
)
from cpath.solver import center

from conftest import box_path


def _pt(s, y, mu):
    s = np.atleast_1d(np.asarray(s, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    return CenteredPoint(x=np.zeros(1), s=s, y=y, mu=mu, residual=0.0)


def test_proximity_zero_on_exact_pair():
    a = _pt([1.0], [1.0], 1.0)
    assert proximity_measure(a, a, 1.0) == 0.0


def test_proximity_hand_value():
    # oracle by direct substitution: 1/4 * (1+2)(1+0.5) - 1 = 0.125
    a = _pt([1.0], [1.0], 1.0)
    b = _pt([2.0], [0.5], 1.0)
    assert proximity_measure(a, b, 1.0) == pytest.approx(0.125)


def test_proximity_scaling_invariance():
    rng = np.random.default_rng(3)
    s1, y1 = rng.uniform(0.5, 2.0, 5), rng.uniform(0.5, 2.0, 5)
    s2, y2 = rng.uniform(0.5, 2.0, 5), rng.uniform(0.5, 2.0, 5)
    base = proximity_measure(_pt(s1, y1, 1.0), _pt(s2, y2, 0.5), 0.75)
    for t in (0.1, 3.0, 42.0):
        scaled = proximity_measure(_pt(t * s1, y1 / t, 1.0),
                                   _pt(t * s2, y2 / t, 0.5), 0.75)
        assert scaled == pytest.approx(base)


def test_tangent_estimates_right_angle():
    # unit L: both curvature estimates sqrt(2)/1
    t0, t1, k0, k1 = tangent_estimates([0, 0], [1, 0], [1, 1])
    assert np.allclose(t0, [1, 0])
    assert np.allclose(t1, [0, 1])
    assert k0 == pytest.approx(math.sqrt(2))
    assert k1 == pytest.approx(math.sqrt(2))


def test_tangent_estimates_collinear():
    *_, k0, k1 = tangent_estimates([0, 0], [1, 0], [3, 0])
    assert k0 == 0.0 and k1 == 0.0


def test_tangent_estimates_degenerate():
    with pytest.raises(DegenerateSegmentError):
        tangent_estimates([0, 0], [0, 0], [1, 0])


def test_trace_midpoint_square(square):
    cfg = SamplerConfig(rule="midpoint", delta=0.08)
    path = trace_path(square, cfg)
    mus = path.mus()
    assert mus[0] == cfg.mu_max and mus[-1] == cfg.mu_min
    assert np.all(np.diff(mus) < 0)
    # every interval passes the bound it was refined under
    for a, b in zip(path.samples, path.samples[1:]):
        assert pair_deviation(a, b) <= cfg.delta
    # endpoints agree with the closure estimates
    assert np.allclose(path.points()[0], path.x_c)
    assert np.allclose(path.points()[-1], path.x_star)


def test_refine_midpoint_idempotent(square):
    cfg = SamplerConfig(rule="midpoint", delta=0.08)
    path = trace_path(square, cfg)
    again = refine_midpoint(path, cfg)
    assert len(again.samples) == len(path.samples)
    assert np.array_equal(again.mus(), path.mus())


def test_refine_midpoint_overflow_carries_partial(square):
    cfg = SamplerConfig(rule="midpoint", delta=1e-6, max_points=12)
    hi = center(square, cfg.mu_max)
    lo = center(square, cfg.mu_min, start=hi)
    seed = PathPolyline(problem=square, samples=(hi, lo), x_c=hi.x, x_star=lo.x)
    with pytest.raises(RefinementOverflowError) as exc:
        refine_midpoint(seed, cfg)
    assert len(exc.value.partial.samples) == 12


def test_straight_path_stays_straight(square):
    # c equal to a facet normal: the path is the straight segment from
    # the center to that facet's midpoint
    prob = PathProblem(square.polytope, square.A[0].copy())
    path = trace_path(prob, SamplerConfig(rule="midpoint", delta=0.05))
    X = path.points()
    # collinear with the segment [0, facet midpoint] = [0, (1,0)]
    assert np.all(np.abs(X[:, 1]) < 1e-6)
    assert np.all((X[:, 0] > -1e-9) & (X[:, 0] < 1.0 + 1e-9))


def test_trace_curvature_samples_the_bend(square):
    prob = PathProblem(square.polytope, np.array([1.0, 2.0]))
    cfg = SamplerConfig(rule="curvature", delta=0.5, mu_max=1e4,
                        min_segment=1e-3, max_points=5000)
    path = trace_path(prob, cfg)
    X = path.points()
    assert len(X) > 100
    # oracle: per-coordinate quadratic roots all along the schedule
    for pt in path.samples[:: max(1, len(X) // 50)]:
        assert np.allclose(pt.x, box_path(prob.c, pt.mu), atol=1e-7)


def test_refine_curvature_no_flags_left(square):
    prob = PathProblem(square.polytope, np.array([1.0, 2.0]))
    cfg = SamplerConfig(rule="curvature", delta=0.5, mu_max=1e4,
                        min_segment=1e-3, max_points=5000)
    path = trace_path(prob, cfg)
    X = path.points()
    D = np.diff(X, axis=0)
    L = np.linalg.norm(D, axis=1)
    T = D / L[:, None]
    dT = np.linalg.norm(np.diff(T, axis=0), axis=1)
    for k in range(len(dT)):
        if L[k] >= cfg.min_segment and L[k + 1] >= cfg.min_segment:
            assert dT[k] / L[k] <= cfg.delta + 1e-12
            assert dT[k] / L[k + 1] <= cfg.delta + 1e-12


def test_refine_curvature_needs_three(square):
    hi = center(square, 1e2)
    lo = center(square, 1e-2, start=hi)
    seed = PathPolyline(problem=square, samples=(hi, lo), x_c=hi.x, x_star=lo.x)
    with pytest.raises(ValueError):
        refine_curvature(seed, SamplerConfig(rule="curvature"))


def test_estimate_endpoints_square(square):
    x_c, x_star, part = estimate_endpoints(square, SamplerConfig())
    assert np.linalg.norm(x_c) < 1e-6
    # optimum of max x1 over the square is the whole facet x1 = 1; the
    # analytic center of that face is (1, 0)
    assert np.allclose(x_star, [1.0, 0.0], atol=1e-6)
    # facet 1 (x1 <= 1) active: multiplier survives; other three slack
    assert part.sigma_y == {0}
    assert part.sigma_s == {1, 2, 3}
    assert part.covers(4) and part.separates()


def test_polyline_requires_decreasing_mu(square):
    a = center(square, 1.0)
    b = center(square, 2.0, start=a)
    with pytest.raises(ValueError):
        PathPolyline(problem=square, samples=(a, b), x_c=a.x, x_star=b.x)


def test_polyline_json_shape(square):
    from cpath.sampler import polyline_to_dict

    path = trace_path(square, SamplerConfig(rule="midpoint", delta=0.1))
    d = polyline_to_dict(path)
    assert set(d) == {"mu", "x", "x_c", "x_star"}
    assert len(d["mu"]) == len(d["x"]) == len(path.samples)
    assert all(len(p) == 2 for p in d["x"])
