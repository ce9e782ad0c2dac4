import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cpath.geometry import kgon
from cpath.model import (
    DimensionError,
    PathProblem,
    Polytope,
    barrier_objective,
    problem_from_dict,
    problem_to_dict,
    strictly_feasible_point,
    validate_problem,
)


def test_shape_mismatch_is_structural():
    with pytest.raises(DimensionError):
        Polytope(np.eye(3), np.ones(2))
    with pytest.raises(DimensionError):
        PathProblem(kgon(4), np.array([1.0, 0.0, 0.0]))


def test_validate_accepts_kgons():
    for k in range(3, 10):
        rep = validate_problem(PathProblem(kgon(k), np.zeros(2)))
        assert rep.ok, rep.failures
        assert rep.interior_point is not None
        assert Polytope(kgon(k).A, kgon(k).b).contains(rep.interior_point)


def test_validate_flags_rank_deficiency():
    # two parallel walls: feasible strip, A rank 1
    A = np.array([[1.0, 0.0], [-1.0, 0.0]])
    rep = validate_problem(PathProblem(Polytope(A, np.ones(2)), np.zeros(2)))
    assert not rep.ok
    assert any("rank" in f for f in rep.failures)


def test_validate_flags_unbounded():
    # quadrant x >= 0 (written as -x <= 0) is unbounded
    A = -np.eye(2)
    rep = validate_problem(PathProblem(Polytope(A, np.zeros(2)), np.ones(2)))
    assert not rep.ok
    assert any("unbounded" in f for f in rep.failures)


def test_validate_flags_empty_interior():
    # x <= 0 and -x <= 0 pin x1 to exactly 0
    A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    b = np.array([0.0, 0.0, 1.0, 1.0])
    rep = validate_problem(PathProblem(Polytope(A, b), np.ones(2)))
    assert not rep.ok
    assert any("interior" in f for f in rep.failures)


def test_barrier_value_on_square(square):
    # oracle: direct evaluation, c = 0 isolates the log term
    prob = PathProblem(square.polytope, np.zeros(2))
    want = math.log(0.5) + math.log(1.5) + 2 * math.log(1.0)
    assert barrier_objective(prob, [0.5, 0.0], 1.0) == pytest.approx(want)
    assert want == pytest.approx(-0.2877, abs=5e-5)


def test_barrier_minus_inf_outside(square):
    assert barrier_objective(square, [1.0, 0.0], 1.0) == -np.inf
    assert barrier_objective(square, [2.0, 0.0], 1.0) == -np.inf


@given(st.floats(0.01, 100.0), st.floats(0.01, 100.0),
       st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
def test_barrier_affine_in_mu(mu_a, mu_b, x1, x2):
    # c'x + mu * B(x) is affine in mu, so midpoints interpolate exactly
    prob = PathProblem(kgon(4), np.array([0.7, -0.3]))
    x = np.array([x1, x2])
    va = barrier_objective(prob, x, mu_a)
    vb = barrier_objective(prob, x, mu_b)
    vm = barrier_objective(prob, x, 0.5 * (mu_a + mu_b))
    assert va + vb == pytest.approx(2.0 * vm, rel=1e-9, abs=1e-9)


def test_strictly_feasible_point_origin_shortcut(square):
    assert np.allclose(strictly_feasible_point(square.polytope), 0.0)


def test_strictly_feasible_point_shifted():
    # square moved so the origin is outside
    A = kgon(4).A
    b = A @ np.array([5.0, 5.0]) + 1.0
    x0 = strictly_feasible_point(Polytope(A, b))
    assert np.all(b - A @ x0 > 0)


def test_problem_json_round_trip(square):
    d = problem_to_dict(square)
    assert set(d) == {"A", "b", "c"}
    back = problem_from_dict(d)
    assert np.array_equal(back.A, square.A)
    assert np.array_equal(back.b, square.b)
    assert np.array_equal(back.c, square.c)


def test_problem_json_rejects_garbage():
    with pytest.raises(DimensionError):
        problem_from_dict({"A": [[1, 0]], "b": [1]})
    with pytest.raises(DimensionError):
        problem_from_dict({"A": [[1, 0]], "b": [1], "c": [1, 0, 0]})


def test_polytope_arrays_are_immutable(square):
    with pytest.raises(ValueError):
        square.A[0, 0] = 5.0
    with pytest.raises(ValueError):
        square.c[0] = 5.0
