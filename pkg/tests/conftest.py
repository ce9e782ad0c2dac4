"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own numerics:
LP optima come from brute-force vertex enumeration, curvature from
dense finite differences on closed forms, and so on.  Tests compare
solver output against these, never against itself.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from cpath.geometry import kgon
from cpath.model import PathProblem


@pytest.fixture
def square() -> PathProblem:
    """Unit square |x_i| <= 1 with objective (1, 0)."""
    return PathProblem(kgon(4), np.array([1.0, 0.0]))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a pass/fail verdict for an acceptance criterion."""

    def check(name: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def enumerate_vertices(A: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """All vertices of {x : Ax <= b} by brute force over row subsets.

    Solves every n x n subsystem and keeps feasible solutions.  Only
    meant for tiny test polytopes; serves as the LP ground truth.
    """
    m, n = A.shape
    verts = []
    for rows in itertools.combinations(range(m), n):
        sub = A[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        v = np.linalg.solve(sub, b[list(rows)])
        if np.all(A @ v <= b + tol):
            verts.append(v)
    assert verts, "test polytope has no vertices"
    return np.array(verts)


def lp_max(A: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """LP optimum max{c'x : Ax <= b} via vertex enumeration."""
    verts = enumerate_vertices(A, b)
    return float(np.max(verts @ c))


def box_path(c: np.ndarray, mu: float) -> np.ndarray:
    """Exact central path of the square |x_i| <= 1, one coordinate at a
    time from the scalar quadratic c_i x^2 + 2 mu x - c_i = 0.

    Independent of the package: roots come straight from np.roots and
    the in-box root is selected by magnitude.
    """
    out = []
    for ci in c:
        if ci == 0.0:
            out.append(0.0)
            continue
        roots = np.roots([ci, 2.0 * mu, -ci])
        inside = [r.real for r in roots if abs(r.real) <= 1.0 + 1e-12]
        assert len(inside) == 1
        out.append(inside[0])
    return np.array(out)
