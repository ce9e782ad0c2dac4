"""End-to-end acceptance checks, one test per shipped guarantee.

Each test funnels its verdict through the ``criterion`` fixture, which
prints a single pass/fail line in the terminal summary.  Tolerances are
part of the contract and are asserted exactly as stated; oracles come
from conftest (vertex enumeration, scalar quadratics) or from closed
forms derived independently of the code under test.
"""

import math
import time

import numpy as np

from conftest import lp_max
from cpath.cli import _scene_mesh
from cpath.compose import preset_spec, scene_from_spec
from cpath.geometry import (
    AffineMap,
    cube_cylinder_path,
    cylinder_rotation,
    disc_path,
    kgon,
    transform_problem,
)
from cpath.mesh import TriMesh, emit_stl, tube
from cpath.model import PathProblem, Polytope, validate_problem
from cpath.sampler import SamplerConfig, estimate_endpoints, trace_path
from cpath.solids import enumerate_facets, platonic
from cpath.solver import center
from cpath.svg import emit_svg

# the square |x_i| <= 1, rows ordered (+x, -x, +y, -y)
SQUARE_A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
SQUARE_B = np.ones(4)

MU_GRID = (1e-6, 1e-3, 1.0, 1e3, 1e6)


def _unit(rng, n=2):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def test_kkt_certification(criterion):
    rng = np.random.default_rng(101)
    start = time.monotonic()
    worst_res, worst_iters = 0.0, 0
    for _ in range(50):
        k = int(rng.integers(3, 13))
        problem = PathProblem(kgon(k), _unit(rng))
        for mu in MU_GRID:
            pt = center(problem, mu)
            worst_res = max(worst_res, pt.residual)
            worst_iters = max(worst_iters, pt.iterations)
    elapsed = time.monotonic() - start
    criterion(
        "KKT certification (50 problems x 5 mu)",
        worst_res < 1e-9 and worst_iters <= 50 and elapsed < 5.0,
        f"max residual {worst_res:.2e}, max iters {worst_iters}, "
        f"{elapsed:.2f}s",
    )


def test_closed_form_square(criterion):
    problem = PathProblem(Polytope(SQUARE_A, SQUARE_B), np.array([1.0, 0.0]))
    x1 = center(problem, 1.0).x[0]
    err_mid = abs(x1 - (math.sqrt(2.0) - 1.0))
    norm_far = float(np.linalg.norm(center(problem, 1e8).x))
    criterion(
        "closed-form square check",
        err_mid < 1e-8 and norm_far <= 1e-7,
        f"|x1 - (sqrt 2 - 1)| = {err_mid:.2e}, |x(1e8)| = {norm_far:.2e}",
    )


def test_endpoint_lp_agreement(criterion):
    rng = np.random.default_rng(7)
    worst_gap, worst_center = 0.0, 0.0
    all_partitions_ok = True
    for _ in range(50):
        k = int(rng.integers(3, 13))
        poly = kgon(k)
        problem = PathProblem(poly, _unit(rng))
        x_c, x_star, partition = estimate_endpoints(problem)
        gap = abs(problem.c @ x_star - lp_max(poly.A, poly.b, problem.c))
        worst_gap = max(worst_gap, gap)
        worst_center = max(worst_center, float(np.linalg.norm(x_c)))
        all_partitions_ok &= partition.covers(poly.m) and partition.separates()
    criterion(
        "endpoint/LP agreement (50 instances)",
        worst_gap < 1e-6 and worst_center < 1e-6 and all_partitions_ok,
        f"max LP gap {worst_gap:.2e}, max |x_c| {worst_center:.2e}, "
        f"partitions {'clean' if all_partitions_ok else 'broken'}",
    )


def test_affine_equivariance(criterion):
    rng = np.random.default_rng(23)
    problem = PathProblem(kgon(7), _unit(rng))
    mus = np.geomspace(1e-3, 1e3, 7)
    worst = 0.0
    done = 0
    while done < 25:
        B = rng.uniform(-2.0, 2.0, (2, 2))
        if np.linalg.cond(B) >= 1e3:
            continue
        t = AffineMap(B, rng.uniform(-3.0, 3.0, 2))
        image = transform_problem(problem, t)
        for mu in mus:
            mapped = t.apply(center(problem, mu).x)
            direct = center(image, mu).x
            worst = max(worst, float(np.linalg.norm(mapped - direct)))
        done += 1
    criterion(
        "affine equivariance (25 random maps)",
        worst < 1e-6,
        f"max |T(x(mu)) - x_hat(mu)| = {worst:.2e}",
    )


def test_cylinder_closed_form_vs_solver(criterion):
    rng = np.random.default_rng(77)
    worst = 0.0
    done = 0
    while done < 10:
        c = rng.normal(size=3)
        if math.hypot(c[1], c[2]) < 0.1:
            continue
        b = rng.uniform(0.5, 2.0, 2)
        R = cylinder_rotation(c)
        t = R @ c
        box = Polytope(SQUARE_A, np.array([b[0], b[0], b[1], b[1]]))
        box_problem = PathProblem(box, t[:2])
        for mu in (0.1, 1.0, 10.0):
            z = center(box_problem, mu).x
            solved = R.T @ np.array([z[0], z[1], 0.0])
            closed = cube_cylinder_path(c, b, mu)
            worst = max(worst, float(np.linalg.norm(solved - closed)))
        done += 1
    criterion(
        "box-path rotation vs cylinder closed form",
        worst < 1e-8,
        f"max deviation {worst:.2e} over 10 c's x mu in {{0.1, 1, 10}}",
    )


def test_redundant_row_sensitivity(criterion):
    c = np.array([1.0, 2.0])
    plain = PathProblem(Polytope(SQUARE_A, SQUARE_B), c)
    extra = PathProblem(
        Polytope(np.vstack([SQUARE_A, [0.5, 0.5]]), np.ones(5)), c)
    gap = max(
        float(np.linalg.norm(center(plain, mu).x - center(extra, mu).x))
        for mu in np.geomspace(1e-3, 1e3, 25)
    )
    criterion(
        "redundant-row sensitivity",
        gap > 0.01,
        f"max path separation {gap:.4f} (> 0.01 required)",
    )


def _equal_arc_bins(points: np.ndarray, n_bins: int = 50):
    """Per-bin sample count and turning density over equal-arc bins."""
    seg = np.diff(points, axis=0)
    seg_len = np.linalg.norm(seg, axis=1)
    arc = np.concatenate([[0.0], np.cumsum(seg_len)])
    total = arc[-1]
    edges = np.linspace(0.0, total, n_bins + 1)
    which = np.clip(np.searchsorted(edges, arc, side="right") - 1,
                    0, n_bins - 1)
    counts = np.bincount(which, minlength=n_bins)

    # turning angle charged to the bin of each interior sample
    u = seg / np.maximum(seg_len, 1e-300)[:, None]
    cosang = np.clip(np.einsum("ij,ij->i", u[:-1], u[1:]), -1.0, 1.0)
    turning = np.bincount(which[1:-1], weights=np.arccos(cosang),
                          minlength=n_bins)
    curvature = turning / (total / n_bins)
    return counts, curvature


def test_sampling_character(criterion):
    problem = PathProblem(Polytope(SQUARE_A, SQUARE_B), np.array([1.0, 2.0]))

    mid_counts = []
    for c in ([1.0, 2.0], [2.0, 1.0]):
        line = trace_path(
            PathProblem(Polytope(SQUARE_A, SQUARE_B), np.array(c)),
            SamplerConfig(rule="midpoint", delta=0.08,
                          mu_max=1e4, mu_min=1e-8))
        mid_counts.append(len(line.samples))
    mid_ok = all(15 <= n <= 40 for n in mid_counts)

    curv = trace_path(problem, SamplerConfig(
        rule="curvature", delta=0.5, mu_max=1e4, mu_min=1e-8,
        min_segment=1e-4, max_points=30000))
    n_curv = len(curv.samples)
    counts, curvature = _equal_arc_bins(curv.points())
    order = np.argsort(curvature)
    quarter = len(order) // 4
    low_density = counts[order[:quarter]].mean()
    high_density = counts[order[-quarter:]].mean()
    curv_ok = n_curv > 1000 and high_density > low_density

    criterion(
        "adaptive sampling character",
        mid_ok and curv_ok,
        f"midpoint points {mid_counts} (need 15..40); curvature points "
        f"{n_curv} (> 1000), density {high_density:.1f}/bin on the "
        f"top-curvature quartile vs {low_density:.1f}/bin on the bottom",
    )


def test_disc_closed_form(criterion):
    rng = np.random.default_rng(13)
    worst_res, worst_cross = 0.0, 0.0
    for _ in range(20):
        c = _unit(rng) * rng.uniform(0.5, 2.0)
        mu = 10.0 ** rng.uniform(-3, 3)
        x = disc_path(c, mu)
        slack = 1.0 - float(x @ x)
        res = float(np.linalg.norm(2.0 * mu / slack * x - c))
        cross = abs(x[0] * c[1] - x[1] * c[0])
        worst_res = max(worst_res, res)
        worst_cross = max(worst_cross, cross)
    criterion(
        "disc closed form stationarity",
        worst_res < 1e-10 and worst_cross < 1e-12,
        f"max residual {worst_res:.2e}, max cross {worst_cross:.2e}",
    )


def test_platonic_facets(criterion):
    expected = {"tetrahedron": 4, "cube": 6, "octahedron": 8,
                "dodecahedron": 12, "icosahedron": 20}
    start = time.monotonic()
    ok = True
    detail = []
    for name, want in expected.items():
        solid = platonic(name)
        fs = enumerate_facets(solid)
        euler = fs.euler_characteristic(len(solid.vertices))
        valid = validate_problem(fs.to_polytope()).ok
        ok &= len(fs) == want and euler == 2 and valid
        detail.append(f"{name}:{len(fs)}")
    elapsed = time.monotonic() - start
    ok &= elapsed < 2.0
    criterion(
        "platonic facet enumeration",
        ok,
        f"{', '.join(detail)}; Euler/validation clean; {elapsed:.2f}s",
    )


def test_mesh_stl(criterion):
    t = np.linspace(0.0, 4.0 * math.pi, 100)
    helix = np.stack([np.cos(t), np.sin(t), 0.15 * t], axis=1)
    segments = 12
    mesh = tube(helix, radius=0.2, segments=segments)
    count_ok = len(mesh.triangles) == 2 * segments * 99 + 2 * segments
    single = emit_stl(TriMesh(np.eye(3), [[0, 1, 2]]))
    criterion(
        "mesh and STL output",
        mesh.is_watertight() and mesh.signed_volume() > 0
        and count_ok and len(single) == 134,
        f"watertight, volume {mesh.signed_volume():.3f} > 0, "
        f"{len(mesh.triangles)} triangles, 1-triangle STL {len(single)} B",
    )


def test_determinism(criterion):
    spec = preset_spec("clock12")
    svg_a = emit_svg(scene_from_spec(spec), titles=True)
    svg_b = emit_svg(scene_from_spec(preset_spec("clock12")), titles=True)
    stl_a = emit_stl(_scene_mesh(scene_from_spec(spec), "tube",
                                 radius=0.03, height=1.5, width=1.2,
                                 segments=8))
    stl_b = emit_stl(_scene_mesh(scene_from_spec(preset_spec("clock12")),
                                 "tube", radius=0.03, height=1.5, width=1.2,
                                 segments=8))
    criterion(
        "deterministic SVG and STL",
        svg_a == svg_b and stl_a == stl_b,
        f"svg {len(svg_a)} B, stl {len(stl_a)} B, byte-identical reruns",
    )
