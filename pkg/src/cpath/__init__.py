"""Central-path geometry toolkit.

Traces the central paths of linear programs over polytopes, composes
the traced curves into 2D scenes and 3D meshes, and serializes the
results (JSON, SVG, STL) for plotting, cutting, and printing.
"""

from .compose import PRESETS, Placement, Scene, StyleRef, place, preset_spec, scene_bounds, scene_from_spec, scene_to_dict
from .geometry import (
    AffineMap,
    LeafSpec,
    cube_cylinder_path,
    cylinder_rotation,
    disc_path,
    facet_objective,
    kgon,
    leaf_c_vectors,
    rotation,
    transform_problem,
)
from .mesh import TriMesh, emit_stl, extrude_flat, read_stl, tube
from .model import (
    CenteredPoint,
    ComplementarityPartition,
    DimensionError,
    PathProblem,
    Polytope,
    ValidationReport,
    barrier_objective,
    load_problem,
    problem_from_dict,
    problem_to_dict,
    strictly_feasible_point,
    validate_problem,
)
from .sampler import (
    PathPolyline,
    SamplerConfig,
    estimate_endpoints,
    pair_deviation,
    polyline_to_dict,
    proximity_measure,
    trace_path,
)
from .solids import FacetSystem, VertexSolid, enumerate_facets, platonic
from .solver import (
    ConvergenceError,
    SingularSystemError,
    SolverConfig,
    center,
    kkt_residual,
    newton_step,
)
from .svg import emit_svg

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CenteredPoint",
    "ComplementarityPartition",
    "ConvergenceError",
    "DimensionError",
    "FacetSystem",
    "LeafSpec",
    "PRESETS",
    "PathPolyline",
    "PathProblem",
    "Placement",
    "Polytope",
    "SamplerConfig",
    "Scene",
    "SingularSystemError",
    "SolverConfig",
    "StyleRef",
    "TriMesh",
    "ValidationReport",
    "VertexSolid",
    "barrier_objective",
    "center",
    "cube_cylinder_path",
    "cylinder_rotation",
    "disc_path",
    "emit_stl",
    "emit_svg",
    "enumerate_facets",
    "estimate_endpoints",
    "extrude_flat",
    "facet_objective",
    "kgon",
    "kkt_residual",
    "leaf_c_vectors",
    "load_problem",
    "newton_step",
    "pair_deviation",
    "place",
    "platonic",
    "polyline_to_dict",
    "preset_spec",
    "problem_from_dict",
    "problem_to_dict",
    "proximity_measure",
    "read_stl",
    "rotation",
    "scene_bounds",
    "scene_from_spec",
    "scene_to_dict",
    "strictly_feasible_point",
    "trace_path",
    "transform_problem",
    "tube",
    "validate_problem",
]
