"""Command-line entry point and the HTTP backend for the studio.

Subcommands: trace, scene, mesh, leaves, solids, serve.  Exit code 0 on
success, 1 for usage problems, 2 when the numerics fail.  Every flag
falls back to an environment variable with the ``CPATH_`` prefix, so
``CPATH_RULE=curvature cpath trace ...`` and ``--rule curvature`` mean
the same thing, with the flag winning.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .compose import scene_from_spec
from .geometry import LeafSpec, leaf_c_vectors
from .mesh import EmptyMeshError, TriMesh, emit_stl, extrude_flat, tube
from .model import load_problem, validate_problem
from .sampler import (
    DegenerateSegmentError,
    RefinementOverflowError,
    SamplerConfig,
    polyline_to_dict,
    trace_path,
)
from .solids import enumerate_facets, facets_to_dict, platonic
from .solver import ConvergenceError, SingularSystemError
from .svg import emit_svg

__all__ = ["main", "run"]

NUMERIC_FAILURES = (
    ConvergenceError,
    SingularSystemError,
    RefinementOverflowError,
    DegenerateSegmentError,
    np.linalg.LinAlgError,
    FloatingPointError,
)


class _Parser(argparse.ArgumentParser):
    # the contract reserves exit code 2 for numeric failure; argparse
    # uses it for usage errors, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _env(name: str, default=None):
    return os.environ.get(f"CPATH_{name.upper().replace('-', '_')}", default)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cpath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("trace", help="sample one central path")
    tr.add_argument("--problem", required=True, help="problem JSON file")
    tr.add_argument("--rule", choices=("midpoint", "curvature"),
                    default=_env("rule", "midpoint"))
    tr.add_argument("--delta", type=float, default=_env("delta"))
    tr.add_argument("--mu-min", type=float, default=_env("mu-min", 1e-8))
    tr.add_argument("--mu-max", type=float, default=_env("mu-max", 1e8))
    tr.add_argument("--min-segment", type=float, default=_env("min-segment"),
                    help="chord floor; the curvature rule needs it coarse "
                         "enough to terminate near vertices")
    tr.add_argument("--max-points", type=int, default=_env("max-points"))
    tr.add_argument("-o", "--output", required=True)

    sc = sub.add_parser("scene", help="compose a scene spec and render SVG")
    sc.add_argument("--spec", required=True, help="scene JSON file")
    sc.add_argument("--titles", action="store_true",
                    help="attach objective-vector tooltips")
    sc.add_argument("--width-mm", type=float, default=_env("width-mm"),
                    help="page width; default is 1 mm per scene unit")
    sc.add_argument("-o", "--output", required=True)

    me = sub.add_parser("mesh", help="sweep or extrude a scene into STL")
    me.add_argument("--spec", required=True, help="scene JSON file")
    me.add_argument("--mode", choices=("tube", "flat"),
                    default=_env("mode", "tube"))
    me.add_argument("--radius", type=float, default=_env("radius", 0.6))
    me.add_argument("--height", type=float, default=_env("height", 1.5))
    me.add_argument("--width", type=float, default=_env("width", 1.2))
    me.add_argument("--segments", type=int, default=_env("segments", 16))
    me.add_argument("--format", choices=("binary", "ascii"),
                    default=_env("format", "binary"))
    me.add_argument("-o", "--output", required=True)

    lv = sub.add_parser("leaves", help="draw stochastic leaf objectives")
    lv.add_argument("--k", type=int, required=True)
    lv.add_argument("--eta", type=float, default=_env("eta", 0.0425))
    lv.add_argument("--sigma", type=float, default=_env("sigma"))
    lv.add_argument("--seed", type=int, default=_env("seed", 0))
    lv.add_argument("-o", "--output", required=True)

    so = sub.add_parser("solids", help="enumerate facets of a named solid")
    so.add_argument("--name", required=True)
    so.add_argument("-o", "--output", required=True)

    sv = sub.add_parser("serve", help="HTTP API for the studio")
    sv.add_argument("--port", type=int, default=_env("port", 8400))
    sv.add_argument("--host", default=_env("host", "127.0.0.1"))
    sv.add_argument("--static", default=_env("static"),
                    help="also serve files from this directory")
    return parser


def _sampler_from_args(args) -> SamplerConfig:
    kw = {"rule": args.rule,
          "mu_min": float(args.mu_min), "mu_max": float(args.mu_max)}
    if args.delta is not None:
        kw["delta"] = float(args.delta)
    if args.min_segment is not None:
        kw["min_segment"] = float(args.min_segment)
    if args.max_points is not None:
        kw["max_points"] = int(args.max_points)
    return SamplerConfig(**kw)


def _write(path: str, payload) -> None:
    mode = "wb" if isinstance(payload, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(payload)


def _cmd_trace(args) -> int:
    problem = load_problem(args.problem)
    report = validate_problem(problem)
    if not report.ok:
        raise ValueError("; ".join(report.failures))
    line = trace_path(problem, _sampler_from_args(args))
    _write(args.output, json.dumps(polyline_to_dict(line)) + "\n")
    return 0


def _load_spec(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _cmd_scene(args) -> int:
    scene = scene_from_spec(_load_spec(args.spec))
    width = None if args.width_mm is None else float(args.width_mm)
    _write(args.output, emit_svg(scene, width_mm=width, titles=args.titles))
    return 0


def _scene_mesh(scene, mode: str, radius: float, height: float,
                width: float, segments: int) -> TriMesh:
    if mode == "flat":
        return extrude_flat(scene, height=height, width=width)
    parts = [tube(line, radius=radius, segments=segments)
             for p in scene.placements for line in p.polylines]
    if not parts:
        raise EmptyMeshError("scene has no paths to sweep")
    offsets = np.cumsum([0] + [len(m.vertices) for m in parts[:-1]])
    return TriMesh(
        np.vstack([m.vertices for m in parts]),
        np.vstack([m.triangles + off for m, off in zip(parts, offsets)]),
    )


def _cmd_mesh(args) -> int:
    scene = scene_from_spec(_load_spec(args.spec))
    mesh = _scene_mesh(scene, args.mode, float(args.radius),
                       float(args.height), float(args.width),
                       int(args.segments))
    _write(args.output, emit_stl(mesh, format=args.format))
    return 0


def _leaves_payload(spec: LeafSpec) -> dict:
    leaves = leaf_c_vectors(spec)
    return {
        "k": spec.k,
        "eta": spec.eta,
        "sigma": spec.resolved_sigma,
        "seed": spec.seed,
        "leaves": [[c.tolist() for c in leaf] for leaf in leaves],
    }


def _cmd_leaves(args) -> int:
    spec = LeafSpec(k=args.k, eta=float(args.eta),
                    sigma=None if args.sigma is None else float(args.sigma),
                    seed=int(args.seed))
    _write(args.output, json.dumps(_leaves_payload(spec)) + "\n")
    return 0


def _cmd_solids(args) -> int:
    solid = platonic(args.name)
    system = enumerate_facets(solid)
    payload = facets_to_dict(system)
    payload.update({
        "name": solid.name,
        "A": system.normals.tolist(),
        "b": system.offsets.tolist(),
        "vertices": solid.vertices.tolist(),
    })
    _write(args.output, json.dumps(payload) + "\n")
    return 0


def _cmd_serve(args) -> int:
    from .server import serve  # deferred: keeps plain CLI import light

    serve(host=args.host, port=int(args.port), static_dir=args.static)
    return 0


_COMMANDS = {
    "trace": _cmd_trace,
    "scene": _cmd_scene,
    "mesh": _cmd_mesh,
    "leaves": _cmd_leaves,
    "solids": _cmd_solids,
    "serve": _cmd_serve,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NUMERIC_FAILURES as exc:
        print(f"cpath: numeric failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"cpath: error: {exc}", file=sys.stderr)
        return 1


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
