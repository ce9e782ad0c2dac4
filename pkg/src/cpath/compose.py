"""Scene assembly: traced path bundles placed under affine maps.

A scene is an ordered list of placements.  Each placement owns a bundle
of polylines traced in some source polytope, an invertible affine map,
and a stroke style.  Transformed coordinates are stored eagerly, so a
renderer never needs to know about maps; path images under invertible
affine maps are again central paths, which is what makes this kind of
collage legitimate in the first place.

Scenes are usually built from a JSON spec (see ``scene_from_spec``),
and a few ready-made specs ship in ``PRESETS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .geometry import AffineMap, LeafSpec, facet_objective, kgon, leaf_c_vectors
from .model import PathProblem, Polytope, problem_from_dict
from .sampler import PathPolyline, SamplerConfig, trace_path

__all__ = [
    "StyleRef",
    "Placement",
    "Scene",
    "place",
    "scene_bounds",
    "scene_from_spec",
    "scene_to_dict",
    "PRESETS",
    "preset_spec",
]

_JOINS = ("round", "miter")


@dataclass(frozen=True)
class StyleRef:
    """Stroke appearance for one placement."""

    stroke_width: float = 1.0
    color: Tuple[int, int, int] = (0, 0, 0)
    join: str = "round"

    def __post_init__(self):
        if not self.stroke_width > 0:
            raise ValueError("stroke_width must be positive")
        if self.join not in _JOINS:
            raise ValueError(f"join must be one of {_JOINS}")
        color = tuple(int(v) for v in self.color)
        if len(color) != 3 or any(not 0 <= v <= 255 for v in color):
            raise ValueError("color must be an RGB triple in 0..255")
        object.__setattr__(self, "color", color)


@dataclass(frozen=True)
class Placement:
    """One bundle of paths dropped into the scene.

    ``polylines`` hold the transformed coordinates; ``source`` keeps the
    original traces so the equivariance of the construction can be
    audited after the fact.  ``labels`` carry one human-readable tag per
    polyline (the objective vector, by default).
    """

    source: Tuple[PathPolyline, ...]
    map: AffineMap
    style: StyleRef
    polylines: Tuple[np.ndarray, ...] = field(repr=False)
    labels: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Scene:
    placements: Tuple[Placement, ...]

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))

    @property
    def bounds(self) -> np.ndarray:
        return scene_bounds(self)


def place(bundle: Iterable[PathPolyline], map: AffineMap,
          style: StyleRef = StyleRef()) -> Placement:
    """Transform a bundle of traced paths into scene coordinates."""
    source = tuple(bundle)
    if not source:
        raise ValueError("a placement needs at least one polyline")
    polylines = tuple(map.apply(line.points()) for line in source)
    labels = tuple(_label(line.problem.c) for line in source)
    return Placement(source=source, map=map, style=style,
                     polylines=polylines, labels=labels)


def _label(c: np.ndarray) -> str:
    return "c = [" + ", ".join(f"{v:.6g}" for v in c) + "]"


def scene_bounds(scene: Scene) -> np.ndarray:
    """Tight bounds over all placements, padded by half stroke widths.

    Returns ``[[xmin, ymin], [xmax, ymax]]``.  Raises on empty scenes.
    """
    if not scene.placements:
        raise ValueError("cannot bound an empty scene")
    lows, highs = [], []
    for p in scene.placements:
        pts = np.vstack(p.polylines)
        pad = p.style.stroke_width / 2.0
        lows.append(pts.min(axis=0) - pad)
        highs.append(pts.max(axis=0) + pad)
    return np.array([np.min(lows, axis=0), np.max(highs, axis=0)])


def _polytope_from_entry(entry: dict) -> Polytope:
    if "preset" in entry:
        tag = entry["preset"]
        if not isinstance(tag, str) or not tag.startswith("kgon:"):
            raise ValueError(f"unknown polytope preset {tag!r}")
        return kgon(int(tag.split(":", 1)[1]))
    if "problem" in entry:
        data = dict(entry["problem"])
        data.setdefault("c", [0.0] * len(data.get("A", [[]])[0]))
        return problem_from_dict(data).polytope
    raise ValueError("placement needs a 'preset' or 'problem' key")


def _objectives(poly: Polytope, c_spec: dict) -> list[np.ndarray]:
    """Expand a c_spec into explicit objective vectors.

    Three forms: {"vectors": [...]}, {"facets": {"indices": [...],
    "thetas": [...]}} building facet normals rotated in-plane, and
    {"leaves": {...LeafSpec fields...}} for the stochastic bundles.
    """
    if "vectors" in c_spec:
        out = [np.asarray(v, dtype=float) for v in c_spec["vectors"]]
        if not out:
            raise ValueError("c_spec.vectors is empty")
        return out
    if "facets" in c_spec:
        params = c_spec["facets"]
        indices = params.get("indices") or list(range(1, poly.m + 1))
        thetas = params.get("thetas", [0.0])
        if isinstance(thetas, (int, float)):
            thetas = [thetas]
        return [facet_objective(poly, int(i), float(t))
                for i in indices for t in thetas]
    if "leaves" in c_spec:
        spec = LeafSpec(**c_spec["leaves"])
        if spec.k != poly.m:
            raise ValueError("leaf spec k must match the polygon facet count")
        return [c for leaf in leaf_c_vectors(spec) for c in leaf]
    raise ValueError("c_spec needs 'vectors', 'facets', or 'leaves'")


def _map_from(entry: Optional[dict]) -> AffineMap:
    if not entry:
        return AffineMap(np.eye(2), np.zeros(2))
    return AffineMap(np.asarray(entry.get("B", np.eye(2)), dtype=float),
                     np.asarray(entry.get("d", np.zeros(2)), dtype=float))


def _style_from(entry: Optional[dict]) -> StyleRef:
    if not entry:
        return StyleRef()
    return StyleRef(stroke_width=entry.get("stroke_width", 1.0),
                    color=tuple(entry.get("color", (0, 0, 0))),
                    join=entry.get("join", "round"))


def scene_from_spec(spec: dict,
                    sampler: Optional[SamplerConfig] = None) -> Scene:
    """Build a scene from its JSON description.

    The spec holds a "placements" list and an optional "sampler"
    section with SamplerConfig fields; an explicit ``sampler`` argument
    wins over the section.
    """
    entries = spec.get("placements")
    if not entries:
        raise ValueError("scene spec needs a nonempty 'placements' list")
    if sampler is None:
        sampler = SamplerConfig(**spec.get("sampler", {}))

    placements = []
    for entry in entries:
        poly = _polytope_from_entry(entry)
        c_spec = entry.get("c_spec")
        if c_spec is None and "c" in entry.get("problem", {}):
            c_spec = {"vectors": [entry["problem"]["c"]]}
        bundle = [trace_path(PathProblem(poly, c), sampler)
                  for c in _objectives(poly, c_spec or {})]
        placements.append(place(bundle, _map_from(entry.get("map")),
                                _style_from(entry.get("style"))))
    return Scene(tuple(placements))


def scene_to_dict(scene: Scene) -> dict:
    """Serialize transformed geometry; deterministic key order."""
    return {
        "bounds": scene.bounds.tolist(),
        "placements": [
            {
                "style": {
                    "stroke_width": p.style.stroke_width,
                    "color": list(p.style.color),
                    "join": p.style.join,
                },
                "labels": list(p.labels),
                "polylines": [line.tolist() for line in p.polylines],
            }
            for p in scene.placements
        ],
    }


def _star_spec() -> dict:
    """Six scaled 3-gon bundles swung around a hexagon.

    Each bundle is the twelve objectives i in {1,2,3} x theta in
    {+-0.009, +-0.18}; the maps compose scale 1/3 and shift (-2, 0)
    with a rotation by i*pi/6 turns.
    """
    thetas = [0.009, -0.009, 0.18, -0.18]
    scale = np.diag([1 / 3, 1 / 3])
    shift = np.array([-2.0, 0.0])
    placements = []
    for i in range(6):
        a = i * math.pi / 3.0
        rot = np.array([[math.cos(a), math.sin(a)],
                        [-math.sin(a), math.cos(a)]])
        placements.append({
            "preset": "kgon:3",
            "c_spec": {"facets": {"indices": [1, 2, 3], "thetas": thetas}},
            "map": {"B": (rot @ scale).tolist(), "d": (rot @ shift).tolist()},
            "style": {"stroke_width": 0.1},
        })
    return {"placements": placements,
            "sampler": {"mu_max": 1e6, "mu_min": 1e-6}}


def _pythagorean_spec() -> dict:
    """Two cascaded squares, tangent exactly at shared path endpoints.

    Both bundles aim at the corner (1, 1) of the unit square; any
    objective inside that corner's normal cone ends there, so the
    half-size copy shifted to span [1,2]^2 meets the big square in the
    single point where all paths terminate.
    """
    base = np.array([1.0, 1.0]) / math.sqrt(2.0)
    vectors = []
    for t in (0.009, -0.009, 0.18, -0.18):
        rot = np.array([[math.cos(t), math.sin(t)],
                        [-math.sin(t), math.cos(t)]])
        vectors.append((rot @ base).tolist())
    return {
        "placements": [
            {"preset": "kgon:4",
             "c_spec": {"vectors": vectors},
             "style": {"stroke_width": 0.08}},
            {"preset": "kgon:4",
             "c_spec": {"vectors": [[-v[0], -v[1]] for v in vectors]},
             "map": {"B": [[0.5, 0.0], [0.0, 0.5]], "d": [1.5, 1.5]},
             "style": {"stroke_width": 0.08}},
        ],
        "sampler": {"mu_max": 1e6, "mu_min": 1e-8},
    }


def _clock12_spec() -> dict:
    """Leaf bundles in a 12-gon, four interior paths per leaf."""
    return {
        "placements": [
            {"preset": "kgon:12",
             "c_spec": {"leaves": {"k": 12, "seed": 12,
                                   "paths_per_leaf": [4, 4]}},
             "style": {"stroke_width": 0.06}},
        ],
        "sampler": {"mu_max": 1e6, "mu_min": 1e-6},
    }


PRESETS = {
    "star": _star_spec,
    "pythagorean": _pythagorean_spec,
    "clock12": _clock12_spec,
}


def preset_spec(name: str) -> dict:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; choose from {sorted(PRESETS)}"
        ) from None
