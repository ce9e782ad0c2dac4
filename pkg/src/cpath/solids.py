"""Facet enumeration for convex solids given by vertex coordinates.

The path machinery wants inequality descriptions, but the natural way to
write down a Platonic solid is its vertex list.  ``enumerate_facets``
bridges the two: a brute-force search over vertex triples finds every
supporting plane, deduplicates them, and reports unit outward normals
with offsets, ready to become a :class:`~cpath.model.Polytope`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

import numpy as np

from .model import DimensionError, Polytope

__all__ = [
    "VertexSolid",
    "FacetSystem",
    "ConvexityError",
    "platonic",
    "enumerate_facets",
    "solid_from_dict",
    "facets_to_dict",
]

# support-plane membership tolerance, for circumradius-one coordinates
COPLANAR_TOL = 1e-9
# normals are deduplicated on a grid of this pitch
DEDUP_GRID = 1e-7

_PHI = (1.0 + math.sqrt(5.0)) / 2.0


class ConvexityError(ValueError):
    """A vertex is not an extreme point of its own hull."""


@dataclass(frozen=True)
class VertexSolid:
    """A solid described by its vertices.

    Vertices must span three dimensions and all of them must be corners
    of the convex hull; both conditions are checked by
    :func:`enumerate_facets`, not here, so cheap construction from JSON
    stays cheap.
    """

    vertices: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise DimensionError("vertices must be an (n, 3) array")
        if v.shape[0] < 4:
            raise DimensionError("a solid needs at least 4 vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


@dataclass(frozen=True)
class FacetSystem:
    """Inequality description recovered from a vertex solid.

    ``normals[i] @ x <= offsets[i]`` holds for every vertex, with
    equality exactly on ``incident_vertices[i]``.
    """

    normals: np.ndarray
    offsets: np.ndarray
    incident_vertices: Tuple[FrozenSet[int], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.offsets)

    def edge_pairs(self) -> set:
        """Vertex pairs that share at least two facets (the edges)."""
        pairs = set()
        for a, b in itertools.combinations(self.incident_vertices, 2):
            for pair in itertools.combinations(sorted(a & b), 2):
                pairs.add(pair)
        return pairs

    def euler_characteristic(self, n_vertices: int) -> int:
        return n_vertices - len(self.edge_pairs()) + len(self)

    def to_polytope(self) -> Polytope:
        return Polytope(self.normals, self.offsets)


def _tetrahedron() -> np.ndarray:
    return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
                    dtype=float)


def _cube() -> np.ndarray:
    return np.array(list(itertools.product((-1.0, 1.0), repeat=3)))


def _octahedron() -> np.ndarray:
    return np.vstack([np.eye(3), -np.eye(3)])


def _icosahedron() -> np.ndarray:
    rows = []
    for a, b in itertools.product((-1.0, 1.0), (-_PHI, _PHI)):
        rows += [(0, a, b), (a, b, 0), (b, 0, a)]
    return np.array(rows)


def _dodecahedron() -> np.ndarray:
    rows = list(itertools.product((-1.0, 1.0), repeat=3))
    for a, b in itertools.product((-1 / _PHI, 1 / _PHI), (-_PHI, _PHI)):
        rows += [(0, a, b), (a, b, 0), (b, 0, a)]
    return np.array(rows)


_SOLIDS = {
    "tetrahedron": _tetrahedron,
    "cube": _cube,
    "octahedron": _octahedron,
    "dodecahedron": _dodecahedron,
    "icosahedron": _icosahedron,
}


def platonic(name: str) -> VertexSolid:
    """Return a Platonic solid, centered with circumradius one.

    ``name`` is one of tetrahedron, cube, octahedron, dodecahedron,
    icosahedron.
    """
    try:
        raw = _SOLIDS[name]()
    except KeyError:
        raise ValueError(
            f"unknown solid {name!r}; choose from {sorted(_SOLIDS)}"
        ) from None
    raw = raw - raw.mean(axis=0)
    raw /= np.linalg.norm(raw, axis=1).max()
    return VertexSolid(raw, name=name)


def enumerate_facets(solid: VertexSolid) -> FacetSystem:
    """Find all facets of the convex hull of ``solid.vertices``.

    Every vertex triple seeds a candidate plane; the plane survives if
    all vertices lie on one side of it.  Surviving planes are oriented
    outward, deduplicated on a rounded-normal key, and returned with
    their incident vertex sets.

    Raises :class:`~cpath.model.DimensionError` for flat vertex clouds
    and :class:`ConvexityError` when some vertex is not a corner of the
    hull.
    """
    v = solid.vertices
    n_vertices = len(v)
    centered = v - solid.centroid
    if np.linalg.matrix_rank(centered, tol=1e-9) < 3:
        raise DimensionError("vertices are coplanar; no 3D facets exist")

    scale = float(np.abs(v).max())
    tol = COPLANAR_TOL * max(1.0, scale)

    facets = {}
    for i, j, k in itertools.combinations(range(n_vertices), 3):
        normal = np.cross(v[j] - v[i], v[k] - v[i])
        length = np.linalg.norm(normal)
        if length < tol:
            continue  # collinear triple
        normal = normal / length
        offset = float(normal @ v[i])
        side = v @ normal - offset
        if np.all(side <= tol):
            pass
        elif np.all(side >= -tol):
            normal, offset, side = -normal, -offset, -side
        else:
            continue  # not a supporting plane
        key = tuple(np.round(normal / DEDUP_GRID).astype(np.int64))
        if key not in facets:
            incident = frozenset(
                int(i) for i in np.flatnonzero(np.abs(side) <= tol))
            facets[key] = (normal, offset, incident)

    normals = np.array([f[0] for f in facets.values()])
    offsets = np.array([f[1] for f in facets.values()])
    incident = tuple(f[2] for f in facets.values())

    # every vertex of a bona fide solid is a corner: it must lie on at
    # least three facets whose normals span all of space
    for idx in range(n_vertices):
        rows = normals[[idx in inc for inc in incident]]
        if len(rows) < 3 or np.linalg.matrix_rank(rows, tol=1e-9) < 3:
            raise ConvexityError(
                f"vertex {idx} at {v[idx]} is not an extreme point"
            )

    return FacetSystem(normals=normals, offsets=offsets,
                       incident_vertices=incident)


def solid_from_dict(data: dict) -> VertexSolid:
    """Build a solid from ``{"vertices": [[x, y, z], ...]}``."""
    try:
        vertices = data["vertices"]
    except (KeyError, TypeError):
        raise ValueError("solid JSON needs a 'vertices' key") from None
    return VertexSolid(np.asarray(vertices, dtype=float),
                       name=data.get("name"))


def facets_to_dict(system: FacetSystem) -> dict:
    return {
        "normals": system.normals.tolist(),
        "offsets": system.offsets.tolist(),
        "incident_vertices": [sorted(s) for s in system.incident_vertices],
    }
