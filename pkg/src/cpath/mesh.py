"""Triangle meshes: swept tubes, flat extrusions, STL in and out.

Tubes sweep a circle along a polyline with a parallel-transport frame;
Frenet normals would vanish on straight runs, which the interesting
paths here have plenty of.  Flat extrusion thickens a 2D scene's
strokes, unions overlaps, and raises the result into a printable slab.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
import shapely
from shapely.geometry import LineString
from shapely.geometry.polygon import orient

__all__ = [
    "TriMesh",
    "DegenerateSegmentError",
    "EmptyMeshError",
    "SelfIntersectionWarning",
    "tube",
    "extrude_flat",
    "emit_stl",
    "read_stl",
]


class DegenerateSegmentError(ValueError):
    """Consecutive sweep points coincide; the frame has no direction."""


class EmptyMeshError(ValueError):
    """Nothing to mesh."""


class SelfIntersectionWarning(UserWarning):
    """Tube radius exceeds the path's clearance; walls will overlap."""


@dataclass(frozen=True)
class TriMesh:
    """Indexed triangles, counter-clockwise from outside."""

    vertices: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=np.float64))
        t = np.ascontiguousarray(np.asarray(self.triangles, dtype=np.int64))
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError("vertices must be (n, 3)")
        if t.ndim != 2 or t.shape[1] != 3:
            raise ValueError("triangles must be (m, 3)")
        if t.size and (t.min() < 0 or t.max() >= len(v)):
            raise ValueError("triangle index out of range")
        if t.size:
            a, b, c = (v[t[:, i]] for i in range(3))
            areas = 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)
            if np.any(areas <= 0.0):
                raise ValueError("mesh contains zero-area triangles")
        v.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)

    def normals(self) -> np.ndarray:
        a, b, c = (self.vertices[self.triangles[:, i]] for i in range(3))
        n = np.cross(b - a, c - a)
        return n / np.linalg.norm(n, axis=1)[:, None]

    def edge_counts(self) -> dict:
        counts: dict = {}
        for tri in self.triangles:
            for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (min(e), max(e))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def is_watertight(self) -> bool:
        return all(c == 2 for c in self.edge_counts().values())

    def signed_volume(self) -> float:
        a, b, c = (self.vertices[self.triangles[:, i]] for i in range(3))
        return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)


def _as_3d(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] not in (2, 3):
        raise ValueError("polyline must be (n, 2) or (n, 3)")
    if pts.shape[1] == 2:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    return pts


def _transport_frames(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Normal and binormal per sample, twist-minimizing along the path."""
    segs = np.diff(points, axis=0)
    lengths = np.linalg.norm(segs, axis=1)
    if np.any(lengths < 1e-12):
        raise DegenerateSegmentError("consecutive sweep points coincide")
    seg_t = segs / lengths[:, None]

    # vertex tangents: average of the adjacent segment directions
    tangents = np.empty_like(points)
    tangents[0], tangents[-1] = seg_t[0], seg_t[-1]
    if len(points) > 2:
        mid = seg_t[:-1] + seg_t[1:]
        norms = np.linalg.norm(mid, axis=1)
        if np.any(norms < 1e-12):
            raise DegenerateSegmentError("path reverses onto itself")
        tangents[1:-1] = mid / norms[:, None]

    # seed normal: cross with the axis least aligned with the tangent
    seed = np.zeros(3)
    seed[np.argmin(np.abs(tangents[0]))] = 1.0
    n = np.cross(tangents[0], seed)
    n /= np.linalg.norm(n)

    normals = np.empty_like(points)
    normals[0] = n
    for i in range(1, len(points)):
        t_prev, t_next = tangents[i - 1], tangents[i]
        axis = np.cross(t_prev, t_next)
        sin = np.linalg.norm(axis)
        cos = float(np.clip(t_prev @ t_next, -1.0, 1.0))
        if sin > 1e-15:
            # rotate n about axis by the angle between the tangents
            k = axis / sin
            n = (n * cos + np.cross(k, n) * sin + k * (k @ n) * (1.0 - cos))
        # straight continuation keeps n as is
        n -= (n @ t_next) * t_next  # fight drift
        n /= np.linalg.norm(n)
        normals[i] = n
    binormals = np.cross(tangents, normals)
    return normals, binormals


def _clearance(points: np.ndarray, radius: float) -> float:
    """Smallest gap between samples far apart along the path.

    Pairs closer than 2*radius in arclength are the tube's own
    neighborhood and are ignored; what remains measures how close the
    path swings back past itself.
    """
    if len(points) < 4:
        return np.inf
    s = np.concatenate([[0.0], np.cumsum(
        np.linalg.norm(np.diff(points, axis=0), axis=1))])
    stride = max(1, len(points) // 1500)  # bound the n^2 check
    pts, s = points[::stride], s[::stride]
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    along = np.abs(s[:, None] - s[None, :])
    d[along <= 2.0 * radius] = np.inf
    return float(d.min())


def tube(polyline, radius: float, segments: int = 16,
         caps: bool = True) -> TriMesh:
    """Sweep a circle of ``radius`` along a polyline.

    Each sample gets a ring of ``segments`` vertices in its transported
    frame; consecutive rings are stitched with two triangles per
    segment, and ``caps`` adds an apex fan at both ends, closing the
    surface.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if segments < 3:
        raise ValueError("a ring needs at least 3 segments")
    points = _as_3d(polyline)
    if len(points) < 2:
        raise ValueError("a tube needs at least 2 points")
    if radius > _clearance(points, radius) / 2.0:
        warnings.warn("tube radius exceeds half the path clearance; "
                      "the surface will self-intersect",
                      SelfIntersectionWarning, stacklevel=2)

    normals, binormals = _transport_frames(points)
    phi = 2.0 * np.pi * np.arange(segments) / segments
    rings = (points[:, None, :]
             + radius * (np.cos(phi)[None, :, None] * normals[:, None, :]
                         + np.sin(phi)[None, :, None] * binormals[:, None, :]))
    vertices = rings.reshape(-1, 3)

    n_pts = len(points)
    tris = []
    for i in range(n_pts - 1):
        base, nxt = i * segments, (i + 1) * segments
        for j in range(segments):
            k = (j + 1) % segments
            tris.append((base + j, base + k, nxt + j))
            tris.append((nxt + j, base + k, nxt + k))
    if caps:
        start = len(vertices)
        vertices = np.vstack([vertices, points[0], points[-1]])
        last = (n_pts - 1) * segments
        for j in range(segments):
            k = (j + 1) % segments
            tris.append((start, k, j))
            tris.append((start + 1, last + j, last + k))
    return TriMesh(np.asarray(vertices), np.asarray(tris, dtype=np.int64))


def _ring_walls(ring, bottom_index, top_index, tris):
    n = len(ring)
    for i in range(n):
        j = (i + 1) % n
        tris.append((bottom_index[i], bottom_index[j], top_index[j]))
        tris.append((bottom_index[i], top_index[j], top_index[i]))


def extrude_flat(scene, height: float = 1.5, width: float = 1.2,
                 quad_segs: int = 16) -> TriMesh:
    """Thicken a 2D scene's paths and raise them into a printable slab.

    Strokes become round-capped outlines of the given ``width``,
    overlaps are unioned away, and the outline is extruded from z = 0
    to z = ``height``.  The result is watertight with outward
    orientation.
    """
    if height <= 0 or width <= 0:
        raise ValueError("height and width must be positive")
    lines = [LineString(line) for p in scene.placements for line in p.polylines
             if len(line) >= 2]
    if not lines:
        raise EmptyMeshError("scene has no paths to extrude")
    blob = shapely.unary_union([
        line.buffer(width / 2.0, quad_segs=quad_segs) for line in lines
    ])
    polygons = list(blob.geoms) if blob.geom_type == "MultiPolygon" else [blob]

    vertices: list = []
    index: dict = {}
    tris: list = []

    def vid(x: float, y: float, z: float) -> int:
        key = (x, y, z)
        if key not in index:
            index[key] = len(vertices)
            vertices.append(key)
        return index[key]

    for poly in polygons:
        poly = orient(poly, sign=1.0)  # exterior ccw, holes cw
        cdt = shapely.constrained_delaunay_triangles(poly)
        for tri in cdt.geoms:
            (x0, y0), (x1, y1), (x2, y2) = tri.exterior.coords[:3]
            # shapely may emit either winding; force ccw for the top
            if (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0) < 0:
                (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
            tris.append((vid(x0, y0, height), vid(x1, y1, height),
                         vid(x2, y2, height)))
            tris.append((vid(x0, y0, 0.0), vid(x2, y2, 0.0),
                         vid(x1, y1, 0.0)))
        for ring_obj in [poly.exterior, *poly.interiors]:
            ring = list(ring_obj.coords)[:-1]  # drop closing duplicate
            bottom = [vid(x, y, 0.0) for x, y in ring]
            top = [vid(x, y, height) for x, y in ring]
            _ring_walls(ring, bottom, top, tris)

    return TriMesh(np.asarray(vertices, dtype=float),
                   np.asarray(tris, dtype=np.int64))


def _f32_normals(v32: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    # computed from the float32-cast vertices so a parse/re-emit cycle
    # reproduces the bytes exactly
    a, b, c = (v32[triangles[:, i]].astype(np.float64) for i in range(3))
    n = np.cross(b - a, c - a)
    length = np.linalg.norm(n, axis=1)
    length[length == 0.0] = 1.0
    return (n / length[:, None]).astype(np.float32)


def emit_stl(mesh: TriMesh, format: str = "binary",
             name: str = "cpath") -> bytes:
    """Serialize a mesh as STL bytes, binary by default."""
    if len(mesh.triangles) >= 2 ** 32:
        raise ValueError("too many triangles for STL")
    v32 = mesh.vertices.astype(np.float32)
    normals = _f32_normals(v32, mesh.triangles)

    if format == "binary":
        out = bytearray()
        out += name.encode()[:80].ljust(80, b"\0")
        out += struct.pack("<I", len(mesh.triangles))
        for tri, n in zip(mesh.triangles, normals):
            out += struct.pack("<3f", *n)
            for idx in tri:
                out += struct.pack("<3f", *v32[idx])
            out += struct.pack("<H", 0)
        return bytes(out)

    if format == "ascii":
        rows = [f"solid {name}"]
        for tri, n in zip(mesh.triangles, normals):
            rows.append(f"  facet normal {n[0]:.6g} {n[1]:.6g} {n[2]:.6g}")
            rows.append("    outer loop")
            for idx in tri:
                x, y, z = v32[idx]
                rows.append(f"      vertex {x:.6g} {y:.6g} {z:.6g}")
            rows.append("    endloop")
            rows.append("  endfacet")
        rows.append(f"endsolid {name}")
        return ("\n".join(rows) + "\n").encode()

    raise ValueError("format must be 'binary' or 'ascii'")


def read_stl(data: bytes) -> TriMesh:
    """Parse binary STL back into a mesh (vertices deduplicated)."""
    if len(data) < 84:
        raise ValueError("not a binary STL: too short")
    (count,) = struct.unpack_from("<I", data, 80)
    if len(data) != 84 + 50 * count:
        raise ValueError("binary STL length mismatch")
    vertices: list = []
    index: dict = {}
    tris = np.empty((count, 3), dtype=np.int64)
    for t in range(count):
        off = 84 + 50 * t + 12  # skip the stored normal
        for corner in range(3):
            xyz = struct.unpack_from("<3f", data, off + 12 * corner)
            if xyz not in index:
                index[xyz] = len(vertices)
                vertices.append(xyz)
            tris[t, corner] = index[xyz]
    return TriMesh(np.asarray(vertices, dtype=float), tris)
