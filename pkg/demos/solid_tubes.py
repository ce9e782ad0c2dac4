"""Paths from a dodecahedron's center to all twelve faces, as tubes.

Facet planes come from the vertex table by exhaustive support-plane
search; each facet normal then serves as an objective, so the path runs
from the analytic center straight toward that face's center.  All
tubes are merged into one mesh: demos/out/solid_tubes.stl.
"""

import os

import numpy as np

from cpath import (
    PathProblem, SamplerConfig, TriMesh,
    emit_stl, enumerate_facets, platonic, trace_path, tube,
)

OUT = os.path.join(os.path.dirname(__file__), "out")


def merge(meshes):
    offsets = np.cumsum([0] + [len(m.vertices) for m in meshes[:-1]])
    return TriMesh(
        np.vstack([m.vertices for m in meshes]),
        np.vstack([np.asarray(m.triangles) + off
                   for m, off in zip(meshes, offsets)]),
    )


def main():
    solid = platonic("dodecahedron")
    facets = enumerate_facets(solid)
    poly = facets.to_polytope()
    print(f"dodecahedron: {len(facets)} facets, "
          f"Euler {facets.euler_characteristic(len(solid.vertices))}")

    config = SamplerConfig(rule="midpoint", delta=0.05,
                           mu_max=1e4, mu_min=1e-4)
    tubes = []
    for normal in poly.A:
        line = trace_path(PathProblem(poly, normal), config)
        tubes.append(tube(line.points(), radius=0.035, segments=10))
    mesh = merge(tubes)
    print(f"{len(mesh.triangles)} triangles, "
          f"volume {mesh.signed_volume():.5f}")

    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, "solid_tubes.stl")
    with open(path, "wb") as f:
        f.write(emit_stl(mesh))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
