"""Printable plate: the nested-squares preset extruded to 1.5 mm.

The preset lives in problem units a couple of units wide, so every
placement map is rescaled to 10 mm per unit before extruding.  Strokes
become round-capped ribbons, overlaps fuse into one solid, and the
result lands in demos/out/flat_plate.stl.
"""

import os

import numpy as np

from cpath import (
    AffineMap, Scene, emit_stl, extrude_flat, place, preset_spec,
    scene_from_spec,
)

MM_PER_UNIT = 10.0
OUT = os.path.join(os.path.dirname(__file__), "out")


def scaled(scene: Scene, s: float) -> Scene:
    return Scene(tuple(
        place(p.source, AffineMap(s * p.map.B, s * p.map.d), p.style)
        for p in scene.placements
    ))


def main():
    scene = scaled(scene_from_spec(preset_spec("pythagorean")), MM_PER_UNIT)
    mesh = extrude_flat(scene, height=1.5, width=1.2)
    print(f"{len(mesh.triangles)} triangles, watertight: "
          f"{mesh.is_watertight()}, volume {mesh.signed_volume():.1f} mm^3")

    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, "flat_plate.stl")
    with open(path, "wb") as f:
        f.write(emit_stl(mesh))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
