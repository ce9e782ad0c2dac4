"""Render the six-armed star preset to demos/out/star.svg."""

import os

from cpath import emit_svg, preset_spec, scene_from_spec

OUT = os.path.join(os.path.dirname(__file__), "out")


def main():
    scene = scene_from_spec(preset_spec("star"))
    print(f"{len(scene.placements)} placements, "
          f"{sum(len(p.polylines) for p in scene.placements)} polylines")
    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, "star.svg")
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_svg(scene, width_mm=180.0, titles=True))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
