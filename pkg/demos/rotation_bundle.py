"""Fan of rotated facet objectives inside one pentagon.

For each facet normal A_i the objective sweeps through a row of small
rotation angles, so the paths fan out from the analytic center toward
edge midpoints and corners.  Output: demos/out/rotation_bundle.svg.
"""

import os

from cpath import (
    AffineMap, PathProblem, SamplerConfig, Scene, StyleRef,
    emit_svg, facet_objective, kgon, place, trace_path,
)

K = 5
ANGLES = (-0.30, -0.18, -0.06, 0.06, 0.18, 0.30)
OUT = os.path.join(os.path.dirname(__file__), "out")


def main():
    poly = kgon(K)
    config = SamplerConfig(rule="midpoint", delta=0.03)
    bundle = [
        trace_path(PathProblem(poly, facet_objective(poly, i, theta)), config)
        for i in range(1, K + 1)
        for theta in ANGLES
    ]
    n_pts = sum(len(line.samples) for line in bundle)
    print(f"{len(bundle)} paths, {n_pts} samples")

    scene = Scene((place(bundle, AffineMap.identity(2),
                         StyleRef(stroke_width=0.008)),))
    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, "rotation_bundle.svg")
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_svg(scene, width_mm=120.0, titles=True))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
