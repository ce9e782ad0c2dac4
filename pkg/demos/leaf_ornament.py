"""Randomized leaf ornament on a 9-gon.

Every leaf is a bracket pair plus a few interior paths; the bracket
overshoots are drawn from N(eta, sigma^2) so reruns with the same seed
reproduce the same drawing.  Writes demos/out/leaf_ornament.svg.
"""

import os

from cpath import (
    AffineMap, LeafSpec, PathProblem, SamplerConfig, Scene, StyleRef,
    emit_svg, kgon, leaf_c_vectors, place, trace_path,
)

OUT = os.path.join(os.path.dirname(__file__), "out")


def main():
    spec = LeafSpec(k=9, eta=0.05, paths_per_leaf=(3, 5), seed=4)
    poly = kgon(spec.k)
    config = SamplerConfig(rule="midpoint", delta=0.025)

    leaves = leaf_c_vectors(spec)
    bundle = [trace_path(PathProblem(poly, c), config)
              for vectors in leaves
              for c in vectors]
    print(f"k={spec.k}: {len(bundle)} paths "
          f"({[len(v) for v in leaves]} per leaf)")

    scene = Scene((place(bundle, AffineMap.identity(2),
                         StyleRef(stroke_width=0.006)),))
    os.makedirs(OUT, exist_ok=True)
    path = os.path.join(OUT, "leaf_ornament.svg")
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_svg(scene, width_mm=140.0))
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
