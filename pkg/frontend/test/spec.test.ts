import { describe, expect, it } from "vitest";

import { buildSceneSpec } from "../src/spec.js";
import { DEFAULTS } from "../src/state.js";

describe("scene spec construction", () => {
  it("builds a leaf spec with the panel parameters", () => {
    const spec = buildSceneSpec(
      { ...DEFAULTS, k: 12, eta: 0.05, seed: 7, pathsLo: 4, pathsHi: 4 },
      {},
    ) as any;
    expect(spec.sampler).toEqual({ rule: "midpoint", delta: 0.03 });
    expect(spec.placements).toHaveLength(1);
    expect(spec.placements[0].preset).toBe("kgon:12");
    expect(spec.placements[0].c_spec.leaves).toEqual({
      k: 12,
      eta: 0.05,
      paths_per_leaf: [4, 4],
      seed: 7,
    });
  });

  it("omits sigma when null, includes it when set", () => {
    const auto = buildSceneSpec(DEFAULTS, {}) as any;
    expect("sigma" in auto.placements[0].c_spec.leaves).toBe(false);
    const fixed = buildSceneSpec({ ...DEFAULTS, sigma: 0.02 }, {}) as any;
    expect(fixed.placements[0].c_spec.leaves.sigma).toBe(0.02);
  });

  it("builds a +/- theta pair in facets mode", () => {
    const spec = buildSceneSpec(
      { ...DEFAULTS, mode: "facets", theta: 0.2 }, {},
    ) as any;
    expect(spec.placements[0].c_spec.facets.thetas).toEqual([0.2, -0.2]);
    const straight = buildSceneSpec(
      { ...DEFAULTS, mode: "facets", theta: 0 }, {},
    ) as any;
    expect(straight.placements[0].c_spec.facets.thetas).toEqual([0]);
  });

  it("maps the stroke controls into the style block", () => {
    const spec = buildSceneSpec(
      { ...DEFAULTS, stroke: 0.02, color: "#ff8000" }, {},
    ) as any;
    expect(spec.placements[0].style).toEqual({
      stroke_width: 0.02,
      color: [255, 128, 0],
    });
  });

  it("passes presets through verbatim", () => {
    const star = { placements: [{ preset: "kgon:6" }] };
    const spec = buildSceneSpec(
      { ...DEFAULTS, preset: "star" }, { star },
    );
    expect(spec).toBe(star); // same object, no client-side edits
  });

  it("rejects unknown presets", () => {
    expect(() => buildSceneSpec({ ...DEFAULTS, preset: "nope" }, {}))
      .toThrow(/unknown preset/);
  });
});
