/**
 * Scene-spec construction. The backend is the single source of truth
 * for geometry; this module only assembles the JSON it will consume,
 * so a studio preview and `cpath scene` on the same spec are
 * byte-identical.
 */

import type { StudioState } from "./state.js";

export type SceneSpec = Record<string, unknown>;
export type PresetMap = Record<string, SceneSpec>;

function hexToRgb(color: string): [number, number, number] {
  return [
    parseInt(color.slice(1, 3), 16),
    parseInt(color.slice(3, 5), 16),
    parseInt(color.slice(5, 7), 16),
  ];
}

export function buildSceneSpec(
  state: StudioState,
  presets: PresetMap,
): SceneSpec {
  if (state.preset !== "custom") {
    const spec = presets[state.preset];
    if (!spec) throw new Error(`unknown preset "${state.preset}"`);
    return spec;
  }

  const c_spec =
    state.mode === "facets"
      ? {
          facets: {
            thetas:
              state.theta === 0 ? [0] : [state.theta, -state.theta],
          },
        }
      : {
          leaves: {
            k: state.k,
            eta: state.eta,
            ...(state.sigma === null ? {} : { sigma: state.sigma }),
            paths_per_leaf: [state.pathsLo, state.pathsHi],
            seed: state.seed,
          },
        };

  return {
    sampler: { rule: state.rule, delta: state.delta },
    placements: [
      {
        preset: `kgon:${state.k}`,
        c_spec,
        style: {
          stroke_width: state.stroke,
          color: hexToRgb(state.color),
        },
      },
    ],
  };
}
