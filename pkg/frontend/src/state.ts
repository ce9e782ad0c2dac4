/**
 * Studio parameter state and its URL query-string codec.
 *
 * The whole panel lives in one flat record so a reload (or a shared
 * link) reproduces the scene exactly: encode() writes only values that
 * differ from the defaults, decode() fills the gaps back in.
 */

export type Mode = "leaves" | "facets";
export type Rule = "midpoint" | "curvature";

export interface StudioState {
  /** "custom", or a backend preset name used verbatim. */
  preset: string;
  mode: Mode;
  k: number;
  /** facet-objective rotation, radians; paths come in a +/- pair */
  theta: number;
  eta: number;
  /** null lets the backend default to eta / 3 */
  sigma: number | null;
  pathsLo: number;
  pathsHi: number;
  seed: number;
  rule: Rule;
  delta: number;
  /** stroke width in scene units (the polygon has inradius 1) */
  stroke: number;
  color: string;
}

export const DEFAULTS: StudioState = {
  preset: "custom",
  mode: "leaves",
  k: 9,
  theta: 0.18,
  eta: 0.0425,
  sigma: null,
  pathsLo: 3,
  pathsHi: 4,
  seed: 0,
  rule: "midpoint",
  delta: 0.03,
  stroke: 0.008,
  color: "#000000",
};

const NUMERIC = [
  "k", "theta", "eta", "pathsLo", "pathsHi", "seed", "delta", "stroke",
] as const;

export function encode(state: StudioState): string {
  const q = new URLSearchParams();
  const set = (key: string, value: string, fallback: string) => {
    if (value !== fallback) q.set(key, value);
  };
  set("preset", state.preset, DEFAULTS.preset);
  set("mode", state.mode, DEFAULTS.mode);
  set("rule", state.rule, DEFAULTS.rule);
  set("color", state.color, DEFAULTS.color);
  for (const key of NUMERIC) {
    set(key, String(state[key]), String(DEFAULTS[key]));
  }
  if (state.sigma !== null) q.set("sigma", String(state.sigma));
  return q.toString();
}

export function decode(query: string): StudioState {
  const q = new URLSearchParams(query);
  const state: StudioState = { ...DEFAULTS };
  const preset = q.get("preset");
  if (preset !== null) state.preset = preset;
  const mode = q.get("mode");
  if (mode === "leaves" || mode === "facets") state.mode = mode;
  const rule = q.get("rule");
  if (rule === "midpoint" || rule === "curvature") state.rule = rule;
  const color = q.get("color");
  if (color !== null) state.color = color;
  for (const key of NUMERIC) {
    const raw = q.get(key);
    if (raw === null) continue;
    const value = Number(raw);
    if (Number.isFinite(value)) state[key] = value;
  }
  const sigma = q.get("sigma");
  if (sigma !== null && Number.isFinite(Number(sigma))) {
    state.sigma = Number(sigma);
  }
  return state;
}

/** Field-level messages; an empty record means the state is sendable. */
export function validate(state: StudioState): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!Number.isInteger(state.k) || state.k < 3 || state.k > 24) {
    errors.k = "k must be an integer in 3..24";
  }
  if (!Number.isFinite(state.theta) || Math.abs(state.theta) > 1.5) {
    errors.theta = "theta must be in [-1.5, 1.5] radians";
  }
  if (!Number.isFinite(state.eta) || state.eta < 0 || state.eta > 0.5) {
    errors.eta = "eta must be in [0, 0.5]";
  }
  if (state.sigma !== null && (!Number.isFinite(state.sigma) || state.sigma < 0)) {
    errors.sigma = "sigma must be nonnegative (blank for eta/3)";
  }
  if (!Number.isInteger(state.pathsLo) || !Number.isInteger(state.pathsHi)
      || state.pathsLo < 0 || state.pathsLo > state.pathsHi
      || state.pathsHi > 12) {
    errors.paths = "paths per leaf must be integers with 0 <= lo <= hi <= 12";
  }
  if (!Number.isInteger(state.seed) || state.seed < 0) {
    errors.seed = "seed must be a nonnegative integer";
  }
  if (!Number.isFinite(state.delta) || state.delta <= 0 || state.delta > 10) {
    errors.delta = "delta must be in (0, 10]";
  }
  if (!Number.isFinite(state.stroke) || state.stroke <= 0 || state.stroke > 1) {
    errors.stroke = "stroke width must be in (0, 1] scene units";
  }
  if (!/^#[0-9a-fA-F]{6}$/.test(state.color)) {
    errors.color = "color must be #rrggbb";
  }
  return errors;
}

/** Reproducibility tag used in export filenames. */
export function describe(state: StudioState): string {
  if (state.preset !== "custom") return state.preset;
  const sampler = `${state.rule}-d${state.delta}`;
  if (state.mode === "facets") {
    return `k${state.k}-facets-th${state.theta}-${sampler}`;
  }
  const sigma = state.sigma === null ? "auto" : String(state.sigma);
  return `k${state.k}-leaves-eta${state.eta}-sg${sigma}`
    + `-p${state.pathsLo}.${state.pathsHi}-seed${state.seed}-${sampler}`;
}
