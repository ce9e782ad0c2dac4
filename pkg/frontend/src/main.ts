/**
 * Panel wiring. All geometry comes from the backend; this file only
 * moves values between the form, the URL and the API client.
 */

import { PreviewLoop, fetchMeshStl, fetchPresets } from "./api.js";
import { download } from "./download.js";
import { buildSceneSpec } from "./spec.js";
import type { PresetMap } from "./spec.js";
import { decode, describe, encode, validate } from "./state.js";
import type { StudioState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const FIELD_IDS = [
  "k", "theta", "eta", "sigma", "pathsLo", "pathsHi", "seed",
  "rule", "delta", "stroke", "color", "mode",
] as const;

let state: StudioState = decode(location.search.replace(/^\?/, ""));
let presets: PresetMap = {};
let presetsLoaded = false;
let lastSvg: string | null = null;

const loop = new PreviewLoop({
  onSvg(svg) {
    lastSvg = svg;
    el("preview").innerHTML = svg;
    hideBanner();
  },
  onError(message) {
    showBanner(message);
  },
});

function showBanner(message: string): void {
  el("banner-text").textContent = message;
  el("banner").hidden = false;
}

function hideBanner(): void {
  el("banner").hidden = true;
}

function input(id: string): HTMLInputElement {
  return el<HTMLInputElement>(id);
}

function select(id: string): HTMLSelectElement {
  return el<HTMLSelectElement>(id);
}

function readPanel(): StudioState {
  const sigmaRaw = input("sigma").value.trim();
  return {
    preset: select("preset").value,
    mode: select("mode").value as StudioState["mode"],
    k: Number(input("k").value),
    theta: Number(input("theta").value),
    eta: Number(input("eta").value),
    sigma: sigmaRaw === "" ? null : Number(sigmaRaw),
    pathsLo: Number(input("pathsLo").value),
    pathsHi: Number(input("pathsHi").value),
    seed: Number(input("seed").value),
    rule: select("rule").value as StudioState["rule"],
    delta: Number(input("delta").value),
    stroke: Number(input("stroke").value),
    color: input("color").value,
  };
}

function syncPanel(): void {
  select("preset").value = state.preset;
  select("mode").value = state.mode;
  select("rule").value = state.rule;
  input("k").value = String(state.k);
  input("theta").value = String(state.theta);
  input("eta").value = String(state.eta);
  input("sigma").value = state.sigma === null ? "" : String(state.sigma);
  input("pathsLo").value = String(state.pathsLo);
  input("pathsHi").value = String(state.pathsHi);
  input("seed").value = String(state.seed);
  input("delta").value = String(state.delta);
  input("stroke").value = String(state.stroke);
  input("color").value = state.color;

  // presets are sent verbatim, so the panel only applies to custom
  const custom = state.preset === "custom";
  const leaves = state.mode === "leaves";
  for (const id of FIELD_IDS) {
    (el(id) as HTMLInputElement | HTMLSelectElement).disabled = !custom;
  }
  if (custom) {
    input("theta").disabled = leaves;
    for (const id of ["eta", "sigma", "pathsLo", "pathsHi", "seed"]) {
      input(id).disabled = !leaves;
    }
  }
  el<HTMLButtonElement>("reroll").disabled = !custom || !leaves;
}

function renderErrors(errors: Record<string, string>): void {
  for (const slot of document.querySelectorAll<HTMLElement>(".err")) {
    slot.textContent = "";
  }
  for (const [field, message] of Object.entries(errors)) {
    const slot = document.getElementById(`err-${field}`);
    if (slot) slot.textContent = message;
  }
}

/** Validate, reflect into the URL, and schedule a preview. */
function refresh(): void {
  const errors = validate(state);
  renderErrors(errors);
  if (Object.keys(errors).length > 0) return; // no request on bad input
  if (state.preset !== "custom" && !presets[state.preset]) return;
  const query = encode(state);
  history.replaceState(null, "", location.pathname + (query ? `?${query}` : ""));
  loop.request(buildSceneSpec(state, presets));
}

function onFieldInput(): void {
  state = { ...readPanel(), preset: "custom" };
  syncPanel();
  refresh();
}

function wire(): void {
  for (const id of FIELD_IDS) {
    el(id).addEventListener("input", onFieldInput);
  }
  select("preset").addEventListener("input", () => {
    state = { ...state, preset: select("preset").value };
    syncPanel();
    refresh();
  });
  el("reroll").addEventListener("click", () => {
    state = { ...state, preset: "custom",
              seed: Math.floor(Math.random() * 100000) };
    syncPanel();
    refresh();
  });
  el("retry").addEventListener("click", () => {
    hideBanner();
    if (presetsLoaded) loop.retry();
    else void init();
  });
  el("export-svg").addEventListener("click", () => {
    if (Object.keys(validate(state)).length > 0) {
      el("export-note").textContent = "fix the highlighted fields first";
      return;
    }
    if (lastSvg === null) {
      el("export-note").textContent = "no preview yet";
      return;
    }
    el("export-note").textContent = "";
    download(lastSvg, `cpath-${describe(state)}.svg`, "image/svg+xml");
  });
  el("export-stl").addEventListener("click", () => {
    if (Object.keys(validate(state)).length > 0) {
      el("export-note").textContent = "fix the highlighted fields first";
      return;
    }
    el("export-note").textContent = "building mesh...";
    fetchMeshStl(buildSceneSpec(state, presets), { mode: "flat" })
      .then((bytes) => {
        el("export-note").textContent = "";
        download(bytes, `cpath-${describe(state)}.stl`, "model/stl");
      })
      .catch((err: Error) => {
        el("export-note").textContent = err.message;
      });
  });
}

async function init(): Promise<void> {
  try {
    presets = await fetchPresets();
    presetsLoaded = true;
  } catch (err) {
    showBanner(`backend unreachable: ${(err as Error).message}`);
    return;
  }
  const chooser = select("preset");
  while (chooser.options.length > 1) chooser.remove(1);
  for (const name of Object.keys(presets).sort()) {
    chooser.add(new Option(name, name));
  }
  syncPanel();
  refresh();
}

wire();
syncPanel();
void init();
