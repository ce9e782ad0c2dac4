/**
 * Thin client for the cpath serve API plus the preview request loop:
 * slider input is debounced at 150 ms and at most one request is in
 * flight, latest-wins (superseded responses are dropped, their fetches
 * aborted).
 */

import type { PresetMap, SceneSpec } from "./spec.js";

/** The slice of Response the client touches; keeps fakes small. */
export interface ApiResponse {
  ok: boolean;
  status: number;
  text(): Promise<string>;
  arrayBuffer(): Promise<ArrayBuffer>;
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<ApiResponse>;

const globalFetch: FetchLike = (url, init) => fetch(url, init);

async function errorText(res: ApiResponse): Promise<string> {
  const body = await res.text().catch(() => "");
  try {
    const parsed = JSON.parse(body);
    if (parsed && typeof parsed.error === "string") return parsed.error;
  } catch {
    /* not JSON, use the raw body */
  }
  return body || `request failed (${res.status})`;
}

function post(spec: unknown, signal?: AbortSignal): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(spec),
    signal,
  };
}

export async function fetchPresets(
  base = "",
  f: FetchLike = globalFetch,
): Promise<PresetMap> {
  const res = await f(`${base}/api/presets`);
  if (!res.ok) throw new Error(await errorText(res));
  const data = JSON.parse(await res.text());
  return data.presets as PresetMap;
}

export async function fetchPreview(
  spec: SceneSpec,
  base = "",
  signal?: AbortSignal,
  f: FetchLike = globalFetch,
): Promise<string> {
  const res = await f(`${base}/api/scene/preview`, post(spec, signal));
  if (!res.ok) throw new Error(await errorText(res));
  return res.text();
}

export async function fetchMeshStl(
  spec: SceneSpec,
  options: Record<string, unknown>,
  base = "",
  f: FetchLike = globalFetch,
): Promise<ArrayBuffer> {
  const res = await f(`${base}/api/mesh`, post({ scene: spec, ...options }));
  if (!res.ok) throw new Error(await errorText(res));
  return res.arrayBuffer();
}

function isAbort(err: unknown): boolean {
  return err instanceof Error && err.name === "AbortError";
}

export interface PreviewLoopOptions {
  base?: string;
  delayMs?: number;
  fetchFn?: FetchLike;
  onSvg(svg: string): void;
  onError(message: string): void;
}

export class PreviewLoop {
  private readonly base: string;
  private readonly delayMs: number;
  private readonly fetchFn: FetchLike;
  private readonly onSvg: (svg: string) => void;
  private readonly onError: (message: string) => void;

  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private generation = 0;
  private lastSpec: SceneSpec | null = null;

  constructor(options: PreviewLoopOptions) {
    this.base = options.base ?? "";
    this.delayMs = options.delayMs ?? 150;
    this.fetchFn = options.fetchFn ?? globalFetch;
    this.onSvg = options.onSvg;
    this.onError = options.onError;
  }

  /** Schedule a preview of `spec`, superseding anything pending. */
  request(spec: SceneSpec): void {
    this.lastSpec = spec;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(spec);
    }, this.delayMs);
  }

  /** Re-issue the last spec immediately (the banner's retry button). */
  retry(): void {
    if (this.lastSpec !== null) void this.fire(this.lastSpec);
  }

  dispose(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    this.controller?.abort();
  }

  private async fire(spec: SceneSpec): Promise<void> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const generation = ++this.generation;
    try {
      const svg = await fetchPreview(
        spec, this.base, controller.signal, this.fetchFn);
      if (generation === this.generation) this.onSvg(svg);
    } catch (err) {
      if (generation !== this.generation || isAbort(err)) return;
      this.onError(err instanceof Error ? err.message : String(err));
    }
  }
}
