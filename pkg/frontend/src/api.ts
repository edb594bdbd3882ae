/**
 * Preview-service client: URL builders plus a debounced latest-wins
 * fetcher.  All geometry comes from the service; this file only moves
 * bytes and JSON.
 */

import { RigState } from "./state.js";

export const DEBOUNCE_MS = 80;

export interface FieldArrow {
  x: number;
  y: number;
  dx: number;
  dy: number;
}

export interface FieldContour {
  level: number;
  points: [number, number][];
}

export interface FieldPayload {
  width: number;
  height: number;
  grid: number;
  center_latitude: number;
  arrows: FieldArrow[];
  contours: FieldContour[];
}

export interface ApiErrorBody {
  error: string;
  param?: string;
  range?: [number, number];
}

function rigQuery(state: RigState, size: number): URLSearchParams {
  const params = new URLSearchParams();
  params.set("roll", String(state.roll));
  params.set("pitch", String(state.pitch));
  params.set("vfov", String(state.vfov));
  params.set("xi", String(state.xi));
  params.set("w", String(size));
  params.set("h", String(size));
  return params;
}

/** Encoded field-map endpoint; yaw-invariant, so no yaw parameter. */
export function pfmapUrl(base: string, state: RigState, size: number): string {
  return `${base}/api/pfmap?${rigQuery(state, size)}`;
}

export function renderUrl(base: string, state: RigState, pano: string): string {
  const params = rigQuery(state, state.resolution);
  params.set("yaw", String(state.yaw));
  params.set("pano", pano);
  return `${base}/api/render?${params}`;
}

export function fieldUrl(base: string, state: RigState, grid: number): string {
  const params = rigQuery(state, state.resolution);
  params.set("grid", String(grid));
  return `${base}/api/field?${params}`;
}

export function panoramasUrl(base: string): string {
  return `${base}/api/panoramas`;
}

type FetchLike = (url: string, init?: { signal?: AbortSignal }) => Promise<Response>;

/**
 * Debounces bursts of requests and aborts superseded ones, so exactly one
 * request per endpoint is in flight and only the newest response lands.
 * Superseded calls resolve to null rather than rejecting: dropping a
 * stale render is normal slider behavior, not an error.
 */
export class LatestFetcher {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private pendingDrop: (() => void) | null = null;
  private seq = 0;

  constructor(
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
    private readonly delay: number = DEBOUNCE_MS,
  ) {}

  request(url: string): Promise<Response | null> {
    // A newer request supersedes the debounce window and any live fetch.
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
      this.pendingDrop?.();
      this.pendingDrop = null;
    }
    this.controller?.abort();
    const ticket = ++this.seq;

    return new Promise<Response | null>((resolve) => {
      this.pendingDrop = () => resolve(null);
      this.timer = setTimeout(() => {
        this.timer = null;
        this.pendingDrop = null;
        const controller = new AbortController();
        this.controller = controller;
        this.fetchImpl(url, { signal: controller.signal }).then(
          (response) => resolve(ticket === this.seq ? response : null),
          () => resolve(null),
        );
      }, this.delay);
    });
  }

  /** Abort whatever is pending or in flight (teardown). */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
      this.pendingDrop?.();
      this.pendingDrop = null;
    }
    this.controller?.abort();
    this.seq++;
  }
}

/** Parse a service error body into a display string + offending param. */
export async function readApiError(response: Response): Promise<ApiErrorBody> {
  try {
    const body = (await response.json()) as ApiErrorBody;
    if (typeof body.error === "string") return body;
  } catch {
    // fall through to the generic message
  }
  return { error: `service error (${response.status})` };
}
