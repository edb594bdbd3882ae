/**
 * Console state and its URL-fragment codec.
 *
 * The whole console is a pure function of this state; serializing it into
 * the fragment makes any view shareable as a plain link.  Parsing is
 * forgiving: unknown keys are ignored and out-of-range values clamped, so
 * hand-edited links still load.
 */

import { clampToRange, RIG_PARAMS, RigParam } from "./ranges.js";

export const PREVIEW_SIZES = [256, 512, 1024] as const;
export const DEFAULT_PREVIEW = 512;

export interface RigState {
  roll: number;
  pitch: number;
  vfov: number;
  xi: number;
  yaw: number;
  /** selected panorama id, or null before any selection */
  pano: string | null;
  /** preview raster size (square) */
  resolution: number;
  showArrows: boolean;
  showContours: boolean;
  showTint: boolean;
}

export function defaultState(): RigState {
  return {
    roll: 0,
    pitch: 0,
    vfov: 90,
    xi: 0,
    yaw: 0,
    pano: null,
    resolution: DEFAULT_PREVIEW,
    showArrows: true,
    showContours: true,
    showTint: false,
  };
}

const FLAGS: readonly (keyof RigState)[] = ["showArrows", "showContours", "showTint"];
const FLAG_KEYS: Record<string, string> = {
  showArrows: "arrows",
  showContours: "contours",
  showTint: "tint",
};

/** Stable key order so identical states produce identical fragments. */
export function serializeFragment(state: RigState): string {
  const params = new URLSearchParams();
  for (const param of RIG_PARAMS) {
    params.set(param, String(state[param]));
  }
  if (state.pano !== null) params.set("pano", state.pano);
  params.set("res", String(state.resolution));
  for (const flag of FLAGS) {
    params.set(FLAG_KEYS[flag as string] ?? (flag as string), state[flag] ? "1" : "0");
  }
  return params.toString();
}

export function parseFragment(fragment: string): RigState {
  const state = defaultState();
  const params = new URLSearchParams(fragment.replace(/^#/, ""));
  for (const param of RIG_PARAMS) {
    const raw = params.get(param);
    if (raw !== null) state[param as RigParam] = clampToRange(param, Number(raw));
  }
  const pano = params.get("pano");
  if (pano !== null && pano !== "") state.pano = pano;
  const res = Number(params.get("res"));
  if ((PREVIEW_SIZES as readonly number[]).includes(res)) state.resolution = res;
  for (const flag of FLAGS) {
    const raw = params.get(FLAG_KEYS[flag as string] ?? (flag as string));
    if (raw !== null) (state[flag] as boolean) = raw !== "0";
  }
  return state;
}

/** Apply a partial update, clamping rig parameters into their ranges. */
export function withChanges(state: RigState, changes: Partial<RigState>): RigState {
  const next = { ...state, ...changes };
  for (const param of RIG_PARAMS) {
    next[param] = clampToRange(param, next[param]);
  }
  return next;
}
