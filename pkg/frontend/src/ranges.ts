/**
 * Rig parameter ranges, mirroring the server's validation table exactly.
 * The sliders are derived from these so the UI can never build a request
 * the service rejects for range reasons.
 */

export interface ParamRange {
  lo: number;
  hi: number;
  /** true when the endpoint itself is illegal (open interval side) */
  loOpen: boolean;
  hiOpen: boolean;
  /** slider granularity; also the inset used at open endpoints */
  step: number;
}

export const RIG_RANGES = {
  roll: { lo: -90, hi: 90, loOpen: true, hiOpen: true, step: 0.1 },
  pitch: { lo: -90, hi: 90, loOpen: true, hiOpen: true, step: 0.1 },
  vfov: { lo: 15, hi: 140, loOpen: false, hiOpen: false, step: 0.5 },
  xi: { lo: 0, hi: 1, loOpen: false, hiOpen: false, step: 0.01 },
  yaw: { lo: 0, hi: 360, loOpen: false, hiOpen: true, step: 0.5 },
} as const satisfies Record<string, ParamRange>;

export type RigParam = keyof typeof RIG_RANGES;

export const RIG_PARAMS: readonly RigParam[] = ["roll", "pitch", "vfov", "xi", "yaw"];

/** Server-side cap on either raster dimension. */
export const MAX_DIM = 2048;

/** Largest legal slider value: steps inside an open upper endpoint. */
export function sliderMax(range: ParamRange): number {
  return range.hiOpen ? range.hi - range.step : range.hi;
}

/** Smallest legal slider value: steps inside an open lower endpoint. */
export function sliderMin(range: ParamRange): number {
  return range.loOpen ? range.lo + range.step : range.lo;
}

/** Pull an arbitrary number into the legal interval for one parameter. */
export function clampToRange(param: RigParam, value: number): number {
  const range = RIG_RANGES[param];
  if (Number.isNaN(value)) return sliderMin(range);
  if (value < sliderMin(range)) return sliderMin(range);
  if (value > sliderMax(range)) return sliderMax(range);
  return value;
}

export function inRange(param: RigParam, value: number): boolean {
  const range = RIG_RANGES[param];
  if (!Number.isFinite(value)) return false;
  if (range.loOpen ? value <= range.lo : value < range.lo) return false;
  if (range.hiOpen ? value >= range.hi : value > range.hi) return false;
  return true;
}
