/**
 * Export the current rig: the encoded field map exactly as the service
 * serves it, plus a small JSON sidecar with the parameters.
 *
 * The map bytes pass through untouched (no canvas re-encode), so the
 * downloaded file is byte-identical to the /api/pfmap response for the
 * same parameters.  Export needs no panorama: the field map depends on
 * the rig alone.
 */

import { pfmapUrl } from "./api.js";
import { RigState } from "./state.js";

export const EXPORT_SIZE = 1024;

export function exportMapUrl(base: string, state: RigState): string {
  return pfmapUrl(base, state, EXPORT_SIZE);
}

/** Parameter sidecar; width/height record the export raster. */
export function rigJson(state: RigState): string {
  return JSON.stringify(
    {
      roll: state.roll,
      pitch: state.pitch,
      vfov: state.vfov,
      xi: state.xi,
      yaw: state.yaw,
      width: EXPORT_SIZE,
      height: EXPORT_SIZE,
    },
    null,
    2,
  );
}

type FetchLike = (url: string) => Promise<Response>;

export async function fetchExportBytes(
  base: string,
  state: RigState,
  fetchImpl: FetchLike = (url) => fetch(url),
): Promise<Uint8Array> {
  const response = await fetchImpl(exportMapUrl(base, state));
  if (!response.ok) {
    throw new Error(`export failed (${response.status})`);
  }
  return new Uint8Array(await response.arrayBuffer());
}

export function downloadName(state: RigState): string {
  const fmt = (value: number) => value.toFixed(1).replace("-", "m").replace(".", "p");
  return `pfmap_roll${fmt(state.roll)}_pitch${fmt(state.pitch)}_vfov${fmt(state.vfov)}_xi${fmt(state.xi)}.png`;
}
