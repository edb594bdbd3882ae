/** One-click rigs for the gallery strip. */

import { RigState, withChanges } from "./state.js";

export interface Preset {
  name: string;
  hint: string;
  patch: Partial<RigState>;
}

export const PRESETS: readonly Preset[] = [
  {
    name: "Level pinhole",
    hint: "neutral reference view",
    patch: { roll: 0, pitch: 0, vfov: 90, xi: 0 },
  },
  {
    name: "Dutch angle",
    hint: "45° roll for dramatic tension",
    patch: { roll: 45 },
  },
  {
    name: "Worm's eye",
    hint: "low camera looking steeply up",
    patch: { roll: 0, pitch: 35, vfov: 100 },
  },
  {
    name: "Bird's eye",
    hint: "high camera looking down",
    patch: { roll: 0, pitch: -45, vfov: 80 },
  },
  {
    name: "Fisheye",
    hint: "widest view, strong distortion",
    patch: { vfov: 140, xi: 0.9 },
  },
];

export function applyPreset(state: RigState, preset: Preset): RigState {
  return withChanges(state, preset.patch);
}
