/**
 * DOM wiring for the slider console.
 *
 * State is the single source of truth: every input writes through
 * applyChanges(), which clamps, re-renders the controls, syncs the URL
 * fragment and kicks the debounced fetches.  Crop, tint and field
 * requests run through separate latest-wins fetchers so a slider drag
 * settles into exactly one request per endpoint.
 */

import {
  FieldPayload,
  LatestFetcher,
  fieldUrl,
  panoramasUrl,
  pfmapUrl,
  readApiError,
  renderUrl,
} from "./api.js";
import { downloadName, exportMapUrl, rigJson } from "./export.js";
import { drawArrows, drawContours } from "./overlay.js";
import { PRESETS, applyPreset } from "./presets.js";
import { RIG_PARAMS, RIG_RANGES, sliderMax, sliderMin } from "./ranges.js";
import {
  PREVIEW_SIZES,
  RigState,
  parseFragment,
  serializeFragment,
  withChanges,
} from "./state.js";

const BASE = (window as { PFCAM_BASE?: string }).PFCAM_BASE ?? "http://127.0.0.1:8000";
const CANVAS_SIZE = 512;

interface PanoEntry {
  id: string;
  width: number;
  height: number;
  aspect_warning: boolean;
}

let state: RigState = parseFragment(location.hash);
const renderFetcher = new LatestFetcher();
const fieldFetcher = new LatestFetcher();
const tintFetcher = new LatestFetcher();

const el = <T extends HTMLElement>(id: string): T => {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
};

const preview = el<HTMLImageElement>("preview");
const tint = el<HTMLImageElement>("tint");
const overlay = el<HTMLCanvasElement>("overlay");
const banner = el<HTMLDivElement>("banner");
const centerLat = el<HTMLSpanElement>("center-latitude");
const panoSelect = el<HTMLSelectElement>("pano-select");
const resolutionSelect = el<HTMLSelectElement>("resolution");

function buildSliders(): void {
  const host = el<HTMLDivElement>("sliders");
  for (const param of RIG_PARAMS) {
    const range = RIG_RANGES[param];
    const row = document.createElement("label");
    row.className = "slider-row";
    const title = document.createElement("span");
    title.textContent = param;
    const input = document.createElement("input");
    input.type = "range";
    input.id = `slider-${param}`;
    input.min = String(sliderMin(range));
    input.max = String(sliderMax(range));
    input.step = String(range.step);
    const readout = document.createElement("output");
    readout.id = `value-${param}`;
    input.addEventListener("input", () => {
      const patch: Partial<RigState> = {};
      patch[param] = Number(input.value);
      applyChanges(patch);
    });
    row.append(title, input, readout);
    host.append(row);
  }
}

function buildPresets(): void {
  const host = el<HTMLDivElement>("presets");
  for (const preset of PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.name;
    button.title = preset.hint;
    button.addEventListener("click", () => {
      applyChanges(applyPreset(state, preset));
    });
    host.append(button);
  }
}

function buildResolutions(): void {
  for (const size of PREVIEW_SIZES) {
    const option = document.createElement("option");
    option.value = String(size);
    option.textContent = `${size} px`;
    resolutionSelect.append(option);
  }
  resolutionSelect.addEventListener("change", () => {
    applyChanges({ resolution: Number(resolutionSelect.value) });
  });
}

function wireToggle(id: string, build: (on: boolean) => Partial<RigState>): void {
  const box = el<HTMLInputElement>(id);
  box.addEventListener("change", () => {
    applyChanges(build(box.checked));
  });
}

function wireToggles(): void {
  wireToggle("toggle-arrows", (on) => ({ showArrows: on }));
  wireToggle("toggle-contours", (on) => ({ showContours: on }));
  wireToggle("toggle-tint", (on) => ({ showTint: on }));
}

function wireExport(): void {
  el<HTMLButtonElement>("export-map").addEventListener("click", async () => {
    try {
      const response = await fetch(exportMapUrl(BASE, state));
      if (!response.ok) {
        showError(await readApiError(response));
        return;
      }
      // Download the body bytes untouched: no canvas round trip.
      triggerDownload(await response.blob(), downloadName(state));
      triggerDownload(
        new Blob([rigJson(state)], { type: "application/json" }),
        downloadName(state).replace(/\.png$/, ".json"),
      );
    } catch {
      showError({ error: "service unreachable" });
    }
  });
}

function triggerDownload(blob: Blob, name: string): void {
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = name;
  link.click();
  URL.revokeObjectURL(url);
}

async function loadPanoramas(): Promise<void> {
  try {
    const response = await fetch(panoramasUrl(BASE));
    if (!response.ok) return;
    const entries = (await response.json()) as PanoEntry[];
    panoSelect.innerHTML = "";
    const none = document.createElement("option");
    none.value = "";
    none.textContent = "(field map only)";
    panoSelect.append(none);
    for (const entry of entries) {
      const option = document.createElement("option");
      option.value = entry.id;
      option.textContent = entry.aspect_warning ? `${entry.id} (off-aspect)` : entry.id;
      panoSelect.append(option);
    }
    if (state.pano !== null && !entries.some((entry) => entry.id === state.pano)) {
      state = withChanges(state, { pano: null });
    }
  } catch {
    showError({ error: "service unreachable; start it with: pfcam serve" });
  }
}

function showError(body: { error: string; param?: string }): void {
  banner.textContent = body.param ? `${body.error} (parameter: ${body.param})` : body.error;
  banner.classList.add("visible");
  if (body.param) {
    document.getElementById(`slider-${body.param}`)?.classList.add("invalid");
  }
}

function clearError(): void {
  banner.classList.remove("visible");
  for (const param of RIG_PARAMS) {
    document.getElementById(`slider-${param}`)?.classList.remove("invalid");
  }
}

function setChecked(id: string, on: boolean): void {
  const box = document.getElementById(id) as HTMLInputElement | null;
  if (box) box.checked = on;
}

function syncControls(): void {
  for (const param of RIG_PARAMS) {
    const input = document.getElementById(`slider-${param}`) as HTMLInputElement | null;
    const readout = document.getElementById(`value-${param}`);
    if (input) input.value = String(state[param]);
    if (readout) {
      const unit = param === "xi" ? "" : "°";
      readout.textContent = `${state[param].toFixed(param === "xi" ? 2 : 1)}${unit}`;
    }
  }
  resolutionSelect.value = String(state.resolution);
  setChecked("toggle-arrows", state.showArrows);
  setChecked("toggle-contours", state.showContours);
  setChecked("toggle-tint", state.showTint);
  panoSelect.value = state.pano ?? "";
  tint.style.display = state.showTint && state.pano !== null ? "block" : "none";
}

function applyChanges(changes: Partial<RigState>): void {
  state = withChanges(state, changes);
  history.replaceState(null, "", `#${serializeFragment(state)}`);
  syncControls();
  clearError();
  void refresh();
}

async function refresh(): Promise<void> {
  const grid = Math.max(16, Math.floor(state.resolution / 8));

  if (state.pano !== null) {
    const crop = await renderFetcher.request(renderUrl(BASE, state, state.pano));
    if (crop !== null) {
      if (crop.ok) {
        preview.src = URL.createObjectURL(await crop.blob());
      } else {
        showError(await readApiError(crop));
      }
    }
  } else {
    // Without a panorama the encoded map itself is the preview.
    const map = await renderFetcher.request(pfmapUrl(BASE, state, state.resolution));
    if (map !== null && map.ok) preview.src = URL.createObjectURL(await map.blob());
  }

  if (state.showTint && state.pano !== null) {
    const map = await tintFetcher.request(pfmapUrl(BASE, state, state.resolution));
    if (map !== null && map.ok) tint.src = URL.createObjectURL(await map.blob());
  }

  const field = await fieldFetcher.request(fieldUrl(BASE, state, grid));
  if (field === null) return;
  if (!field.ok) {
    showError(await readApiError(field));
    return;
  }
  const payload = (await field.json()) as FieldPayload;
  centerLat.textContent = `${payload.center_latitude.toFixed(1)}°`;
  const ctx = overlay.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, overlay.width, overlay.height);
  const scale = CANVAS_SIZE / payload.width;
  if (state.showContours) drawContours(ctx, payload.contours, scale);
  if (state.showArrows) drawArrows(ctx, payload.arrows, scale);
}

panoSelect.addEventListener("change", () => {
  applyChanges({ pano: panoSelect.value === "" ? null : panoSelect.value });
});

window.addEventListener("hashchange", () => {
  state = parseFragment(location.hash);
  syncControls();
  void refresh();
});

buildSliders();
buildPresets();
buildResolutions();
wireToggles();
wireExport();
syncControls();
void loadPanoramas().then(() => refresh());
