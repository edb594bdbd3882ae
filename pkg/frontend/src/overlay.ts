/**
 * Field overlay drawing: up-vector arrows and iso-latitude contours on a
 * canvas above the preview image.
 *
 * All geometry arrives from the /api/field payload; this module only
 * scales it from field-raster coordinates to canvas pixels and strokes
 * it.  There is deliberately no projection math here.
 */

import { FieldArrow, FieldContour } from "./api.js";

export const ARROW_LENGTH = 18;
export const ARROW_HEAD = 5;
export const ARROW_COLOR = "#2e9e4f";
export const CONTOUR_COLOR = "rgba(255, 255, 255, 0.75)";
export const HORIZON_COLOR = "rgba(255, 210, 80, 0.9)";

export interface Segment {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** Minimal stroke surface so tests can record draw calls without a DOM. */
export interface StrokeSurface {
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
}

/** Shaft plus two head strokes per arrow, in canvas coordinates. */
export function arrowSegments(
  arrows: readonly FieldArrow[],
  scale: number,
  length: number = ARROW_LENGTH,
): Segment[] {
  const segments: Segment[] = [];
  for (const arrow of arrows) {
    const x0 = arrow.x * scale;
    const y0 = arrow.y * scale;
    const x1 = x0 + arrow.dx * length;
    const y1 = y0 + arrow.dy * length;
    segments.push({ x0, y0, x1, y1 });
    // Head: two short strokes swept back 30 degrees either side.
    const angle = Math.atan2(arrow.dy, arrow.dx);
    for (const side of [-1, 1]) {
      const back = angle + Math.PI + (side * Math.PI) / 6;
      segments.push({
        x0: x1,
        y0: y1,
        x1: x1 + Math.cos(back) * ARROW_HEAD,
        y1: y1 + Math.sin(back) * ARROW_HEAD,
      });
    }
  }
  return segments;
}

export function contourPolylines(
  contours: readonly FieldContour[],
  scale: number,
): { level: number; points: [number, number][] }[] {
  return contours.map((contour) => ({
    level: contour.level,
    points: contour.points.map(([x, y]) => [x * scale, y * scale] as [number, number]),
  }));
}

export function drawArrows(
  surface: StrokeSurface,
  arrows: readonly FieldArrow[],
  scale: number,
): void {
  surface.strokeStyle = ARROW_COLOR;
  surface.lineWidth = 2;
  for (const segment of arrowSegments(arrows, scale)) {
    surface.beginPath();
    surface.moveTo(segment.x0, segment.y0);
    surface.lineTo(segment.x1, segment.y1);
    surface.stroke();
  }
}

export function drawContours(
  surface: StrokeSurface,
  contours: readonly FieldContour[],
  scale: number,
): void {
  for (const line of contourPolylines(contours, scale)) {
    // The horizon gets its own color so it reads at a glance.
    surface.strokeStyle = line.level === 0 ? HORIZON_COLOR : CONTOUR_COLOR;
    surface.lineWidth = line.level === 0 ? 2 : 1;
    surface.beginPath();
    line.points.forEach(([x, y], index) => {
      if (index === 0) surface.moveTo(x, y);
      else surface.lineTo(x, y);
    });
    surface.stroke();
  }
}
