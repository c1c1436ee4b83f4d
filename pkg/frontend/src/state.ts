/**
 * Selection state: everything the user controls, in degrees, plus its exact
 * serialization to the params JSON the server parses. The server is the
 * authority on validation; this module mirrors its ranges and clamps before
 * a request is ever built, so the UI cannot send an out-of-range value.
 */

export type Shape = "cube" | "cuboctahedron";
export type PageSize = "a4" | "letter";
export type PageOrientation = "portrait" | "landscape";

export interface SelectionState {
  yaw: number;
  pitch: number;
  roll: number;
  fov: number;
  shape: Shape;
  pageSize: PageSize;
  pageOrientation: PageOrientation;
  minimapFraction: number;
}

/** Server validation ranges (see GET /api/v1/meta). */
export const RANGES = {
  yaw: [-360, 360],
  pitch: [-90, 90],
  roll: [-180, 180],
  fov: [1, 179], // exclusive on the server; the UI stays well inside
  minimapFraction: [0.1, 0.5], // exclusive
} as const;

/** UI slider limits, chosen strictly inside the exclusive server bounds. */
export const FOV_UI_MIN = 20;
export const FOV_UI_MAX = 160;
export const MINIMAP_UI_MIN = 0.15;
export const MINIMAP_UI_MAX = 0.45;

export const PREVIEW_WIDTH = 800;
export const PREVIEW_HEIGHT = 500;

export function defaultState(): SelectionState {
  return {
    yaw: 0,
    pitch: 0,
    roll: 0,
    fov: 90,
    shape: "cube",
    pageSize: "a4",
    pageOrientation: "portrait",
    minimapFraction: 0.28,
  };
}

function clampNumber(v: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, v));
}

/** Wrap an angle into (-180, 180]. */
export function wrapDegrees(deg: number): number {
  let d = ((deg + 180) % 360 + 360) % 360 - 180;
  if (d === -180) d = 180;
  return d;
}

/** Force every field into the ranges the server will accept. */
export function clampState(s: SelectionState): SelectionState {
  return {
    ...s,
    yaw: wrapDegrees(s.yaw),
    pitch: clampNumber(s.pitch, -90, 90),
    roll: clampNumber(wrapDegrees(s.roll), -180, 180),
    fov: clampNumber(s.fov, FOV_UI_MIN, FOV_UI_MAX),
    minimapFraction: clampNumber(s.minimapFraction, MINIMAP_UI_MIN, MINIMAP_UI_MAX),
  };
}

/**
 * Pan the view by a pointer drag over the preview. Dragging right brings
 * content from the left into view (yaw decreases); dragging down tilts the
 * view upward (pitch increases), clamped at straight up/down.
 */
export function applyDrag(
  s: SelectionState,
  dxPx: number,
  dyPx: number,
  previewWidthPx: number = PREVIEW_WIDTH,
): SelectionState {
  const degPerPx = s.fov / previewWidthPx;
  return clampState({
    ...s,
    yaw: s.yaw - dxPx * degPerPx,
    pitch: s.pitch + dyPx * degPerPx,
  });
}

/**
 * Params builders. Key order is part of the request contract the golden
 * fixtures freeze — do not reorder.
 */
export function netParams(s: SelectionState): Record<string, unknown> {
  return {
    shape: s.shape,
    yaw: s.yaw,
    pitch: s.pitch,
    roll: s.roll,
    supersample: 2,
    page_size: s.pageSize,
    page_orientation: s.pageOrientation,
    dpi: 300,
  };
}

export function flatParams(s: SelectionState): Record<string, unknown> {
  return {
    yaw: s.yaw,
    pitch: s.pitch,
    roll: s.roll,
    fov: s.fov,
    out_w: 1600,
    out_h: 1200,
    supersample: 2,
    page_size: s.pageSize,
    page_orientation: s.pageOrientation,
    dpi: 300,
    minimap_fraction: s.minimapFraction,
  };
}

export function previewParams(s: SelectionState): Record<string, unknown> {
  return {
    yaw: s.yaw,
    pitch: s.pitch,
    roll: s.roll,
    fov: s.fov,
    out_w: PREVIEW_WIDTH,
    out_h: PREVIEW_HEIGHT,
  };
}

/** The exact bytes placed in the multipart "params" part. */
export function paramsJson(params: Record<string, unknown>): string {
  return JSON.stringify(params);
}
