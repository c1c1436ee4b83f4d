/**
 * Browser entry point: wires the upload control, drag-to-pan preview,
 * parameter controls, and artifact downloads to the HTTP API. All logic
 * that is worth testing lives in state.ts / api.ts / viewer.ts; this file
 * is DOM plumbing only.
 */

import { ApiRequestError, downloadFileName, postArtifact, type Endpoint } from "./api.js";
import {
  FOV_UI_MAX,
  FOV_UI_MIN,
  MINIMAP_UI_MAX,
  MINIMAP_UI_MIN,
  applyDrag,
  clampState,
  defaultState,
  flatParams,
  netParams,
  paramsJson,
  previewParams,
  type SelectionState,
} from "./state.js";
import { PreviewScheduler } from "./viewer.js";

const BASE_URL = "";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

const fileInput = byId<HTMLInputElement>("file-input");
const previewImg = byId<HTMLImageElement>("preview");
const previewPane = byId<HTMLDivElement>("preview-pane");
const statusLine = byId<HTMLParagraphElement>("status");
const errorLine = byId<HTMLParagraphElement>("error");

const yawSlider = byId<HTMLInputElement>("yaw");
const pitchSlider = byId<HTMLInputElement>("pitch");
const rollSlider = byId<HTMLInputElement>("roll");
const fovSlider = byId<HTMLInputElement>("fov");
const yawOut = byId<HTMLSpanElement>("yaw-value");
const pitchOut = byId<HTMLSpanElement>("pitch-value");
const rollOut = byId<HTMLSpanElement>("roll-value");
const fovOut = byId<HTMLSpanElement>("fov-value");

const shapeSelect = byId<HTMLSelectElement>("shape");
const pageSelect = byId<HTMLSelectElement>("page-size");
const orientationSelect = byId<HTMLSelectElement>("page-orientation");
const minimapSlider = byId<HTMLInputElement>("minimap-fraction");
const minimapOut = byId<HTMLSpanElement>("minimap-value");

const netButton = byId<HTMLButtonElement>("download-net");
const flatButton = byId<HTMLButtonElement>("download-flat");

fovSlider.min = String(FOV_UI_MIN);
fovSlider.max = String(FOV_UI_MAX);
minimapSlider.min = String(MINIMAP_UI_MIN);
minimapSlider.max = String(MINIMAP_UI_MAX);

let state: SelectionState = defaultState();
let imageBlob: Blob | null = null;
let previewUrl: string | null = null;

function showError(err: unknown): void {
  if (err instanceof ApiRequestError) {
    errorLine.textContent =
      err.field !== null ? `${err.field}: ${err.message}` : err.message;
  } else {
    errorLine.textContent = err instanceof Error ? err.message : String(err);
  }
}

function clearError(): void {
  errorLine.textContent = "";
}

const scheduler = new PreviewScheduler(
  (s) => {
    if (imageBlob === null) return Promise.reject(new Error("no image loaded"));
    return postArtifact(BASE_URL, "preview", imageBlob, paramsJson(previewParams(s)));
  },
  (blob) => {
    clearError();
    const url = URL.createObjectURL(blob);
    if (previewUrl !== null) URL.revokeObjectURL(previewUrl);
    previewUrl = url;
    previewImg.src = url;
    statusLine.textContent = "";
  },
  (err) => {
    statusLine.textContent = "";
    showError(err);
  },
);

function syncControls(): void {
  yawSlider.value = String(state.yaw);
  pitchSlider.value = String(state.pitch);
  rollSlider.value = String(state.roll);
  fovSlider.value = String(state.fov);
  minimapSlider.value = String(state.minimapFraction);
  yawOut.textContent = `${state.yaw.toFixed(1)}°`;
  pitchOut.textContent = `${state.pitch.toFixed(1)}°`;
  rollOut.textContent = `${state.roll.toFixed(1)}°`;
  fovOut.textContent = `${state.fov.toFixed(0)}°`;
  minimapOut.textContent = state.minimapFraction.toFixed(2);
}

function update(next: SelectionState): void {
  state = clampState(next);
  syncControls();
  if (imageBlob !== null) {
    statusLine.textContent = "rendering preview…";
    scheduler.request(state);
  }
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (file === undefined) return;
  imageBlob = file;
  netButton.disabled = false;
  flatButton.disabled = false;
  update(state);
});

// Drag to pan. Pointer capture keeps the drag alive outside the pane.
let dragging = false;
let lastX = 0;
let lastY = 0;

previewPane.addEventListener("pointerdown", (ev) => {
  if (imageBlob === null) return;
  dragging = true;
  lastX = ev.clientX;
  lastY = ev.clientY;
  previewPane.setPointerCapture(ev.pointerId);
});

previewPane.addEventListener("pointermove", (ev) => {
  if (!dragging) return;
  const dx = ev.clientX - lastX;
  const dy = ev.clientY - lastY;
  lastX = ev.clientX;
  lastY = ev.clientY;
  update(applyDrag(state, dx, dy, previewPane.clientWidth || undefined));
});

previewPane.addEventListener("pointerup", (ev) => {
  dragging = false;
  previewPane.releasePointerCapture(ev.pointerId);
});

function bindSlider(input: HTMLInputElement, apply: (v: number) => SelectionState): void {
  input.addEventListener("input", () => {
    const v = Number(input.value);
    if (Number.isFinite(v)) update(apply(v));
  });
}

bindSlider(yawSlider, (v) => ({ ...state, yaw: v }));
bindSlider(pitchSlider, (v) => ({ ...state, pitch: v }));
bindSlider(rollSlider, (v) => ({ ...state, roll: v }));
bindSlider(fovSlider, (v) => ({ ...state, fov: v }));
bindSlider(minimapSlider, (v) => ({ ...state, minimapFraction: v }));

shapeSelect.addEventListener("change", () => {
  update({ ...state, shape: shapeSelect.value as SelectionState["shape"] });
});
pageSelect.addEventListener("change", () => {
  update({ ...state, pageSize: pageSelect.value as SelectionState["pageSize"] });
});
orientationSelect.addEventListener("change", () => {
  update({
    ...state,
    pageOrientation: orientationSelect.value as SelectionState["pageOrientation"],
  });
});

async function download(endpoint: Endpoint, params: Record<string, unknown>): Promise<void> {
  if (imageBlob === null) return;
  clearError();
  statusLine.textContent = "building artifact…";
  try {
    const blob = await postArtifact(BASE_URL, endpoint, imageBlob, paramsJson(params));
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = downloadFileName(endpoint, state.shape);
    a.click();
    URL.revokeObjectURL(url);
    statusLine.textContent = "";
  } catch (err) {
    statusLine.textContent = "";
    showError(err);
  }
}

netButton.addEventListener("click", () => void download("net", netParams(state)));
flatButton.addEventListener("click", () => void download("flat", flatParams(state)));

netButton.disabled = true;
flatButton.disabled = true;
syncControls();
