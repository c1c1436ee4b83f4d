import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  FOV_UI_MAX,
  FOV_UI_MIN,
  MINIMAP_UI_MAX,
  applyDrag,
  clampState,
  defaultState,
  flatParams,
  netParams,
  paramsJson,
  previewParams,
  wrapDegrees,
} from "../src/state.js";

const GOLDEN_NET_PARAMS = readFileSync(
  new URL("./fixtures/default-net-params.json", import.meta.url),
  "utf8",
).trim();

describe("params serialization", () => {
  it("serializes default net params byte-for-byte to the golden fixture", () => {
    expect(paramsJson(netParams(defaultState()))).toBe(GOLDEN_NET_PARAMS);
  });

  it("parses back to the same object as the fixture", () => {
    expect(JSON.parse(paramsJson(netParams(defaultState())))).toEqual(
      JSON.parse(GOLDEN_NET_PARAMS),
    );
  });

  it("flat params carry the view, page, and minimap settings", () => {
    const p = flatParams({ ...defaultState(), yaw: 30, fov: 110, minimapFraction: 0.2 });
    expect(p).toEqual({
      yaw: 30,
      pitch: 0,
      roll: 0,
      fov: 110,
      out_w: 1600,
      out_h: 1200,
      supersample: 2,
      page_size: "a4",
      page_orientation: "portrait",
      dpi: 300,
      minimap_fraction: 0.2,
    });
  });

  it("preview params request the fixed preview size without page settings", () => {
    const p = previewParams(defaultState());
    expect(p).toEqual({ yaw: 0, pitch: 0, roll: 0, fov: 90, out_w: 800, out_h: 500 });
  });
});

describe("drag to pan", () => {
  it("a full-width drag at 90° fov pans exactly one field of view", () => {
    const s = applyDrag(defaultState(), 800, 0, 800);
    expect(s.yaw).toBe(-90);
    expect(s.pitch).toBe(0);
  });

  it("scales with fov: narrow views pan slower", () => {
    const s = applyDrag({ ...defaultState(), fov: 45 }, 400, 0, 800);
    expect(s.yaw).toBeCloseTo(-22.5, 12);
  });

  it("clamps pitch at straight up and straight down", () => {
    const up = applyDrag(defaultState(), 0, 5000, 800);
    const down = applyDrag(defaultState(), 0, -5000, 800);
    expect(up.pitch).toBe(90);
    expect(down.pitch).toBe(-90);
  });

  it("wraps yaw across the antimeridian instead of walking off the range", () => {
    const s = applyDrag({ ...defaultState(), yaw: 170 }, -800, 0, 800);
    expect(s.yaw).toBe(-100);
  });
});

describe("clamping", () => {
  it("wrapDegrees maps into (-180, 180] with 180 kept positive", () => {
    expect(wrapDegrees(180)).toBe(180);
    expect(wrapDegrees(-180)).toBe(180);
    expect(wrapDegrees(540)).toBe(180);
    expect(wrapDegrees(361)).toBe(1);
    expect(wrapDegrees(-361)).toBe(-1);
    expect(wrapDegrees(0)).toBe(0);
  });

  it("keeps fov and minimap fraction inside the UI limits", () => {
    const s = clampState({ ...defaultState(), fov: 1, minimapFraction: 0.9 });
    expect(s.fov).toBe(FOV_UI_MIN);
    expect(s.minimapFraction).toBe(MINIMAP_UI_MAX);
    const t = clampState({ ...defaultState(), fov: 500 });
    expect(t.fov).toBe(FOV_UI_MAX);
  });
});
