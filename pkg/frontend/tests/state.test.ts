import { describe, expect, it } from "vitest";

import { KEY_BINDINGS, commandForKey } from "../src/keymap.js";
import {
  PAN_MARGIN,
  ZOOM_MAX,
  ZOOM_MIN,
  clampPan,
  clampZoom,
  stepIndex,
  zoomBy,
} from "../src/state.js";

describe("zoom", () => {
  it("clamps to [0.25, 4]", () => {
    expect(clampZoom(0.01)).toBe(ZOOM_MIN);
    expect(clampZoom(99)).toBe(ZOOM_MAX);
    expect(clampZoom(1)).toBe(1);
  });

  it("zoomBy saturates at the bounds", () => {
    let view = { zoom: 3.9, panX: 0, panY: 0 };
    view = zoomBy(view, 2);
    expect(view.zoom).toBe(ZOOM_MAX);
    view = zoomBy(view, 1 / 100);
    expect(view.zoom).toBe(ZOOM_MIN);
  });
});

describe("pan clamping keeps part of the diagram visible", () => {
  const viewport = { width: 800, height: 600 };
  const content = { width: 500, height: 400 };

  it("clamps a drag far off to the right/bottom", () => {
    const view = clampPan({ zoom: 1, panX: 5000, panY: 5000 }, viewport, content);
    expect(view.panX).toBe(viewport.width - PAN_MARGIN);
    expect(view.panY).toBe(viewport.height - PAN_MARGIN);
  });

  it("clamps a drag far off to the left/top", () => {
    const view = clampPan({ zoom: 1, panX: -5000, panY: -5000 }, viewport, content);
    expect(view.panX).toBe(PAN_MARGIN - content.width);
    expect(view.panY).toBe(PAN_MARGIN - content.height);
  });

  it("always leaves an overlap, for any zoom and offset", () => {
    for (const zoom of [0.25, 0.7, 1, 2.3, 4]) {
      for (const pan of [-9999, -100, 0, 350, 9999]) {
        const view = clampPan({ zoom, panX: pan, panY: -pan }, viewport, content);
        const right = view.panX + content.width * zoom;
        const bottom = view.panY + content.height * zoom;
        expect(right).toBeGreaterThan(0);
        expect(bottom).toBeGreaterThan(0);
        expect(view.panX).toBeLessThan(viewport.width);
        expect(view.panY).toBeLessThan(viewport.height);
      }
    }
  });
});

describe("frame index arithmetic", () => {
  it("clamps next/prev and jumps to the ends", () => {
    expect(stepIndex(0, 6, "NEXT")).toBe(1);
    expect(stepIndex(5, 6, "NEXT")).toBe(5);
    expect(stepIndex(0, 6, "PREV")).toBe(0);
    expect(stepIndex(3, 6, "BEGIN")).toBe(0);
    expect(stepIndex(0, 6, "END")).toBe(5);
  });
});

describe("key bindings", () => {
  it("are frozen for the session lifetime", () => {
    expect(Object.isFrozen(KEY_BINDINGS)).toBe(true);
    expect(() => {
      (KEY_BINDINGS as Record<string, string>).ArrowRight = "PREV";
    }).toThrow();
  });

  it("map the documented keys", () => {
    expect(commandForKey("ArrowRight")).toBe("NEXT");
    expect(commandForKey("ArrowLeft")).toBe("PREV");
    expect(commandForKey("Home")).toBe("BEGIN");
    expect(commandForKey("End")).toBe("END");
    expect(commandForKey("j")).toBe("JUMP_NEXT");
    expect(commandForKey("J")).toBe("JUMP_PREV");
    expect(commandForKey("+")).toBe("ZOOM_IN");
    expect(commandForKey("-")).toBe("ZOOM_OUT");
    expect(commandForKey("x")).toBeNull();
  });
});
