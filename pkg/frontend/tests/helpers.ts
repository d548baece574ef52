import { readFileSync } from "node:fs";

import type { Frame, FrameService } from "../src/types.js";

export interface FramesDump {
  word: string[];
  verdict: string;
  frame_count: number;
  frames: Frame[];
}

export function loadFrames(name: string): FramesDump {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8"));
}

export function loadSvg(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
}

/** Serves fixture frames; answers jump exactly like the service contract. */
export class FakeService implements FrameService {
  calls: string[] = [];

  constructor(private frames: Frame[]) {}

  async getFrame(_id: string, n: number): Promise<Frame> {
    this.calls.push(`frame:${n}`);
    if (n < 0 || n >= this.frames.length) throw new Error("frame out of range");
    return structuredClone(this.frames[n]);
  }

  async jump(_id: string, from: number, dir: "next" | "prev"): Promise<number | null> {
    this.calls.push(`jump:${from}:${dir}`);
    const failing = (frame: Frame) =>
      Object.values(frame.node_decorations).some(
        (c) => c === "INV_RED" || c === "INV_BICOLOR",
      );
    if (dir === "next") {
      for (let i = from + 1; i < this.frames.length; i++) {
        if (failing(this.frames[i])) return i;
      }
    } else {
      for (let i = from - 1; i >= 0; i--) {
        if (failing(this.frames[i])) return i;
      }
    }
    return null;
  }
}
