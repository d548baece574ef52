/** Frame-to-SVG recoloring.
 *
 * The diagram SVG is fetched once per session; stepping between frames only
 * patches attributes (edge group `color`, node body `fill`), so node
 * positions never change.  Colors come verbatim from the frame payload; the
 * UI adds no semantics of its own.
 */

import type { EdgeColor, Frame, NodeColor } from "./types.js";

export const EDGE_COLORS: Readonly<Record<EdgeColor, string>> = {
  GREEN: "#228B22",
  DARK_GREEN: "#006400",
  VIOLET: "#7F00FF",
};

export const NODE_FILLS: Readonly<Record<NodeColor, string>> = {
  GOLD: "#DAA520",
  INV_GREEN: "#22AA22",
  INV_RED: "#CC0000",
  INV_BICOLOR: "url(#bicolor-split)",
};

export const DEFAULT_EDGE_COLOR = "#000000";
export const DEFAULT_NODE_FILL = "#FFFFFF";

export interface EdgePatch {
  kind: "edge";
  edge: string; // data-edge value, e.g. "S->A"
  color: string;
}

export interface NodePatch {
  kind: "node";
  state: string; // data-state value
  fill: string;
}

export type Patch = EdgePatch | NodePatch;

export interface SvgIndex {
  /** data-edge value -> rule indices drawn on that edge */
  edges: Map<string, number[]>;
  states: string[];
}

const EDGE_GROUP_RE = /<g data-edge="([^"]*)" data-rules="([^"]*)"/g;
const NODE_GROUP_RE = /<g data-state="([^"]*)"/g;

function decodeEntities(text: string): string {
  return text
    .replace(/&gt;/g, ">")
    .replace(/&lt;/g, "<")
    .replace(/&amp;/g, "&");
}

function encodeEntities(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

/** Build the rule->edge index from the served SVG text. */
export function indexSvg(svgText: string): SvgIndex {
  const edges = new Map<string, number[]>();
  for (const match of svgText.matchAll(EDGE_GROUP_RE)) {
    const id = decodeEntities(match[1]);
    const rules = match[2] === "" ? [] : match[2].split(",").map(Number);
    edges.set(id, rules);
  }
  const states: string[] = [];
  for (const match of svgText.matchAll(NODE_GROUP_RE)) {
    states.push(decodeEntities(match[1]));
  }
  return { edges, states };
}

/**
 * All attribute patches needed to show `frame`: every edge and node is reset
 * to its default, then the frame's highlights and decorations are applied.
 * When several highlighted rules share a drawn edge, the strongest color
 * wins (DARK_GREEN over GREEN over VIOLET), matching the server's own
 * prioritization.
 */
export function computePatches(frame: Frame, index: SvgIndex): Patch[] {
  const strength: Record<EdgeColor, number> = { VIOLET: 0, GREEN: 1, DARK_GREEN: 2 };
  const byRule = new Map<number, EdgeColor>(frame.highlighted_edges);
  const patches: Patch[] = [];
  for (const edge of [...index.edges.keys()].sort()) {
    let best: EdgeColor | null = null;
    for (const rule of index.edges.get(edge) ?? []) {
      const color = byRule.get(rule);
      if (color && (best === null || strength[color] > strength[best])) {
        best = color;
      }
    }
    patches.push({
      kind: "edge",
      edge,
      color: best === null ? DEFAULT_EDGE_COLOR : EDGE_COLORS[best],
    });
  }
  for (const state of [...index.states].sort()) {
    const decoration = frame.node_decorations[state];
    patches.push({
      kind: "node",
      state,
      fill: decoration ? NODE_FILLS[decoration] : DEFAULT_NODE_FILL,
    });
  }
  return patches;
}

/** Apply patches to live SVG DOM (browser path). */
export function applyPatchesToDom(root: ParentNode, patches: Patch[]): void {
  for (const patch of patches) {
    if (patch.kind === "edge") {
      const group = root.querySelector(`[data-edge="${cssEscape(patch.edge)}"]`);
      group?.setAttribute("color", patch.color);
    } else {
      const circle = root.querySelector(
        `[data-state="${cssEscape(patch.state)}"] circle.body`,
      );
      circle?.setAttribute("fill", patch.fill);
    }
  }
}

function cssEscape(value: string): string {
  return value.replace(/["\\]/g, (c) => `\\${c}`);
}

/**
 * Pure-text twin of applyPatchesToDom, used by tests to prove that stepping
 * is an attribute-only diff: geometry never changes.
 */
export function applyPatchesToSvgText(svgText: string, patches: Patch[]): string {
  let out = svgText;
  for (const patch of patches) {
    if (patch.kind === "edge") {
      const id = encodeEntities(patch.edge).replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
      out = out.replace(
        new RegExp(`(<g data-edge="${id}" data-rules="[^"]*" color=")[^"]*(")`),
        `$1${patch.color}$2`,
      );
    } else {
      const id = encodeEntities(patch.state).replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
      out = out.replace(
        new RegExp(
          `(<g data-state="${id}">\\s*<circle class="body"[^>]*fill=")[^"]*(")`,
        ),
        `$1${patch.fill}$2`,
      );
    }
  }
  return out;
}
