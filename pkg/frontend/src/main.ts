/** Browser wiring: form, three-part layout, keyboard and pointer input. */

import { ServiceClient, ServiceError } from "./api.js";
import { INSTRUCTIONS, commandForKey, type Command } from "./keymap.js";
import { buildMessages } from "./messages.js";
import { applyPatchesToDom, computePatches, indexSvg, type SvgIndex } from "./recolor.js";
import {
  ZOOM_STEP,
  clampPan,
  zoomBy,
  type Size,
  type ViewTransform,
} from "./state.js";
import { Stepper } from "./stepper.js";
import type { Frame, SessionInfo } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const client = new ServiceClient("");

let stepper: Stepper | null = null;
let svgIndex: SvgIndex | null = null;
let session: SessionInfo | null = null;
let view: ViewTransform = { zoom: 1, panX: 0, panY: 0 };
let contentSize: Size = { width: 1, height: 1 };

function viewportSize(): Size {
  const viewport = $("diagram-viewport");
  return { width: viewport.clientWidth || 1, height: viewport.clientHeight || 1 };
}

function applyView(): void {
  view = clampPan(view, viewportSize(), contentSize);
  $("diagram-content").style.transform =
    `translate(${view.panX}px, ${view.panY}px) scale(${view.zoom})`;
}

function renderMessages(frame: Frame): void {
  const messages = buildMessages(frame);
  const wordLine = $("msg-word");
  wordLine.textContent = "Input word: ";
  if (messages.wordSpans.length === 0) {
    const span = document.createElement("span");
    span.textContent = "ε";
    wordLine.appendChild(span);
  }
  for (const part of messages.wordSpans) {
    const span = document.createElement("span");
    span.textContent = part.text + " ";
    if (part.consumed) span.className = "faded";
    wordLine.appendChild(span);
  }
  $("msg-consumed").textContent = messages.consumedLine;
  $("msg-count").textContent = messages.countLine;
  const stack = $("msg-stack");
  stack.textContent = messages.stackLine ?? "";
  stack.hidden = messages.stackLine === null;
  const cutoff = $("msg-cutoff");
  cutoff.textContent = messages.cutoffLine ?? "";
  cutoff.hidden = messages.cutoffLine === null;
  const banner = $("msg-banner");
  banner.textContent = messages.banner ?? "";
  banner.hidden = messages.banner === null;
  banner.className = frame.verdict_banner === "ACCEPT" ? "banner accept" : "banner other";
  $("msg-frame").textContent = session
    ? `step ${frame.index} of ${session.frame_count - 1}`
    : "";
}

function onFrame(frame: Frame): void {
  if (svgIndex) {
    applyPatchesToDom($("diagram-content"), computePatches(frame, svgIndex));
  }
  renderMessages(frame);
}

function showError(message: string, retry: () => void): void {
  const box = $("error-box");
  box.hidden = false;
  box.textContent = message + " ";
  const button = document.createElement("button");
  button.textContent = "retry";
  button.addEventListener("click", () => {
    box.hidden = true;
    retry();
  });
  box.appendChild(button);
}

function parseWord(text: string): string[] {
  return text
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
}

async function loadSession(): Promise<void> {
  const machineText = ($("machine-json") as HTMLTextAreaElement).value;
  let machine: Record<string, unknown>;
  try {
    machine = JSON.parse(machineText);
  } catch (exc) {
    showError(`machine JSON does not parse: ${exc}`, loadSession);
    return;
  }
  if (!($("opt-invariants") as HTMLInputElement).checked) {
    delete machine.invariants;
  }
  const word = parseWord(($("opt-word") as HTMLInputElement).value);
  const options = {
    max_steps: Number(($("opt-max-steps") as HTMLInputElement).value) || 100,
    add_dead: ($("opt-add-dead") as HTMLInputElement).checked,
  };
  try {
    session = await client.createSession(machine, word, options);
    const svgText = await client.getDiagramSvg(session.id, 0);
    const content = $("diagram-content");
    content.innerHTML = svgText;
    const svg = content.querySelector("svg");
    contentSize = {
      width: Number(svg?.getAttribute("width")) || 600,
      height: Number(svg?.getAttribute("height")) || 400,
    };
    svgIndex = indexSvg(svgText);
    view = { zoom: 1, panX: 0, panY: 0 };
    applyView();
    stepper = new Stepper(client, session.id, session.frame_count, onFrame);
    await stepper.start();
  } catch (exc) {
    const detail = exc instanceof ServiceError ? `${exc.status}: ${exc.message}` : String(exc);
    showError(`could not create the session (${detail})`, loadSession);
  }
}

async function handleCommand(command: Command): Promise<void> {
  if (command === "ZOOM_IN" || command === "ZOOM_OUT") {
    view = zoomBy(view, command === "ZOOM_IN" ? ZOOM_STEP : 1 / ZOOM_STEP);
    applyView();
    return;
  }
  if (stepper) {
    try {
      await stepper.handle(command);
    } catch (exc) {
      showError(String(exc), () => {});
    }
  }
}

function buildInstructionBar(): void {
  const bar = $("instructions");
  for (const item of INSTRUCTIONS) {
    const button = document.createElement("button");
    button.className = "instruction";
    button.innerHTML = `<kbd>${item.key}</kbd><span>${item.label}</span>`;
    button.addEventListener("click", () => void handleCommand(item.command));
    bar.appendChild(button);
  }
}

function bindInput(): void {
  document.addEventListener("keydown", (event) => {
    if ((event.target as HTMLElement)?.tagName === "TEXTAREA") return;
    if ((event.target as HTMLElement)?.tagName === "INPUT") return;
    const command = commandForKey(event.key);
    if (command) {
      event.preventDefault();
      void handleCommand(command);
    }
  });

  const viewport = $("diagram-viewport");
  let dragging: { x: number; y: number } | null = null;
  viewport.addEventListener("pointerdown", (event) => {
    dragging = { x: event.clientX - view.panX, y: event.clientY - view.panY };
    viewport.setPointerCapture(event.pointerId);
  });
  viewport.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    view = { ...view, panX: event.clientX - dragging.x, panY: event.clientY - dragging.y };
    applyView();
  });
  viewport.addEventListener("pointerup", () => {
    dragging = null;
  });
}

function init(): void {
  buildInstructionBar();
  bindInput();
  $("load").addEventListener("click", () => void loadSession());
}

document.addEventListener("DOMContentLoaded", init);
