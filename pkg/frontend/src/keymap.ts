/** Keyboard bindings; constant for the whole session. */

export type Command =
  | "NEXT"
  | "PREV"
  | "BEGIN"
  | "END"
  | "JUMP_NEXT"
  | "JUMP_PREV"
  | "ZOOM_IN"
  | "ZOOM_OUT";

export const KEY_BINDINGS: Readonly<Record<string, Command>> = Object.freeze({
  ArrowRight: "NEXT",
  ArrowLeft: "PREV",
  Home: "BEGIN",
  End: "END",
  j: "JUMP_NEXT",
  J: "JUMP_PREV",
  "+": "ZOOM_IN",
  "=": "ZOOM_IN",
  "-": "ZOOM_OUT",
});

/** Instruction bar entries: every key is also a clickable icon. */
export const INSTRUCTIONS: readonly { key: string; command: Command; label: string }[] = [
  { key: "←", command: "PREV", label: "step back" },
  { key: "→", command: "NEXT", label: "step forward" },
  { key: "Home", command: "BEGIN", label: "to beginning" },
  { key: "End", command: "END", label: "to end" },
  { key: "j", command: "JUMP_NEXT", label: "next failed invariant" },
  { key: "J", command: "JUMP_PREV", label: "previous failed invariant" },
  { key: "+", command: "ZOOM_IN", label: "zoom in" },
  { key: "−", command: "ZOOM_OUT", label: "zoom out" },
];

export function commandForKey(key: string): Command | null {
  return KEY_BINDINGS[key] ?? null;
}
