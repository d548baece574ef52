/** Informative-message model for the middle region of the stepper. */

import type { Frame } from "./types.js";

export interface WordSpan {
  text: string;
  consumed: boolean; // consumed symbols render faded
}

export interface Messages {
  wordSpans: WordSpan[];
  consumedLine: string;
  stackLine: string | null;
  countLine: string;
  cutoffLine: string | null;
  banner: string | null;
}

function joinWord(symbols: string[]): string {
  return symbols.length === 0 ? "ε" : symbols.join(" ");
}

export function buildMessages(frame: Frame): Messages {
  const wordSpans: WordSpan[] = [
    ...frame.consumed.map((text) => ({ text, consumed: true })),
    ...frame.unconsumed.map((text) => ({ text, consumed: false })),
  ];
  const plural = frame.computation_count === 1 ? "computation" : "computations";
  return {
    wordSpans,
    consumedLine: `Consumed input: ${joinWord(frame.consumed)}`,
    stackLine:
      frame.tracked_stack === null
        ? null
        : `Stack (tracked accepting computation): ${joinWord(frame.tracked_stack)}`,
    countLine: `${frame.computation_count} ${plural} without a shared configuration`,
    cutoffLine:
      frame.cutoff_count > 0 ? `${frame.cutoff_count} cut off computations` : null,
    banner:
      frame.verdict_banner === null
        ? null
        : frame.verdict_banner === "ACCEPT"
          ? "There is an accepting computation: the word is accepted."
          : frame.verdict_banner === "REJECT"
            ? "All computations halt without accepting: the word is rejected."
            : "Some computations were cut off; raise the cutoff threshold to explore further.",
  };
}
