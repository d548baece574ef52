/** Session stepper: turns commands into frame changes.
 *
 * Index arithmetic follows the service's clamped navigation contract;
 * invariant-failure jumps are answered by the service itself.
 */

import type { Command } from "./keymap.js";
import { stepIndex } from "./state.js";
import type { Frame, FrameService } from "./types.js";

export class Stepper {
  current = 0;
  frame: Frame | null = null;

  constructor(
    private service: FrameService,
    private sessionId: string,
    private frameCount: number,
    private onFrame: (frame: Frame) => void,
  ) {}

  async start(): Promise<void> {
    await this.show(0);
  }

  private async show(n: number): Promise<void> {
    const frame = await this.service.getFrame(this.sessionId, n);
    this.current = n;
    this.frame = frame;
    this.onFrame(frame);
  }

  /** Handle a navigation command; zoom/pan commands are view concerns. */
  async handle(command: Command): Promise<void> {
    switch (command) {
      case "NEXT":
      case "PREV":
      case "BEGIN":
      case "END": {
        const target = stepIndex(this.current, this.frameCount, command);
        if (target !== this.current) await this.show(target);
        return;
      }
      case "JUMP_NEXT":
      case "JUMP_PREV": {
        const dir = command === "JUMP_NEXT" ? "next" : "prev";
        const target = await this.service.jump(this.sessionId, this.current, dir);
        if (target !== null) await this.show(target);
        return;
      }
      default:
        return;
    }
  }
}
