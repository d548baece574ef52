/** Thin client for the session service; at most one in-flight frame request. */

import type { Frame, FrameService, SessionInfo, SessionOptions } from "./types.js";

export class ServiceError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      detail = body.error ?? detail;
      if (body.violations?.length) detail += `: ${body.violations.join("; ")}`;
    } catch {
      // keep the status text
    }
    throw new ServiceError(response.status, detail);
  }
  return response;
}

export class ServiceClient implements FrameService {
  private inflightFrame: AbortController | null = null;

  constructor(private baseUrl: string = "") {}

  async createSession(
    machine: unknown,
    word: string[],
    options: SessionOptions,
  ): Promise<SessionInfo> {
    const response = await expectOk(
      await fetch(`${this.baseUrl}/sessions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ machine, word, options }),
      }),
    );
    return response.json();
  }

  async getFrame(id: string, n: number): Promise<Frame> {
    // a newer frame request supersedes (and cancels) the previous one
    this.inflightFrame?.abort();
    const controller = new AbortController();
    this.inflightFrame = controller;
    try {
      const response = await expectOk(
        await fetch(`${this.baseUrl}/sessions/${id}/frames/${n}`, {
          signal: controller.signal,
        }),
      );
      return response.json();
    } finally {
      if (this.inflightFrame === controller) this.inflightFrame = null;
    }
  }

  async getDiagramSvg(id: string, n: number): Promise<string> {
    const response = await expectOk(
      await fetch(`${this.baseUrl}/sessions/${id}/diagram/${n}?format=svg`),
    );
    return response.text();
  }

  async jump(id: string, from: number, dir: "next" | "prev"): Promise<number | null> {
    const response = await expectOk(
      await fetch(`${this.baseUrl}/sessions/${id}/jump?from=${from}&dir=${dir}`),
    );
    const body = await response.json();
    return body.frame;
  }

  async deleteSession(id: string): Promise<void> {
    await fetch(`${this.baseUrl}/sessions/${id}`, { method: "DELETE" });
  }
}
