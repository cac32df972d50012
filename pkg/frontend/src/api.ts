/** Typed client for the emulation service's HTTP/JSON API. */

import { parseSse } from "./sse";

export interface SessionConfig {
  architecture?: "recurrent" | "hybrid";
  weight_bits?: number;
  phase_bits?: number;
  hybrid_sampling?: "pipelined" | "aligned";
  logic_frequency_hz?: number;
}

export interface TrainingOptions {
  stability_threshold?: number;
  max_epochs?: number;
}

export interface Stability {
  converged: boolean;
  epochs: number;
  scale: number;
  pattern_stable: boolean[];
}

export interface SessionInfo {
  session_id: string;
  config: Required<SessionConfig> & { n_oscillators: number };
  stability: Stability;
}

export interface CorruptOption {
  fraction: number;
  seed: number;
}

export interface RetrieveOptions {
  max_periods?: number;
  stability_window?: number;
  corrupt?: CorruptOption;
}

export interface RetrieveResult {
  settled: boolean;
  timed_out: boolean;
  cycles_to_settle: number;
  pattern: number[][];
  probe: number[][];
  corruption: CorruptOption | null;
  trace_id: string;
  frames: number;
}

export interface TraceFrame {
  index: number;
  relative_phases: number[];
  pattern: number[][];
}

export interface TraceSummary {
  settled: boolean;
  timed_out: boolean;
  cycles_to_settle: number;
  pattern: number[][];
}

export type TraceEvent =
  | { kind: "frame"; frame: TraceFrame }
  | { kind: "summary"; summary: TraceSummary };

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base.replace(/\/$/, "")}${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(this.url("/healthz"));
      return response.ok;
    } catch {
      return false;
    }
  }

  async createSession(
    patterns: number[][][],
    config?: SessionConfig,
    training?: TrainingOptions,
  ): Promise<SessionInfo> {
    const response = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ patterns, config, training }),
    });
    await raiseForStatus(response);
    return response.json();
  }

  async retrieve(
    sessionId: string,
    pattern: number[][],
    options?: RetrieveOptions,
  ): Promise<RetrieveResult> {
    const response = await fetch(this.url(`/sessions/${sessionId}/retrieve`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ pattern, options }),
    });
    await raiseForStatus(response);
    return response.json();
  }

  async *streamTrace(
    sessionId: string,
    traceId: string,
  ): AsyncGenerator<TraceEvent> {
    const response = await fetch(
      this.url(`/sessions/${sessionId}/traces/${traceId}`),
    );
    await raiseForStatus(response);
    if (!response.body) throw new ApiError(0, "trace response has no body");
    for await (const event of parseSse(response.body)) {
      if (event.event === "frame") {
        yield { kind: "frame", frame: JSON.parse(event.data) };
      } else if (event.event === "summary") {
        yield { kind: "summary", summary: JSON.parse(event.data) };
      }
    }
  }
}
