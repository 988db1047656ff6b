// Thin typed client for the debug service. Every mutation awaits the
// response before the caller re-renders; there is no optimistic state.

import type {
  ApiError,
  CircuitResponse,
  CircuitSummary,
  GatesResponse,
  RunRequest,
  RunResponse,
  SessionResponse,
  SlicesResponse,
} from "./types.js";

export class ServiceError extends Error {
  readonly code: string;
  readonly status: number;
  readonly diagnostics: string[];

  constructor(status: number, body: ApiError) {
    super(body.message ?? body.error);
    this.code = body.error ?? "UnknownError";
    this.status = status;
    this.diagnostics = body.diagnostics ?? [];
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(base + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const text = await response.text();
  const body = text ? JSON.parse(text) : {};
  if (!response.ok) {
    throw new ServiceError(response.status, body as ApiError);
  }
  return body as T;
}

export class DebugServiceClient {
  constructor(readonly base: string = "") {}

  health(): Promise<{ ok: boolean }> {
    return request(this.base, "/healthz");
  }

  createSession(qasm: string, name: string): Promise<SessionResponse> {
    return request(this.base, "/sessions", {
      method: "POST",
      body: JSON.stringify({ qasm, name }),
    });
  }

  circuit(sessionId: string): Promise<CircuitResponse> {
    return request(this.base, `/sessions/${sessionId}/circuit`);
  }

  addBreakbarrier(sessionId: string, position: number): Promise<CircuitSummary> {
    return request(this.base, `/sessions/${sessionId}/breakbarriers`, {
      method: "POST",
      body: JSON.stringify({ position }),
    });
  }

  removeBreakbarrier(sessionId: string, k: number): Promise<CircuitSummary> {
    return request(this.base, `/sessions/${sessionId}/breakbarriers/${k}`, {
      method: "DELETE",
    });
  }

  slices(sessionId: string, mode: string): Promise<SlicesResponse> {
    return request(this.base, `/sessions/${sessionId}/slices`, {
      method: "POST",
      body: JSON.stringify({ mode }),
    });
  }

  hslice(sessionId: string, slice: number): Promise<SlicesResponse> {
    return request(this.base, `/sessions/${sessionId}/hslice`, {
      method: "POST",
      body: JSON.stringify({ slice }),
    });
  }

  run(sessionId: string, body: RunRequest): Promise<RunResponse> {
    return request(this.base, `/sessions/${sessionId}/run`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  gates(sessionId: string, kind: string): Promise<GatesResponse> {
    return request(this.base, `/sessions/${sessionId}/gates/${kind}`);
  }
}
