import { afterEach, describe, expect, it, vi } from "vitest";

import { DebugServiceClient, ServiceError } from "../src/api.js";

function mockFetch(status: number, body: unknown) {
  return vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    text: async () => JSON.stringify(body),
  })) as unknown as typeof fetch;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("DebugServiceClient", () => {
  it("posts QASM and returns the session", async () => {
    const fetcher = mockFetch(200, { id: "abc", circuit: { n_qubits: 2 }, warnings: [] });
    vi.stubGlobal("fetch", fetcher);
    const client = new DebugServiceClient("http://x");
    const session = await client.createSession("OPENQASM 2.0;", "a.qasm");
    expect(session.id).toBe("abc");
    const call = (fetcher as any).mock.calls[0];
    expect(call[0]).toBe("http://x/sessions");
    expect(JSON.parse(call[1].body)).toEqual({ qasm: "OPENQASM 2.0;", name: "a.qasm" });
  });

  it("surfaces service error codes", async () => {
    vi.stubGlobal(
      "fetch",
      mockFetch(422, { error: "UnknownGateKind", message: "unknown gate kind 'zz'" }),
    );
    const client = new DebugServiceClient("");
    await expect(client.gates("sid", "zz")).rejects.toMatchObject({
      code: "UnknownGateKind",
      status: 422,
    });
  });

  it("carries parser diagnostics when loading fails", async () => {
    vi.stubGlobal(
      "fetch",
      mockFetch(422, {
        error: "QasmError",
        message: "QASM parse failed",
        diagnostics: ["f.qasm:3:1: error: unknown gate 'zz'"],
      }),
    );
    const client = new DebugServiceClient("");
    try {
      await client.createSession("bad", "f.qasm");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ServiceError);
      expect((err as ServiceError).diagnostics).toHaveLength(1);
    }
  });

  it("sends run requests with seed and shots", async () => {
    const fetcher = mockFetch(200, { kind: "counts", shots: 16, counts: { "0": 16 } });
    vi.stubGlobal("fetch", fetcher);
    const client = new DebugServiceClient("");
    await client.run("sid", {
      slice: 1,
      init: null,
      run_mode: "sampling",
      shots: 16,
      seed: 9,
    });
    const body = JSON.parse((fetcher as any).mock.calls[0][1].body);
    expect(body).toMatchObject({ slice: 1, run_mode: "sampling", shots: 16, seed: 9 });
  });
});
