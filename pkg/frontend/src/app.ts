// Application wiring: one debugging session per tab. Every mutation waits
// for the service response before re-rendering.

import { DebugServiceClient, ServiceError } from "./api.js";
import type {
  CircuitResponse,
  CountsResponse,
  RunResponse,
  SliceSummary,
  StatevectorResponse,
} from "./types.js";
import {
  amplitudeBars,
  amplitudeTable,
  buildCircuitGrid,
  countBars,
  gateKindsPresent,
  maskCounts,
  provenanceRows,
  sliceBadges,
  validateRunForm,
  type RunFormState,
} from "./viewmodel.js";
import {
  banner,
  clear,
  el,
  renderAmplitudeTable,
  renderBadges,
  renderBars,
  renderGrid,
  renderProvenance,
} from "./render.js";

interface AppState {
  sessionId: string | null;
  circuit: CircuitResponse | null;
  slices: SliceSummary[];
  mode: string;
  selectedSlice: number | null;
  lastRun: RunResponse | null;
  showTable: boolean;
  pattern: string;
}

const client = new DebugServiceClient("");
const state: AppState = {
  sessionId: null,
  circuit: null,
  slices: [],
  mode: "standalone",
  selectedSlice: null,
  lastRun: null,
  showTable: false,
  pattern: "",
};

const $ = (id: string) => document.getElementById(id) as HTMLElement;

function reportError(err: unknown): void {
  if (err instanceof ServiceError) {
    banner($("banners"), err.code, err.message);
  } else {
    banner($("banners"), "ClientError", String(err));
  }
}

async function guard<T>(work: () => Promise<T>): Promise<T | undefined> {
  try {
    return await work();
  } catch (err) {
    reportError(err);
    return undefined;
  }
}

// ---- loading -----------------------------------------------------------------

async function loadCircuit(qasm: string, name: string): Promise<void> {
  const created = await guard(() => client.createSession(qasm, name));
  if (!created) return;
  state.sessionId = created.id;
  state.slices = [];
  state.selectedSlice = null;
  state.lastRun = null;
  for (const warning of created.warnings) {
    banner($("banners"), "warning", warning);
  }
  await refreshCircuit();
  renderAll();
}

async function refreshCircuit(): Promise<void> {
  if (!state.sessionId) return;
  const circuit = await guard(() => client.circuit(state.sessionId!));
  if (circuit) state.circuit = circuit;
}

async function resliceAndRender(): Promise<void> {
  if (!state.sessionId) return;
  const sliced = await guard(() => client.slices(state.sessionId!, state.mode));
  if (sliced) {
    state.slices = sliced.slices;
    if (state.selectedSlice !== null && state.selectedSlice >= state.slices.length) {
      state.selectedSlice = null;
    }
  }
  renderAll();
}

// ---- rendering ------------------------------------------------------------------

function renderAll(): void {
  renderCircuitPanel();
  renderSlicePanel();
  renderRunPanel();
  renderProvenancePanel();
}

function renderCircuitPanel(): void {
  const host = $("circuit-panel");
  clear(host);
  if (!state.circuit) {
    host.appendChild(el("p", "hint", "Paste QASM on the left and load it."));
    return;
  }
  const summary = el(
    "p",
    "summary",
    `${state.circuit.name}: ${state.circuit.n_qubits} qubits, ` +
      `${state.circuit.n_instructions} instructions, ` +
      `${state.circuit.breakbarriers.length} breakbarriers`,
  );
  host.appendChild(summary);
  const grid = buildCircuitGrid(state.circuit);
  host.appendChild(
    renderGrid(grid, state.selectedSlice, (k) => {
      void guard(() => client.removeBreakbarrier(state.sessionId!, k)).then(async (ok) => {
        if (ok) {
          await refreshCircuit();
          await resliceAndRender();
        }
      });
    }),
  );
}

function renderSlicePanel(): void {
  const host = $("slice-panel");
  clear(host);
  if (!state.slices.length) {
    host.appendChild(el("p", "hint", "Add breakbarriers, then slice."));
    return;
  }
  host.appendChild(
    renderBadges(sliceBadges(state.slices), state.selectedSlice, (index) => {
      state.selectedSlice = index;
      renderAll();
    }),
  );
}

function currentRunTarget(): { slice: number | "full"; nQubits: number } {
  if (state.selectedSlice !== null && state.slices[state.selectedSlice]) {
    const s = state.slices[state.selectedSlice];
    return { slice: s.index, nQubits: s.n_qubits };
  }
  return { slice: "full", nQubits: state.circuit?.n_qubits ?? 0 };
}

function readRunForm(): RunFormState {
  const target = currentRunTarget();
  return {
    kind: (document.getElementById("init-kind") as HTMLSelectElement).value as RunFormState["kind"],
    n: target.nQubits,
    bits: (document.getElementById("init-bits") as HTMLInputElement).value,
    k: (document.getElementById("init-k") as HTMLInputElement).value,
    runMode: (document.getElementById("run-mode") as HTMLSelectElement)
      .value as RunFormState["runMode"],
    shots: (document.getElementById("shots") as HTMLInputElement).value,
    seed: (document.getElementById("seed") as HTMLInputElement).value,
  };
}

function renderRunPanel(): void {
  const target = currentRunTarget();
  $("run-target").textContent = state.circuit
    ? `target: slice ${target.slice} (${target.nQubits} qubits)`
    : "no circuit loaded";

  const form = readRunForm();
  const validated = validateRunForm(form);
  const button = document.getElementById("run-button") as HTMLButtonElement;
  button.disabled = !state.circuit || !validated.ok;
  $("run-validation").textContent = validated.ok ? "" : validated.error ?? "";

  const results = $("run-results");
  clear(results);
  if (!state.lastRun) return;
  if (state.lastRun.kind === "statevector") {
    const response = state.lastRun as StatevectorResponse;
    results.appendChild(
      renderBars(amplitudeBars(response), `probabilities (${response.amplitudes.length} basis states)`),
    );
    const toggle = el("button", "toggle", state.showTable ? "hide re/im" : "show re/im");
    toggle.onclick = () => {
      state.showTable = !state.showTable;
      renderRunPanel();
    };
    results.appendChild(toggle);
    if (state.showTable) {
      results.appendChild(renderAmplitudeTable(amplitudeTable(response)));
    }
  } else {
    const response = state.lastRun as CountsResponse;
    let counts = response.counts;
    let caption = `counts over ${response.shots} shots`;
    if (state.pattern.trim()) {
      try {
        const masked = maskCounts(counts, state.pattern.trim());
        counts = masked.counts;
        caption = `matched ${masked.shots} of ${response.shots} shots`;
      } catch (err) {
        $("run-validation").textContent = String(err);
      }
    }
    results.appendChild(renderBars(countBars({ ...response, counts }), caption));
  }
}

function renderProvenancePanel(): void {
  const host = $("gate-kinds");
  clear(host);
  if (!state.circuit) return;
  for (const kind of gateKindsPresent(state.circuit)) {
    const button = el("button", "gate-kind", kind);
    button.onclick = () => {
      void guard(() => client.gates(state.sessionId!, kind)).then((response) => {
        if (!response) return;
        const panel = $("provenance-panel");
        clear(panel);
        panel.appendChild(renderProvenance(response.kind, response.total, provenanceRows(response)));
      });
    };
    host.appendChild(button);
  }
}

// ---- event wiring -----------------------------------------------------------------

function wire(): void {
  (document.getElementById("load-button") as HTMLButtonElement).onclick = () => {
    const qasm = (document.getElementById("qasm-input") as HTMLTextAreaElement).value;
    const name = (document.getElementById("circuit-name") as HTMLInputElement).value || "pasted.qasm";
    void loadCircuit(qasm, name);
  };

  (document.getElementById("qasm-file") as HTMLInputElement).onchange = async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    const text = await file.text();
    (document.getElementById("qasm-input") as HTMLTextAreaElement).value = text;
    (document.getElementById("circuit-name") as HTMLInputElement).value = file.name;
  };

  (document.getElementById("break-add") as HTMLButtonElement).onclick = () => {
    const position = Number((document.getElementById("break-pos") as HTMLInputElement).value);
    void guard(() => client.addBreakbarrier(state.sessionId!, position)).then(async (ok) => {
      if (ok) {
        await refreshCircuit();
        await resliceAndRender();
      }
    });
  };

  (document.getElementById("slice-button") as HTMLButtonElement).onclick = () => {
    state.mode = (document.getElementById("slice-mode") as HTMLSelectElement).value;
    void resliceAndRender();
  };

  (document.getElementById("hslice-button") as HTMLButtonElement).onclick = () => {
    if (state.selectedSlice === null) return;
    void guard(() => client.hslice(state.sessionId!, state.selectedSlice!)).then((sliced) => {
      if (sliced) {
        state.slices = sliced.slices;
        renderAll();
      }
    });
  };

  (document.getElementById("run-button") as HTMLButtonElement).onclick = () => {
    const form = readRunForm();
    const validated = validateRunForm(form);
    if (!validated.ok || !state.sessionId) return;
    const target = currentRunTarget();
    void guard(() =>
      client.run(state.sessionId!, {
        slice: target.slice,
        init: validated.init ?? null,
        run_mode: form.runMode,
        shots: validated.shots,
        seed: validated.seed,
      }),
    ).then((response) => {
      if (response) {
        state.lastRun = response;
        renderRunPanel();
      }
    });
  };

  (document.getElementById("pattern-input") as HTMLInputElement).oninput = (event) => {
    state.pattern = (event.target as HTMLInputElement).value;
    renderRunPanel();
  };

  for (const id of ["init-kind", "init-bits", "init-k", "run-mode", "shots", "seed"]) {
    (document.getElementById(id) as HTMLElement).addEventListener("input", () => renderRunPanel());
  }

  void client
    .health()
    .catch(() => banner($("banners"), "ServiceUnreachable", "is `qcdb serve` running?"));
}

document.addEventListener("DOMContentLoaded", () => {
  wire();
  renderAll();
});
