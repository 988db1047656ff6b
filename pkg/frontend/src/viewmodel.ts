// Pure view-model builders. Everything here is derived from service
// responses; no quantum math happens on the client. Charts display the
// `prob` / count values exactly as the API returned them.

import type {
  AmplitudeEntry,
  CircuitResponse,
  CountsResponse,
  GatesResponse,
  InstructionInfo,
  SliceSummary,
  StatevectorResponse,
  StateSpecJson,
} from "./types.js";

// ---- circuit grid -----------------------------------------------------------

export interface GridCell {
  row: number;
  text: string;
  role: "gate" | "control" | "target" | "connector" | "measure";
}

export interface GridColumn {
  sliceIndex: number;
  isBoundary: boolean;
  instructionIndices: number[];
  cells: GridCell[];
}

export interface CircuitGrid {
  qubitLabels: string[];
  columns: GridColumn[];
  boundaries: number[]; // column indices of breakbarrier dividers
}

const TWO_QUBIT_SYMBOLS: Record<string, [string, string]> = {
  cx: ["●", "⊕"],
  cz: ["●", "●"],
  cp: ["●", "P"],
  swap: ["✕", "✕"],
};

function cellsFor(ins: InstructionInfo): GridCell[] {
  const rows = ins.qubit_indices;
  if (ins.kind === "measure") {
    return [{ row: rows[0], text: "M", role: "measure" }];
  }
  if (ins.kind === "barrier") {
    return rows.map((r) => ({ row: r, text: "║", role: "connector" as const }));
  }
  if (rows.length === 1) {
    const label = ins.params.length
      ? `${ins.kind}(${ins.params.map((p) => p.toFixed(2)).join(",")})`
      : ins.kind;
    return [{ row: rows[0], text: label, role: "gate" }];
  }
  const cells: GridCell[] = [];
  if (ins.kind === "ccx" || ins.kind === "mcx") {
    const target = rows[rows.length - 1];
    for (const r of rows.slice(0, -1)) {
      cells.push({ row: r, text: "●", role: "control" });
    }
    cells.push({ row: target, text: "⊕", role: "target" });
  } else {
    const [a, b] = TWO_QUBIT_SYMBOLS[ins.kind] ?? [ins.kind, ins.kind];
    cells.push({ row: rows[0], text: a, role: "control" });
    cells.push({ row: rows[1], text: b, role: "target" });
  }
  const lo = Math.min(...rows);
  const hi = Math.max(...rows);
  for (let r = lo + 1; r < hi; r++) {
    if (!rows.includes(r)) {
      cells.push({ row: r, text: "│", role: "connector" });
    }
  }
  return cells;
}

export function buildCircuitGrid(circuit: CircuitResponse): CircuitGrid {
  const qubitLabels: string[] = [];
  for (const reg of circuit.qregs) {
    for (let i = 0; i < reg.size; i++) {
      qubitLabels.push(`${reg.name}[${i}]`);
    }
  }
  const n = qubitLabels.length;
  const free = new Array<number>(n).fill(0);
  const columns: GridColumn[] = [];
  const boundaries: number[] = [];
  let sliceIndex = 0;

  const columnAt = (col: number): GridColumn => {
    while (columns.length <= col) {
      columns.push({ sliceIndex, isBoundary: false, instructionIndices: [], cells: [] });
    }
    return columns[col];
  };

  for (const ins of circuit.instructions) {
    if (ins.kind === "breakbarrier") {
      const col = Math.max(...free, 0);
      const column = columnAt(col);
      column.isBoundary = true;
      column.instructionIndices.push(ins.index);
      boundaries.push(col);
      for (let r = 0; r < n; r++) {
        free[r] = col + 1;
      }
      sliceIndex += 1;
      // boundary columns belong to the slice they close
      column.sliceIndex = sliceIndex - 1;
      continue;
    }
    const rows = ins.qubit_indices;
    const lo = Math.min(...rows);
    const hi = Math.max(...rows);
    let col = 0;
    for (let r = lo; r <= hi; r++) {
      col = Math.max(col, free[r]);
    }
    const column = columnAt(col);
    column.sliceIndex = sliceIndex;
    column.instructionIndices.push(ins.index);
    column.cells.push(...cellsFor(ins));
    for (let r = lo; r <= hi; r++) {
      free[r] = col + 1;
    }
  }
  return { qubitLabels, columns, boundaries };
}

// ---- charts ------------------------------------------------------------------

export interface Bar {
  label: string;
  value: number; // exactly a number from the API response
  detail: string;
}

export function amplitudeBars(response: StatevectorResponse): Bar[] {
  return response.amplitudes.map((a: AmplitudeEntry) => ({
    label: a.bits,
    value: a.prob,
    detail: `re ${a.re}  im ${a.im}`,
  }));
}

export function amplitudeTable(response: StatevectorResponse): Array<[string, number, number]> {
  return response.amplitudes.map((a) => [a.bits, a.re, a.im]);
}

export function countBars(response: CountsResponse): Bar[] {
  return Object.entries(response.counts)
    .sort((x, y) => (y[1] - x[1]) || (x[0] < y[0] ? -1 : 1))
    .map(([label, count]) => ({
      label,
      value: count,
      detail: `${count} of ${response.shots} shots`,
    }));
}

// ---- outcome pattern masking ---------------------------------------------------

const WILDCARDS = new Set([".", "·", "*"]);

export function matchesPattern(outcome: string, pattern: string): boolean {
  const got = outcome.replace(/ /g, "");
  const want = pattern.replace(/ /g, "");
  if (got.length !== want.length) {
    throw new Error(`pattern covers ${want.length} bits but outcome has ${got.length}`);
  }
  for (let i = 0; i < want.length; i++) {
    if (!WILDCARDS.has(want[i]) && want[i] !== got[i]) {
      return false;
    }
  }
  return true;
}

export function maskCounts(
  counts: Record<string, number>,
  pattern: string,
): { counts: Record<string, number>; shots: number } {
  const kept: Record<string, number> = {};
  let shots = 0;
  for (const [outcome, count] of Object.entries(counts)) {
    if (matchesPattern(outcome, pattern)) {
      kept[outcome] = count;
      shots += count;
    }
  }
  return { counts: kept, shots };
}

// ---- slices and provenance -------------------------------------------------------

export interface SliceBadge {
  index: number;
  title: string;
  behaviour: string;
  complexity: string;
  warnings: string[];
}

export function sliceBadges(slices: SliceSummary[]): SliceBadge[] {
  return slices.map((s) => ({
    index: s.index,
    title: `slice ${s.index}: ${s.n_gates} gates, ${s.used_qubits}/${s.n_qubits} qubits`,
    behaviour: s.behaviour,
    complexity: s.complexity,
    warnings: s.warnings,
  }));
}

export interface ProvenanceRow {
  location: string;
  context: string;
  occurrences: number;
}

export function provenanceRows(response: GatesResponse): ProvenanceRow[] {
  return response.sites.map((s) => ({
    location: `${s.file}:${s.line}`,
    context: s.context,
    occurrences: s.occurrences,
  }));
}

export function gateKindsPresent(circuit: CircuitResponse): string[] {
  const kinds = new Set<string>();
  for (const ins of circuit.instructions) {
    if (ins.kind !== "barrier" && ins.kind !== "breakbarrier") {
      kinds.add(ins.kind);
    }
  }
  return [...kinds].sort();
}

// ---- run-panel validation ---------------------------------------------------------

export interface RunFormState {
  kind: StateSpecJson["kind"] | "zero";
  n: number;
  bits: string;
  k: string;
  runMode: "statevector" | "sampling";
  shots: string;
  seed: string;
}

export interface ValidatedRun {
  ok: boolean;
  error?: string;
  init?: StateSpecJson | null;
  shots?: number;
  seed?: number;
}

export function validateRunForm(form: RunFormState): ValidatedRun {
  let init: StateSpecJson | null = null;
  switch (form.kind) {
    case "zero":
      init = null;
      break;
    case "basis": {
      if (!new RegExp(`^[01]{${form.n}}$`).test(form.bits)) {
        return { ok: false, error: `basis bits must be ${form.n} characters of 0/1` };
      }
      init = { kind: "basis", n: form.n, bits: form.bits };
      break;
    }
    case "dicke": {
      const k = Number(form.k);
      if (!Number.isInteger(k) || k < 0 || k > form.n) {
        return { ok: false, error: `dicke k must be an integer in 0..${form.n}` };
      }
      init = { kind: "dicke", n: form.n, k };
      break;
    }
    case "uniform":
    case "ghz":
    case "w":
      init = { kind: form.kind, n: form.n };
      break;
    default:
      return { ok: false, error: `unsupported state kind ${form.kind}` };
  }
  if (form.runMode === "sampling") {
    const shots = Number(form.shots);
    const seed = Number(form.seed);
    if (!Number.isInteger(shots) || shots < 1) {
      return { ok: false, error: "shots must be a positive integer" };
    }
    if (!Number.isInteger(seed)) {
      return { ok: false, error: "seed must be an integer" };
    }
    return { ok: true, init, shots, seed };
  }
  return { ok: true, init };
}
