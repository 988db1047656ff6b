// JSON shapes returned by the debug service (docs/api.md in the repo root).

export interface RegisterInfo {
  name: string;
  size: number;
}

export interface CircuitSummary {
  name: string;
  qregs: RegisterInfo[];
  cregs: RegisterInfo[];
  n_qubits: number;
  n_instructions: number;
  breakbarriers: number[];
}

export interface Provenance {
  file: string;
  line: number;
  column: number;
  context: string;
  label: string;
}

export interface InstructionInfo {
  index: number;
  kind: string;
  params: number[];
  qubits: string[];
  qubit_indices: number[];
  clbits: string[];
  provenance: Provenance;
}

export interface CircuitResponse extends CircuitSummary {
  instructions: InstructionInfo[];
}

export interface SessionResponse {
  id: string;
  circuit: CircuitSummary;
  warnings: string[];
}

export interface EvidenceCounts {
  permutation: number;
  diagonal_phase: number;
  amplitude_mixing: number;
}

export interface SliceSummary {
  index: number;
  mode: string;
  n_gates: number;
  n_qubits: number;
  used_qubits: number;
  has_measurement: boolean;
  behaviour: "pseudo_classical" | "full_quantum";
  complexity: "simple" | "complex";
  evidence: EvidenceCounts;
  removed_qubits: string[];
  warnings: string[];
}

export interface SlicesResponse {
  mode: string;
  slices: SliceSummary[];
}

export interface AmplitudeEntry {
  bits: string;
  re: number;
  im: number;
  prob: number;
}

export interface StatevectorResponse {
  kind: "statevector";
  n: number;
  amplitudes: AmplitudeEntry[];
}

export interface CountsResponse {
  kind: "counts";
  shots: number;
  counts: Record<string, number>;
}

export type RunResponse = StatevectorResponse | CountsResponse;

export interface GateSite extends Provenance {
  occurrences: number;
}

export interface GatesResponse {
  kind: string;
  total: number;
  sites: GateSite[];
  report: string;
}

export interface ApiError {
  error: string;
  message: string;
  diagnostics?: string[];
}

export interface StateSpecJson {
  kind: "basis" | "uniform" | "ghz" | "w" | "dicke" | "explicit";
  n: number;
  bits?: string;
  k?: number;
  amps?: Array<[number, number]>;
}

export interface RunRequest {
  slice: number | "full";
  init: StateSpecJson | string | null;
  run_mode: "statevector" | "sampling";
  shots?: number;
  seed?: number;
}
