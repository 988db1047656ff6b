"""Debugging session state shared by the REPL shell and the HTTP service.

A session holds one loaded circuit, the slice list for the current mode, and
run configuration. Slices are re-derived from the circuit after every
breakbarrier mutation, so they can never go stale.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .circuit import (
    Circuit,
    gate_loc,
    insert_breakbarrier,
    remove_breakbarrier,
    start_debug,
)
from .errors import InvalidSpec, QcdbError, SliceNotFound
from .qasm import emit, parse
from .sim import CountsMap, StateVector, run_statevector, sample
from .slicer import (
    DEFAULT_MAX_SIMPLE_GATES,
    DEFAULT_MAX_SIMPLE_QUBITS,
    MODES,
    Slice,
    SliceCategory,
    categorize,
    hslice,
    vslice,
    whole_circuit_slice,
)
from .states import StateSpec, make_state
from .testkit import auto_measured, fit_slice_to_init


@dataclass
class SessionConfig:
    max_simple_qubits: int = DEFAULT_MAX_SIMPLE_QUBITS
    max_simple_gates: int = DEFAULT_MAX_SIMPLE_GATES
    default_shots: int = 1024
    default_seed: int = 1234


class Session:
    def __init__(self, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self.circuit: Circuit | None = None
        self.name: str = ""
        self.mode: str = "standalone"
        self.slices: list[Slice] = []
        self.last_result: StateVector | CountsMap | None = None
        self.load_warnings: list[str] = []

    # -- loading and slicing -------------------------------------------------

    def load_text(self, text: str, name: str = "<input>") -> None:
        result = parse(text, file=name)
        circuit = result.unwrap()
        self.circuit = start_debug(circuit)
        self.name = name
        self.load_warnings = [str(w) for w in result.warnings]
        self.reslice()

    def load_file(self, path: str) -> None:
        with open(path, encoding="utf-8") as f:
            self.load_text(f.read(), name=os.path.basename(path))

    def require_circuit(self) -> Circuit:
        if self.circuit is None:
            raise InvalidSpec("no circuit loaded")
        return self.circuit

    def reslice(self) -> None:
        self.slices = vslice(self.require_circuit(), self.mode)

    def set_mode(self, mode: str) -> None:
        if mode not in MODES:
            raise InvalidSpec(f"mode must be one of {MODES}")
        self.mode = mode
        self.reslice()

    def add_breakbarrier(self, position: int) -> None:
        self.circuit = insert_breakbarrier(self.require_circuit(), position)
        self.reslice()

    def remove_breakbarrier(self, k: int) -> None:
        self.circuit = remove_breakbarrier(self.require_circuit(), k)
        self.reslice()

    def get_slice(self, ref) -> Slice:
        if ref == "full":
            return whole_circuit_slice(self.require_circuit())
        try:
            idx = int(ref)
        except (TypeError, ValueError):
            raise SliceNotFound(f"slice reference {ref!r} is not an index or 'full'")
        if not 0 <= idx < len(self.slices):
            raise SliceNotFound(f"slice {idx} not in 0..{len(self.slices) - 1}")
        return self.slices[idx]

    def hslice_slice(self, k: int) -> Slice:
        sl = self.get_slice(k)
        reduced = hslice(sl)
        self.slices[int(k)] = reduced
        return reduced

    # -- execution -------------------------------------------------------------

    def resolve_init(self, spec, n: int) -> StateVector:
        """Accept a StateSpec, a JSON object/string, or a shorthand name."""
        if isinstance(spec, StateVector):
            return spec
        if isinstance(spec, StateSpec):
            return make_state(spec)
        if isinstance(spec, dict):
            obj = dict(spec)
            obj.setdefault("n", n)
            return make_state(StateSpec.from_json(obj))
        if spec is None:
            return StateVector.zero(n)
        text = str(spec).strip()
        if text.startswith("{"):
            return self.resolve_init(json.loads(text), n)
        name, _, arg = text.partition(":")
        if name in ("zero", "zeros", "0"):
            return StateVector.zero(n)
        if name == "basis":
            return make_state(StateSpec("basis", n, bits=arg or "0" * n))
        if name == "dicke":
            if not arg:
                raise InvalidSpec("dicke needs an excitation count, e.g. dicke:2")
            return make_state(StateSpec("dicke", n, k=int(arg)))
        if name in ("uniform", "ghz", "w"):
            return make_state(StateSpec(name, n))
        raise InvalidSpec(f"unknown initial state {text!r}")

    def run(self, ref, init=None, sampling: bool = False,
            shots: int | None = None, seed: int | None = None):
        """Run one slice (or the whole circuit) and remember the result."""
        sl = self.get_slice(ref)
        n = sl.circuit.n_qubits
        if isinstance(init, (str, type(None))) or isinstance(init, (dict, StateSpec)):
            # try against the slice size first, then the h-sliced size
            try:
                state = self.resolve_init(init, n)
            except QcdbError:
                state = self.resolve_init(init, hslice(sl).circuit.n_qubits)
        else:
            state = init
        sl = fit_slice_to_init(sl, state)
        if sampling or sl.circuit.has_measurement:
            target = sl.circuit if sl.circuit.has_measurement else auto_measured(sl.circuit)
            result = sample(
                target,
                state,
                shots if shots is not None else self.config.default_shots,
                seed if seed is not None else self.config.default_seed,
            )
        else:
            result = run_statevector(sl.circuit, state)
        self.last_result = result
        return result

    def state_after(self, k: int) -> StateVector:
        """Statevector after the first k+1 stand-alone slices, from |0...0>."""
        circuit = self.require_circuit()
        accumulated = vslice(circuit, "accumulated")
        if not 0 <= int(k) < len(accumulated):
            raise SliceNotFound(f"slice {k} not in 0..{len(accumulated) - 1}")
        sub = accumulated[int(k)].circuit
        sub = sub.replace_instructions([i for i in sub.instructions if i.kind != "measure"])
        return run_statevector(sub, StateVector.zero(sub.n_qubits))

    def categorize_slice(self, k) -> SliceCategory:
        return categorize(
            self.get_slice(k),
            self.config.max_simple_qubits,
            self.config.max_simple_gates,
        )

    def gate_report(self, kind: str, slice_ref=None) -> str:
        if slice_ref is None:
            return gate_loc(self.require_circuit(), kind)
        return gate_loc(self.get_slice(slice_ref).circuit, kind)

    # -- export ------------------------------------------------------------------

    def export(self, directory: str) -> list[str]:
        """Write each slice as QASM with a header recording mode/index/map."""
        os.makedirs(directory, exist_ok=True)
        base = os.path.splitext(self.name)[0] or "circuit"
        written = []
        for sl in self.slices:
            comments = [
                f"slice {sl.index} of {self.name} (mode {sl.mode})",
                "qubit_map: " + ", ".join(
                    f"{r}[{i}]->{local}" for (r, i), local in sl.qubit_map.items()
                ),
            ]
            if sl.removed_qubits:
                comments.append(
                    "removed: " + ", ".join(f"{r}[{i}]" for r, i in sl.removed_qubits)
                )
            path = os.path.join(directory, f"{base}.slice{sl.index}.qasm")
            with open(path, "w", encoding="utf-8") as f:
                f.write(emit(sl.circuit, comments=comments))
            written.append(path)
        return written

    # -- summaries ---------------------------------------------------------------

    def circuit_summary(self) -> dict:
        from .sim import qubit_cap

        c = self.require_circuit()
        return {
            "name": self.name,
            "qregs": [{"name": r.name, "size": r.size} for r in c.qregs],
            "cregs": [{"name": r.name, "size": r.size} for r in c.cregs],
            "n_qubits": c.n_qubits,
            "n_instructions": len(c.instructions),
            "breakbarriers": c.breakbarrier_positions(),
            "qubit_cap": qubit_cap(),
        }

    def slice_summaries(self) -> list[dict]:
        out = []
        for sl in self.slices:
            cat = self.categorize_slice(sl.index)
            out.append({
                "index": sl.index,
                "mode": sl.mode,
                "n_gates": sl.gate_count(),
                "n_qubits": sl.circuit.n_qubits,
                "used_qubits": len(sl.circuit.used_qubit_refs()),
                "has_measurement": sl.has_measurement,
                "behaviour": cat.behaviour,
                "complexity": cat.complexity,
                "evidence": {
                    "permutation": cat.evidence.permutation,
                    "diagonal_phase": cat.evidence.diagonal_phase,
                    "amplitude_mixing": cat.evidence.amplitude_mixing,
                },
                "removed_qubits": [f"{r}[{i}]" for r, i in sl.removed_qubits],
                "warnings": list(sl.warnings),
            })
        return out
