"""Vertical and horizontal slicing plus slice categorization.

Vertical slicing cuts at breakbarrier markers, in stand-alone mode (each slice
is the segment between adjacent markers) or accumulated mode (slice k is the
concatenation of stand-alone slices 0..k). Horizontal slicing removes qubits
that no gate or measurement touches, remapping the survivors to a dense local
numbering that preserves their original relative order. Barriers carry no
semantics and do not count as "touching" a qubit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import (
    AMPLITUDE_MIXING_GATES,
    Circuit,
    DIAGONAL_PHASE_GATES,
    GateInstruction,
    PERMUTATION_GATES,
    QuantumRegisterDecl,
    Ref,
)

MODES = ("standalone", "accumulated")

DEFAULT_MAX_SIMPLE_QUBITS = 5
DEFAULT_MAX_SIMPLE_GATES = 20


@dataclass
class Slice:
    index: int
    mode: str
    circuit: Circuit
    qubit_map: dict[Ref, int]
    removed_qubits: list[Ref] = field(default_factory=list)
    warnings: tuple[str, ...] = ()

    @property
    def n_qubits(self) -> int:
        return self.circuit.n_qubits

    @property
    def has_measurement(self) -> bool:
        return self.circuit.has_measurement

    def gate_count(self) -> int:
        return self.circuit.gate_count()


@dataclass
class GateClassCounts:
    permutation: int = 0
    diagonal_phase: int = 0
    amplitude_mixing: int = 0

    def total(self) -> int:
        return self.permutation + self.diagonal_phase + self.amplitude_mixing


@dataclass
class SliceCategory:
    behaviour: str   # "pseudo_classical" | "full_quantum"
    complexity: str  # "simple" | "complex"
    evidence: GateClassCounts


def vslice(circuit: Circuit, mode: str = "standalone") -> list[Slice]:
    """Cut at breakbarriers; b markers yield b+1 slices in order.

    Edge-position markers produce empty slices, kept (with a warning attached)
    so slice indices stay aligned with breakbarrier numbering.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    segments: list[list[GateInstruction]] = [[]]
    for ins in circuit.instructions:
        if ins.kind == "breakbarrier":
            segments.append([])
        else:
            segments[-1].append(ins)

    identity_map = {ref: i for i, ref in enumerate(circuit.all_qubit_refs())}
    slices = []
    acc: list[GateInstruction] = []
    for k, seg in enumerate(segments):
        acc = acc + seg
        instructions = list(acc) if mode == "accumulated" else list(seg)
        sub = circuit.replace_instructions(instructions)
        sub.debug_mode = False
        warnings = ()
        if not seg:
            warnings = (f"slice {k} is empty (breakbarrier at circuit edge or adjacent markers)",)
        slices.append(Slice(k, mode, sub, dict(identity_map), [], warnings))
    return slices


def whole_circuit_slice(circuit: Circuit) -> Slice:
    """The full circuit (markers erased) viewed as a single slice."""
    from .circuit import erase_breakbarriers

    sub = erase_breakbarriers(circuit)
    sub.debug_mode = False
    return Slice(-1, "standalone", sub,
                 {ref: i for i, ref in enumerate(circuit.all_qubit_refs())})


def hslice(sl: Slice) -> Slice:
    """Remove qubits untouched by any gate or measurement, remapping the rest."""
    circuit = sl.circuit
    used = set(circuit.used_qubit_refs())
    all_refs = circuit.all_qubit_refs()
    kept = [r for r in all_refs if r in used]
    removed = [r for r in all_refs if r not in used]
    if not removed:
        return sl

    new = Circuit()
    per_reg_kept: dict[str, list[Ref]] = {}
    for ref in kept:
        per_reg_kept.setdefault(ref[0], []).append(ref)
    local_index: dict[Ref, int] = {}
    for reg in circuit.qregs:
        kept_here = per_reg_kept.get(reg.name, [])
        if not kept_here:
            continue
        new.add_qreg(reg.name, len(kept_here))
        for j, ref in enumerate(kept_here):
            local_index[ref] = j
    for reg in circuit.cregs:
        new.add_creg(reg.name, reg.size)

    for ins in circuit.instructions:
        if ins.kind in ("barrier", "breakbarrier"):
            qs = tuple((r[0], local_index[r]) for r in ins.qubits if r in used)
            if not qs:
                continue
            new.instructions.append(GateInstruction("barrier", qs, (), (), ins.provenance))
            continue
        qs = tuple((r[0], local_index[r]) for r in ins.qubits)
        new.instructions.append(
            GateInstruction(ins.kind, qs, ins.params, ins.clbits, ins.provenance)
        )

    # dense local numbering in original relative order
    qubit_map = {ref: new.qubit_index((ref[0], local_index[ref])) for ref in kept}
    new_removed = list(sl.removed_qubits) + removed
    return Slice(sl.index, sl.mode, new, qubit_map, new_removed, sl.warnings)


def categorize(
    sl: Slice,
    max_simple_qubits: int = DEFAULT_MAX_SIMPLE_QUBITS,
    max_simple_gates: int = DEFAULT_MAX_SIMPLE_GATES,
) -> SliceCategory:
    """Classify slice behaviour and size.

    Gate classes: permutation gates map basis states to basis states;
    diagonal-phase gates only rotate phases; amplitude-mixing gates move weight
    between basis states. A slice is pseudo-classical exactly when it contains
    permutation gates only. Measurements and barriers are not gates and do not
    count toward the evidence.
    """
    if max_simple_qubits < 1 or max_simple_gates < 1:
        raise ValueError("complexity thresholds must be positive")
    ev = GateClassCounts()
    for ins in sl.circuit.instructions:
        if ins.kind in PERMUTATION_GATES:
            ev.permutation += 1
        elif ins.kind in DIAGONAL_PHASE_GATES:
            ev.diagonal_phase += 1
        elif ins.kind in AMPLITUDE_MIXING_GATES:
            ev.amplitude_mixing += 1
    behaviour = (
        "pseudo_classical"
        if ev.amplitude_mixing == 0 and ev.diagonal_phase == 0
        else "full_quantum"
    )
    used = len(sl.circuit.used_qubit_refs())
    complexity = (
        "simple"
        if used <= max_simple_qubits and ev.total() <= max_simple_gates
        else "complex"
    )
    return SliceCategory(behaviour, complexity, ev)
