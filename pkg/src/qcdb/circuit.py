"""Circuit intermediate representation.

Registers, gate instructions, breakbarrier markers and per-gate provenance.
Circuits are treated as immutable values once built: the editing operations
(`start_debug`, `insert_breakbarrier`, ...) return new circuits and never
mutate their argument.

Conventions used everywhere downstream:

- qubits are numbered globally in register declaration order, register index 0
  first; global qubit 0 is the least significant bit of a basis-state index
- a register-wide application (one statement applying a gate to every qubit of
  a register) expands to one instruction per qubit, all sharing a single
  provenance site
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import (
    DebugModeOff,
    InvalidInstruction,
    PositionOutOfRange,
    UnknownGateKind,
)

# ref = (register name, index within register)
Ref = tuple[str, int]


@dataclass(frozen=True)
class GateProvenance:
    """Where a gate entered the circuit: source location plus enclosing label."""

    file: str
    line: int
    column: int
    context: str = ""

    def describe(self) -> str:
        if self.file == "unknown" and self.line == 0:
            return "unknown:0:0"
        loc = f"{self.file}, line {self.line}"
        return f"{loc}, in {self.context}" if self.context else loc


UNKNOWN_PROVENANCE = GateProvenance("unknown", 0, 0, "")


@dataclass(frozen=True)
class RegisterDecl:
    name: str
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InvalidInstruction(f"register {self.name!r} must have size >= 1")

    def __getitem__(self, index: int) -> Ref:
        if not 0 <= index < self.size:
            raise InvalidInstruction(
                f"index {index} out of range for register {self.name}[{self.size}]"
            )
        return (self.name, index)

    def __iter__(self):
        return ((self.name, i) for i in range(self.size))

    def __len__(self) -> int:
        return self.size


class QuantumRegisterDecl(RegisterDecl):
    pass


class ClassicalRegisterDecl(RegisterDecl):
    pass


# kind -> (qubit arity, param count); None arity means variable (>= minimum below)
GATE_SPECS: dict[str, tuple[int | None, int]] = {
    "x": (1, 0), "y": (1, 0), "z": (1, 0), "h": (1, 0),
    "s": (1, 0), "sdg": (1, 0), "t": (1, 0), "tdg": (1, 0),
    "rx": (1, 1), "ry": (1, 1), "rz": (1, 1), "p": (1, 1),
    "u": (1, 3),
    "cx": (2, 0), "cz": (2, 0), "cp": (2, 1), "swap": (2, 0),
    "ccx": (3, 0),
    "mcx": (None, 0),       # k >= 1 controls plus target
    "measure": (None, 0),   # equal-length qubit/clbit lists
    "barrier": (None, 0),   # any span; no semantics
    "breakbarrier": (None, 0),  # always full width
}

PERMUTATION_GATES = frozenset({"x", "cx", "swap", "ccx", "mcx"})
DIAGONAL_PHASE_GATES = frozenset({"z", "s", "sdg", "t", "tdg", "rz", "p", "cz", "cp"})
AMPLITUDE_MIXING_GATES = frozenset({"h", "y", "rx", "ry", "u"})
UNITARY_GATES = PERMUTATION_GATES | DIAGONAL_PHASE_GATES | AMPLITUDE_MIXING_GATES


@dataclass(frozen=True)
class GateInstruction:
    kind: str
    qubits: tuple[Ref, ...]
    params: tuple[float, ...] = ()
    clbits: tuple[Ref, ...] = ()
    provenance: GateProvenance = UNKNOWN_PROVENANCE

    @property
    def is_unitary(self) -> bool:
        return self.kind in UNITARY_GATES


def validate_instruction(kind: str, qubits, params, clbits) -> None:
    if kind not in GATE_SPECS:
        raise UnknownGateKind(f"unknown gate kind {kind!r}")
    arity, n_params = GATE_SPECS[kind]
    if arity is not None and len(qubits) != arity:
        raise InvalidInstruction(f"{kind} takes {arity} qubit(s), got {len(qubits)}")
    if kind == "mcx" and len(qubits) < 2:
        raise InvalidInstruction("mcx needs at least one control and a target")
    if kind in ("barrier", "breakbarrier", "measure") and len(qubits) < 1:
        raise InvalidInstruction(f"{kind} needs at least one qubit")
    if len(params) != n_params:
        raise InvalidInstruction(f"{kind} takes {n_params} parameter(s), got {len(params)}")
    if len(set(qubits)) != len(qubits):
        raise InvalidInstruction(f"duplicate qubit operand in {kind}")
    if kind == "measure":
        if len(clbits) != len(qubits):
            raise InvalidInstruction("measure needs one classical bit per qubit")
        if len(set(clbits)) != len(clbits):
            raise InvalidInstruction("duplicate classical bit operand in measure")
    elif clbits:
        raise InvalidInstruction(f"{kind} takes no classical bits")


class Circuit:
    """Ordered gate list over named quantum/classical registers."""

    def __init__(self):
        self.qregs: list[QuantumRegisterDecl] = []
        self.cregs: list[ClassicalRegisterDecl] = []
        self.instructions: list[GateInstruction] = []
        self.debug_mode: bool = False

    # -- registers ---------------------------------------------------------

    def add_qreg(self, name: str, size: int) -> QuantumRegisterDecl:
        self._check_fresh_name(name)
        reg = QuantumRegisterDecl(name, size)
        self.qregs.append(reg)
        return reg

    def add_creg(self, name: str, size: int) -> ClassicalRegisterDecl:
        self._check_fresh_name(name)
        reg = ClassicalRegisterDecl(name, size)
        self.cregs.append(reg)
        return reg

    def _check_fresh_name(self, name: str) -> None:
        if any(r.name == name for r in self.qregs + self.cregs):
            raise InvalidInstruction(f"register name {name!r} already declared")

    def qreg(self, name: str) -> QuantumRegisterDecl:
        for r in self.qregs:
            if r.name == name:
                return r
        raise InvalidInstruction(f"undeclared quantum register {name!r}")

    def creg(self, name: str) -> ClassicalRegisterDecl:
        for r in self.cregs:
            if r.name == name:
                return r
        raise InvalidInstruction(f"undeclared classical register {name!r}")

    @property
    def n_qubits(self) -> int:
        return sum(r.size for r in self.qregs)

    @property
    def n_clbits(self) -> int:
        return sum(r.size for r in self.cregs)

    def qubit_index(self, ref: Ref) -> int:
        """Global little-endian index of a (register, index) reference."""
        offset = 0
        for r in self.qregs:
            if r.name == ref[0]:
                if not 0 <= ref[1] < r.size:
                    raise InvalidInstruction(f"qubit index out of range: {ref}")
                return offset + ref[1]
            offset += r.size
        raise InvalidInstruction(f"undeclared quantum register {ref[0]!r}")

    def clbit_index(self, ref: Ref) -> int:
        offset = 0
        for r in self.cregs:
            if r.name == ref[0]:
                if not 0 <= ref[1] < r.size:
                    raise InvalidInstruction(f"classical bit out of range: {ref}")
                return offset + ref[1]
            offset += r.size
        raise InvalidInstruction(f"undeclared classical register {ref[0]!r}")

    def all_qubit_refs(self) -> list[Ref]:
        return [ref for reg in self.qregs for ref in reg]

    # -- construction ------------------------------------------------------

    def append(self, kind: str, qubits, params=(), clbits=(), prov=None) -> "Circuit":
        """Append one instruction, expanding register-wide applications.

        Any operand may be a register (or its name), in which case the
        statement broadcasts: all register operands must share one size k and
        the statement expands to k instructions sharing one provenance site.
        """
        provenance = self._coerce_prov(prov)
        groups = [self._expand_operand(q, quantum=True) for q in qubits]
        cgroups = [self._expand_operand(c, quantum=False) for c in clbits]
        if kind in ("barrier", "breakbarrier"):
            flat = tuple(ref for g, _ in groups for ref in g)
            self._append_one(kind, flat, tuple(params), (), provenance)
            return self
        reg_sizes = {len(g) for g, is_reg in groups + cgroups if is_reg}
        if len(reg_sizes) > 1:
            raise InvalidInstruction("mismatched register sizes in broadcast")
        width = reg_sizes.pop() if reg_sizes else 1
        for i in range(width):
            qs = tuple(g[i] if is_reg else g[0] for g, is_reg in groups)
            cs = tuple(g[i] if is_reg else g[0] for g, is_reg in cgroups)
            self._append_one(kind, qs, tuple(params), cs, provenance)
        return self

    def _expand_operand(self, operand, quantum: bool) -> tuple[list[Ref], bool]:
        """Resolve an operand to refs; the flag marks register-wide operands."""
        if isinstance(operand, RegisterDecl):
            return list(operand), True
        if isinstance(operand, str):
            reg = self.qreg(operand) if quantum else self.creg(operand)
            return list(reg), True
        name, idx = operand
        # bounds-check through the index helpers
        if quantum:
            self.qubit_index((name, idx))
        else:
            self.clbit_index((name, idx))
        return [(name, idx)], False

    def _coerce_prov(self, prov) -> GateProvenance:
        if prov is None:
            return UNKNOWN_PROVENANCE
        if isinstance(prov, GateProvenance):
            return prov
        # bare string: caller-supplied label for builder-API construction
        return GateProvenance("unknown", 0, 0, str(prov))

    def _append_one(self, kind, qubits, params, clbits, provenance) -> None:
        validate_instruction(kind, qubits, params, clbits)
        for q in qubits:
            self.qubit_index(q)
        for c in clbits:
            self.clbit_index(c)
        if kind == "breakbarrier" and list(qubits) != self.all_qubit_refs():
            raise InvalidInstruction("breakbarrier must span all qubits")
        self.instructions.append(
            GateInstruction(kind, tuple(qubits), tuple(float(p) for p in params),
                            tuple(clbits), provenance)
        )

    # single-gate helpers; `q` may be a ref, a register or a register name
    def x(self, q, prov=None): return self.append("x", [q], prov=prov)
    def y(self, q, prov=None): return self.append("y", [q], prov=prov)
    def z(self, q, prov=None): return self.append("z", [q], prov=prov)
    def h(self, q, prov=None): return self.append("h", [q], prov=prov)
    def s(self, q, prov=None): return self.append("s", [q], prov=prov)
    def sdg(self, q, prov=None): return self.append("sdg", [q], prov=prov)
    def t(self, q, prov=None): return self.append("t", [q], prov=prov)
    def tdg(self, q, prov=None): return self.append("tdg", [q], prov=prov)
    def rx(self, q, theta, prov=None): return self.append("rx", [q], [theta], prov=prov)
    def ry(self, q, theta, prov=None): return self.append("ry", [q], [theta], prov=prov)
    def rz(self, q, theta, prov=None): return self.append("rz", [q], [theta], prov=prov)
    def p(self, q, lam, prov=None): return self.append("p", [q], [lam], prov=prov)

    def u(self, q, theta, phi, lam, prov=None):
        return self.append("u", [q], [theta, phi, lam], prov=prov)

    def cx(self, c, t, prov=None): return self.append("cx", [c, t], prov=prov)
    def cz(self, a, b, prov=None): return self.append("cz", [a, b], prov=prov)
    def cp(self, c, t, lam, prov=None): return self.append("cp", [c, t], [lam], prov=prov)
    def swap(self, a, b, prov=None): return self.append("swap", [a, b], prov=prov)
    def ccx(self, c1, c2, t, prov=None): return self.append("ccx", [c1, c2, t], prov=prov)

    def mcx(self, controls, target, prov=None):
        return self.append("mcx", [*controls, target], prov=prov)

    def measure(self, q, c, prov=None):
        return self.append("measure", [q], clbits=[c], prov=prov)

    def barrier(self, *qubits, prov=None):
        refs = qubits if qubits else [r for r in self.qregs]
        return self.append("barrier", list(refs), prov=prov)

    def breakbarrier(self, prov=None):
        return self.append("breakbarrier", [r for r in self.qregs], prov=prov)

    # -- views -------------------------------------------------------------

    @property
    def has_measurement(self) -> bool:
        return any(i.kind == "measure" for i in self.instructions)

    def breakbarrier_positions(self) -> list[int]:
        return [i for i, ins in enumerate(self.instructions) if ins.kind == "breakbarrier"]

    def used_qubit_refs(self) -> list[Ref]:
        """Qubits touched by at least one gate or measurement (barriers ignored)."""
        used = set()
        for ins in self.instructions:
            if ins.kind in ("barrier", "breakbarrier"):
                continue
            used.update(ins.qubits)
        return [ref for ref in self.all_qubit_refs() if ref in used]

    def gate_count(self, include_measure: bool = False) -> int:
        """Number of non-barrier instructions; measurements optional."""
        kinds_out = {"barrier", "breakbarrier"} | (set() if include_measure else {"measure"})
        return sum(1 for i in self.instructions if i.kind not in kinds_out)

    def signature(self):
        """Instruction list as plain data, provenance excluded (for equality tests)."""
        return tuple((i.kind, i.qubits, i.params, i.clbits) for i in self.instructions)

    def copy(self) -> "Circuit":
        c = Circuit()
        c.qregs = list(self.qregs)
        c.cregs = list(self.cregs)
        c.instructions = list(self.instructions)
        c.debug_mode = self.debug_mode
        return c

    def replace_instructions(self, instructions) -> "Circuit":
        c = self.copy()
        c.instructions = list(instructions)
        return c

    def __repr__(self):
        regs = ",".join(f"{r.name}[{r.size}]" for r in self.qregs)
        return f"Circuit({regs}; {len(self.instructions)} instructions)"


# -- operations ------------------------------------------------------------


def start_debug(circuit: Circuit) -> Circuit:
    """Enable debugging mode: breakbarrier insertion and provenance tracking."""
    if circuit.debug_mode:
        return circuit
    c = circuit.copy()
    c.debug_mode = True
    return c


def insert_breakbarrier(circuit: Circuit, position: int) -> Circuit:
    """Insert a full-width breakbarrier marker before instruction `position`."""
    if not circuit.debug_mode:
        raise DebugModeOff("enable debug mode (start_debug) before inserting breakbarriers")
    if not 0 <= position <= len(circuit.instructions):
        raise PositionOutOfRange(
            f"position {position} not in [0, {len(circuit.instructions)}]"
        )
    marker = GateInstruction("breakbarrier", tuple(circuit.all_qubit_refs()))
    c = circuit.copy()
    c.instructions = (
        circuit.instructions[:position] + [marker] + circuit.instructions[position:]
    )
    return c


def remove_breakbarrier(circuit: Circuit, k: int) -> Circuit:
    """Remove the k-th breakbarrier (0-based, in circuit order)."""
    positions = circuit.breakbarrier_positions()
    if not 0 <= k < len(positions):
        raise PositionOutOfRange(f"no breakbarrier #{k} (have {len(positions)})")
    c = circuit.copy()
    del c.instructions[positions[k]]
    return c


def erase_breakbarriers(circuit: Circuit) -> Circuit:
    return circuit.replace_instructions(
        [i for i in circuit.instructions if i.kind != "breakbarrier"]
    )


def gate_info(circuit: Circuit) -> dict[str, tuple[int, list[tuple[GateProvenance, int]]]]:
    """Per-kind totals and provenance sites, in circuit order.

    A register-wide application counts as k occurrences at one site because the
    expanded instructions share a single provenance value.
    """
    info: dict[str, tuple[int, list]] = {}
    for ins in circuit.instructions:
        total, sites = info.get(ins.kind, (0, []))
        for i, (prov, count) in enumerate(sites):
            if prov == ins.provenance:
                sites[i] = (prov, count + 1)
                break
        else:
            sites.append((ins.provenance, 1))
        info[ins.kind] = (total + 1, sites)
    return info


def gate_loc(circuit: Circuit, kind: str) -> str:
    """Formatted provenance report for one gate kind."""
    if kind not in GATE_SPECS:
        raise UnknownGateKind(f"unknown gate kind {kind!r}")
    info = gate_info(circuit)
    if kind not in info:
        return f"gate {kind!r}: 0 occurrences"
    total, sites = info[kind]
    lines = [f"gate {kind!r}: {len(sites)} site(s), {total} occurrence(s)"]
    for prov, count in sites:
        suffix = f" ({count}x)" if count > 1 else ""
        lines.append(f"  {prov.describe()}{suffix}")
    return "\n".join(lines)
