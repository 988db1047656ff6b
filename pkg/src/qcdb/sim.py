"""Dense statevector simulation, seeded sampling and unitary extraction.

Qubit ordering is little-endian: global qubit 0 is the least significant bit
of a basis-state index, and bitstrings are displayed qubit-0-rightmost.

Sampling is reproducible bit-for-bit across runs and platforms. The generator
is numpy's PCG64 seeded explicitly; each shot consumes one raw 64-bit output,
mapped to a double in [0, 1) by taking the top 53 bits, and converted to an
outcome by binary search over the cumulative distribution. No library
convenience samplers are involved, so the stream is pinned by PCG64 alone.

Gate matrices follow the OpenQASM 2.0 definitions; see docs/gates.md for the
exact table and phase conventions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import cos, sin, pi

import numpy as np

from . import _kernels
from .circuit import Circuit, GateInstruction
from .errors import (
    CapExceeded,
    InvalidSpec,
    MeasurementPresent,
    MidCircuitMeasurement,
    NoMeasurements,
    QubitCountMismatch,
)

DEFAULT_QUBIT_CAP = 24
UNITARY_QUBIT_CAP = 10
DUMP_EPS = 1e-12


def qubit_cap() -> int:
    raw = os.environ.get("QCDB_QUBIT_CAP", "")
    try:
        return int(raw) if raw else DEFAULT_QUBIT_CAP
    except ValueError:
        return DEFAULT_QUBIT_CAP


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.n < 0 or self.amplitudes.shape != (1 << self.n,):
            raise InvalidSpec(f"amplitude vector must have length 2^{self.n}")
        if self.n > qubit_cap():
            raise CapExceeded(f"{self.n} qubits exceeds cap {qubit_cap()}")
        norm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise InvalidSpec(f"state not normalized: sum |a|^2 = {norm!r}")

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n, amps)

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass
class CountsMap:
    shots: int
    counts: dict[str, int]

    def total(self) -> int:
        return sum(self.counts.values())


_SQ2 = 1.0 / np.sqrt(2.0)

_FIXED_1Q = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128),
    "s": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "t": np.array([[1, 0], [0, np.exp(1j * pi / 4)]], dtype=np.complex128),
    "tdg": np.array([[1, 0], [0, np.exp(-1j * pi / 4)]], dtype=np.complex128),
}


def gate_matrix_1q(kind: str, params: tuple[float, ...]) -> np.ndarray:
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    if kind == "rx":
        th = params[0] / 2
        return np.array([[cos(th), -1j * sin(th)], [-1j * sin(th), cos(th)]],
                        dtype=np.complex128)
    if kind == "ry":
        th = params[0] / 2
        return np.array([[cos(th), -sin(th)], [sin(th), cos(th)]], dtype=np.complex128)
    if kind == "rz":
        th = params[0] / 2
        return np.array([[np.exp(-1j * th), 0], [0, np.exp(1j * th)]], dtype=np.complex128)
    if kind == "p":
        return np.array([[1, 0], [0, np.exp(1j * params[0])]], dtype=np.complex128)
    if kind == "u":
        th, phi, lam = params
        c, s = cos(th / 2), sin(th / 2)
        return np.array(
            [
                [np.exp(-0.5j * (phi + lam)) * c, -np.exp(-0.5j * (phi - lam)) * s],
                [np.exp(0.5j * (phi - lam)) * s, np.exp(0.5j * (phi + lam)) * c],
            ],
            dtype=np.complex128,
        )
    raise ValueError(f"no 1q matrix for {kind}")


def _apply_instruction(amps: np.ndarray, circuit: Circuit, ins: GateInstruction) -> None:
    kind = ins.kind
    if kind in ("barrier", "breakbarrier"):
        return
    qidx = [circuit.qubit_index(q) for q in ins.qubits]
    if kind == "swap":
        _kernels.apply_swap_pair(amps, np.int64(qidx[0]), np.int64(qidx[1]))
        return
    if kind in ("cx", "ccx", "mcx"):
        controls, target = qidx[:-1], qidx[-1]
        u = _FIXED_1Q["x"]
    elif kind in ("cz", "cp"):
        controls, target = qidx[:-1], qidx[-1]
        u = gate_matrix_1q("z" if kind == "cz" else "p", ins.params)
    else:
        controls, target = [], qidx[0]
        u = gate_matrix_1q(kind, ins.params)
    mask = np.int64(0)
    for c in controls:
        mask |= np.int64(1) << np.int64(c)
    _kernels.apply_ctrl_1q(
        amps, complex(u[0, 0]), complex(u[0, 1]), complex(u[1, 0]), complex(u[1, 1]),
        np.int64(target), mask,
    )


def run_statevector(circuit: Circuit, init: StateVector) -> StateVector:
    """Apply the circuit's unitary to `init` and return the new state."""
    if circuit.has_measurement:
        raise MeasurementPresent("circuit contains measurements; use sample()")
    if init.n != circuit.n_qubits:
        raise QubitCountMismatch(
            f"initial state has {init.n} qubits, circuit has {circuit.n_qubits}"
        )
    if circuit.n_qubits > qubit_cap():
        raise CapExceeded(f"{circuit.n_qubits} qubits exceeds cap {qubit_cap()}")
    amps = init.amplitudes.copy()
    for ins in circuit.instructions:
        _apply_instruction(amps, circuit, ins)
    out = StateVector(circuit.n_qubits, amps)
    return out


def _check_terminal_measures(circuit: Circuit) -> list[GateInstruction]:
    measures = []
    measured: set = set()
    for ins in circuit.instructions:
        if ins.kind in ("barrier", "breakbarrier"):
            continue
        touched = set(ins.qubits)
        if touched & measured:
            raise MidCircuitMeasurement(
                "a measured qubit is used again later; measurements must be terminal"
            )
        if ins.kind == "measure":
            measures.append(ins)
            measured |= touched
    if not measures:
        raise NoMeasurements("circuit has no measure instructions")
    return measures


def _uniform_doubles(seed: int, count: int) -> np.ndarray:
    raw = np.asarray(np.random.PCG64(seed).random_raw(count), dtype=np.uint64)
    return (raw >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def exact_outcome_distribution(circuit: Circuit, init: StateVector) -> dict[str, float]:
    """Post-circuit distribution over classical-bit outcome strings."""
    measures = _check_terminal_measures(circuit)
    unitary_part = circuit.replace_instructions(
        [i for i in circuit.instructions if i.kind != "measure"]
    )
    final = run_statevector(unitary_part, init)
    n = circuit.n_qubits

    clbit_to_qubit: dict[int, int] = {}
    for m in measures:
        clbit_to_qubit[circuit.clbit_index(m.clbits[0])] = circuit.qubit_index(m.qubits[0])

    qubits = sorted(set(clbit_to_qubit.values()))
    probs = final.probabilities().reshape([2] * n) if n else final.probabilities()
    if n:
        drop = tuple(n - 1 - q for q in range(n) if q not in qubits)
        marg = probs.sum(axis=drop) if drop else probs
        marg = marg.reshape(-1)
    else:
        marg = probs
    k = len(qubits)
    qubits_desc = sorted(qubits, reverse=True)

    dist: dict[str, float] = {}
    for f in range(1 << k):
        pr = float(marg[f])
        if pr <= 0.0:
            continue
        bit_of_qubit = {q: (f >> (k - 1 - j)) & 1 for j, q in enumerate(qubits_desc)}
        clbits = {c: bit_of_qubit[q] for c, q in clbit_to_qubit.items()}
        key = format_clbit_outcome(circuit, clbits)
        dist[key] = dist.get(key, 0.0) + pr
    return dist


def sample(circuit: Circuit, init: StateVector, shots: int, seed: int) -> CountsMap:
    """Draw `shots` outcomes from the exact post-circuit distribution."""
    if shots < 1:
        raise InvalidSpec("shots must be >= 1")
    dist = exact_outcome_distribution(circuit, init)
    keys = sorted(dist)  # deterministic outcome order for the inverse CDF
    cum = np.cumsum([dist[k] for k in keys])
    u = _uniform_doubles(seed, shots)
    idx = np.searchsorted(cum, u, side="right")
    idx = np.minimum(idx, len(keys) - 1)
    counts: dict[str, int] = {}
    for i in idx:
        key = keys[int(i)]
        counts[key] = counts.get(key, 0) + 1
    return CountsMap(shots=shots, counts=counts)


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Full 2^n x 2^n unitary; column j is the image of basis state j."""
    n = circuit.n_qubits
    if n > UNITARY_QUBIT_CAP:
        raise CapExceeded(f"unitary extraction capped at {UNITARY_QUBIT_CAP} qubits")
    if circuit.has_measurement:
        raise MeasurementPresent("cannot extract a unitary from a measuring circuit")
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        col = np.zeros(dim, dtype=np.complex128)
        col[j] = 1.0
        for ins in circuit.instructions:
            _apply_instruction(col, circuit, ins)
        u[:, j] = col
    return u


# -- display helpers ---------------------------------------------------------


def bitstring(index: int, n: int) -> str:
    """Basis index as a bitstring, qubit 0 rightmost."""
    return format(index, f"0{n}b") if n else ""


def format_clbit_outcome(circuit: Circuit, clbit_values: dict[int, int]) -> str:
    """Outcome over classical bits, grouped per register (declaration order,
    leftmost first); within a register bit 0 is rightmost. Unwritten bits are 0.
    """
    groups = []
    offset = 0
    for reg in circuit.cregs:
        bits = [str(clbit_values.get(offset + i, 0)) for i in range(reg.size)]
        groups.append("".join(reversed(bits)))
        offset += reg.size
    return " ".join(groups)


def dump_statevector(state: StateVector) -> str:
    """One line per nonzero amplitude: `bitstring re im prob`."""
    lines = []
    for i, a in enumerate(state.amplitudes):
        if abs(a) < DUMP_EPS:
            continue
        re = 0.0 if a.real == 0 else a.real
        im = 0.0 if a.imag == 0 else a.imag
        lines.append(f"{bitstring(i, state.n)} {re:.10g} {im:.10g} {abs(a) ** 2:.10g}")
    return "\n".join(lines)


def render_counts(cm: CountsMap) -> str:
    """Counts sorted descending, ties broken lexicographically."""
    items = sorted(cm.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return "\n".join(f"{k} {v}" for k, v in items)
