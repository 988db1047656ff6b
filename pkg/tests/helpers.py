"""Shared test utilities: an independent brute-force simulator used as the
oracle for the fast kernels, and a random-circuit generator.

The reference simulator works on explicit 2^k x 2^k gate matrices embedded by
iterating every basis state, so it shares no code path with qcdb.sim beyond
the mathematical gate definitions.
"""
from __future__ import annotations

from math import cos, pi, sin

import numpy as np

from qcdb.circuit import Circuit, start_debug, insert_breakbarrier

UNITARY_POOL = [
    "x", "y", "z", "h", "s", "sdg", "t", "tdg",
    "rx", "ry", "rz", "p", "u",
    "cx", "cz", "cp", "swap", "ccx", "mcx",
]

PARAM_COUNT = {"rx": 1, "ry": 1, "rz": 1, "p": 1, "cp": 1, "u": 3}
MIN_QUBITS = {"cx": 2, "cz": 2, "cp": 2, "swap": 2, "ccx": 3, "mcx": 2}


def _u2(kind: str, params) -> np.ndarray:
    s2 = 1 / np.sqrt(2)
    table = {
        "x": [[0, 1], [1, 0]],
        "y": [[0, -1j], [1j, 0]],
        "z": [[1, 0], [0, -1]],
        "h": [[s2, s2], [s2, -s2]],
        "s": [[1, 0], [0, 1j]],
        "sdg": [[1, 0], [0, -1j]],
        "t": [[1, 0], [0, np.exp(1j * pi / 4)]],
        "tdg": [[1, 0], [0, np.exp(-1j * pi / 4)]],
    }
    if kind in table:
        return np.array(table[kind], dtype=complex)
    if kind == "rx":
        t = params[0] / 2
        return np.array([[cos(t), -1j * sin(t)], [-1j * sin(t), cos(t)]], dtype=complex)
    if kind == "ry":
        t = params[0] / 2
        return np.array([[cos(t), -sin(t)], [sin(t), cos(t)]], dtype=complex)
    if kind == "rz":
        t = params[0] / 2
        return np.array([[np.exp(-1j * t), 0], [0, np.exp(1j * t)]], dtype=complex)
    if kind == "p":
        return np.array([[1, 0], [0, np.exp(1j * params[0])]], dtype=complex)
    if kind == "u":
        t, phi, lam = params
        c, s = cos(t / 2), sin(t / 2)
        return np.array(
            [[np.exp(-0.5j * (phi + lam)) * c, -np.exp(-0.5j * (phi - lam)) * s],
             [np.exp(0.5j * (phi - lam)) * s, np.exp(0.5j * (phi + lam)) * c]],
            dtype=complex,
        )
    raise ValueError(kind)


def gate_matrix(kind: str, params, k: int) -> np.ndarray:
    """2^k x 2^k matrix; sub-index bit j is operand j (operand 0 = LSB)."""
    if k == 1:
        return _u2(kind, params)
    dim = 1 << k
    m = np.eye(dim, dtype=complex)
    if kind == "swap":
        m = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            a, b = i & 1, (i >> 1) & 1
            j = (i & ~3) | (b | (a << 1))
            m[j, i] = 1
        return m
    if kind in ("cx", "ccx", "mcx"):
        ctrl_mask = (1 << (k - 1)) - 1  # operands 0..k-2 are controls
        m = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            j = i ^ (1 << (k - 1)) if (i & ctrl_mask) == ctrl_mask else i
            m[j, i] = 1
        return m
    if kind == "cz":
        m[dim - 1, dim - 1] = -1
        return m
    if kind == "cp":
        m[dim - 1, dim - 1] = np.exp(1j * params[0])
        return m
    raise ValueError(kind)


def apply_ref(state: np.ndarray, matrix: np.ndarray, qubits: list[int]) -> np.ndarray:
    """Embed the gate over global qubit indices by explicit basis iteration."""
    n = int(len(state)).bit_length() - 1
    k = len(qubits)
    out = np.zeros_like(state)
    touched = 0
    for q in qubits:
        touched |= 1 << q
    for i in range(1 << n):
        sub = 0
        for j, q in enumerate(qubits):
            sub |= ((i >> q) & 1) << j
        rest = i & ~touched
        for sub2 in range(1 << k):
            amp = matrix[sub2, sub]
            if amp == 0:
                continue
            target = rest
            for j, q in enumerate(qubits):
                target |= ((sub2 >> j) & 1) << q
            out[target] += amp * state[i]
    return out


def simulate_ref(circuit: Circuit, init: np.ndarray) -> np.ndarray:
    state = init.astype(complex).copy()
    for ins in circuit.instructions:
        if ins.kind in ("barrier", "breakbarrier"):
            continue
        if ins.kind == "measure":
            raise ValueError("reference simulator is unitary-only")
        qubits = [circuit.qubit_index(q) for q in ins.qubits]
        state = apply_ref(state, gate_matrix(ins.kind, ins.params, len(qubits)), qubits)
    return state


def unitary_ref(circuit: Circuit) -> np.ndarray:
    n = circuit.n_qubits
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        col = np.zeros(dim, dtype=complex)
        col[j] = 1
        u[:, j] = simulate_ref(circuit, col)
    return u


def random_circuit(
    rng: np.random.Generator,
    n_qubits: int,
    n_gates: int,
    n_breakbarriers: int = 0,
    pool: list[str] | None = None,
    two_registers: bool = False,
    measure_all: bool = False,
) -> Circuit:
    c = Circuit()
    if two_registers and n_qubits >= 2:
        a = int(rng.integers(1, n_qubits))
        c.add_qreg("a", a)
        c.add_qreg("b", n_qubits - a)
    else:
        c.add_qreg("q", n_qubits)
    refs = c.all_qubit_refs()
    pool = pool or UNITARY_POOL
    eligible = [k for k in pool if MIN_QUBITS.get(k, 1) <= n_qubits]
    for _ in range(n_gates):
        kind = eligible[int(rng.integers(len(eligible)))]
        need = MIN_QUBITS.get(kind, 1)
        if kind == "mcx":
            need = int(rng.integers(2, min(n_qubits, 4) + 1))
        chosen = rng.choice(len(refs), size=need, replace=False)
        qs = [refs[int(i)] for i in chosen]
        params = [float(rng.uniform(0, 2 * pi)) for _ in range(PARAM_COUNT.get(kind, 0))]
        c.append(kind, qs, params=params)
    if measure_all:
        cl = c.add_creg("m", n_qubits)
        for i, ref in enumerate(refs):
            c.measure(ref, cl[i])
    if n_breakbarriers:
        c = start_debug(c)
        for _ in range(n_breakbarriers):
            c = insert_breakbarrier(c, int(rng.integers(0, len(c.instructions) + 1)))
    return c


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)
