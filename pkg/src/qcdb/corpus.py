"""Example circuits shipped with the tool, plus the fixture writer.

The headline example is Grover search for the triangle in a 4-node graph:
nodes 0, 1, 2 form the only triangle, node 3 hangs off node 2. A basis state
over the four node qubits selects a subset of nodes; the target is the subset
that is exactly the triangle, i.e. node pattern 0111.

The oracle compiles the graph into gates: one pair-check per triangle edge
into ancilla bits, aggregated into flag bits (flag[0] = all three edges
selected, flag[1] = node 3 excluded, flag[2] = the verdict). Two variants:

- ``observable_flags=True``: the verdict stays written in the flag register so
  a sliced single iteration can be inspected by sampling. Only valid for one
  iteration, since stale flags are never cleaned up.
- ``observable_flags=False``: flag and ancilla writes are fully uncomputed
  after the verdict kicks a phase off flag[2] (prepared in |->), leaving a
  clean phase oracle that can be iterated.

The diffusion operator mirrors a small routine named grover_diff whose
provenance is attached explicitly (lines 2-8); the buggy variant adds the
extra NOT on nodes[0] at line 7, so querying gate locations for "x" reports
3 sites totaling 9 occurrences instead of the correct 8.
"""
from __future__ import annotations

import json
import os
import sys
from math import pi

from .circuit import Circuit, GateProvenance
from .qasm import emit

TRIANGLE_FILE = "triangle_finding.py"

# 4-node graph: edges as (low, high) pairs; nodes 0-1-2 close the only triangle
TRIANGLE_GRAPH_EDGES = ((0, 1), (0, 2), (1, 2), (2, 3))
TRIANGLE_NODES = (0, 1, 2)
MARKED_NODE_PATTERN = "0111"  # displayed qubit-0-rightmost


def _prov(line: int, context: str, file: str = TRIANGLE_FILE) -> GateProvenance:
    return GateProvenance(file, line, 1, context)


def _triangle_registers(c: Circuit):
    nodes = c.add_qreg("nodes", 4)
    anc = c.add_qreg("anc", 6)
    flag = c.add_qreg("flag", 3)
    return nodes, anc, flag


def _cnz(qc: Circuit, controls, target, prov) -> None:
    """Multi-controlled Z: H on the target around a multi-controlled X."""
    qc.h(target, prov=prov)
    qc.mcx(controls, target, prov=prov)
    qc.h(target, prov=prov)


def triangle_oracle(qc: Circuit, nodes, anc, flag, observable_flags: bool) -> None:
    p = lambda line: _prov(line, "grover_oracle")
    edges = ((0, 1), (1, 2), (0, 2))  # the candidate triangle's edges
    for i, (a, b) in enumerate(edges):
        qc.ccx(nodes[a], nodes[b], anc[i], prov=p(2 + i))
    qc.ccx(anc[0], anc[1], anc[3], prov=p(5))
    qc.ccx(anc[2], anc[3], anc[4], prov=p(6))
    qc.cx(anc[4], flag[0], prov=p(7))
    qc.x(flag[1], prov=p(8))
    qc.cx(nodes[3], flag[1], prov=p(9))      # flag[1] = NOT nodes[3]
    qc.ccx(flag[0], flag[1], flag[2], prov=p(10))
    if not observable_flags:
        qc.cx(nodes[3], flag[1], prov=p(11))
        qc.x(flag[1], prov=p(12))
        qc.cx(anc[4], flag[0], prov=p(13))
    qc.ccx(anc[2], anc[3], anc[4], prov=p(14))
    qc.ccx(anc[0], anc[1], anc[3], prov=p(15))
    for i, (a, b) in reversed(list(enumerate(edges))):
        qc.ccx(nodes[a], nodes[b], anc[i], prov=p(18 - i))


def triangle_diffusion(qc: Circuit, nodes, buggy: bool) -> None:
    p = lambda line: _prov(line, "grover_diff")
    qc.h(nodes, prov=p(2))
    qc.x(nodes, prov=p(3))
    _cnz(qc, [nodes[0], nodes[1], nodes[2]], nodes[3], prov=p(5))
    qc.x(nodes, prov=p(6))
    if buggy:
        qc.x(nodes[0], prov=p(7))
    qc.h(nodes, prov=p(8))


def triangle_grover(iterations: int = 3, buggy: bool = False, measured: bool = True) -> Circuit:
    """Production circuit: |-> kickback flag, garbage-free oracle, repeated."""
    c = Circuit()
    nodes, anc, flag = _triangle_registers(c)
    if measured:
        cl = c.add_creg("c", 4)
        tri = c.add_creg("tri", 3)
    g = lambda line: _prov(line, "grover")
    c.x(flag[2], prov=g(4))
    c.h(flag[2], prov=g(5))
    c.h(nodes, prov=g(6))
    for _ in range(iterations):
        triangle_oracle(c, nodes, anc, flag, observable_flags=False)
        triangle_diffusion(c, nodes, buggy)
    if measured:
        c.measure(nodes, cl, prov=g(10))
        c.measure(flag, tri, prov=g(11))
    return c


def triangle_debug_circuit(buggy: bool = False) -> Circuit:
    """One inspectable iteration, cut into the three algorithmic steps.

    The flag verdict is left written so the oracle slice can be sampled; no
    measurements are included (slice tests add their own).
    """
    c = Circuit()
    nodes, anc, flag = _triangle_registers(c)
    c.h(nodes, prov=_prov(6, "grover"))
    c.breakbarrier()
    triangle_oracle(c, nodes, anc, flag, observable_flags=True)
    c.breakbarrier()
    triangle_diffusion(c, nodes, buggy)
    return c


def diffusion_routine(buggy: bool = False) -> Circuit:
    """The diffusion operator alone, on the full 13-qubit register layout."""
    c = Circuit()
    nodes, _, _ = _triangle_registers(c)
    triangle_diffusion(c, nodes, buggy)
    return c


# -- other corpus circuits ----------------------------------------------------


def _qft(qc: Circuit, qs, breaks: bool = False) -> None:
    k = len(qs)
    for j in reversed(range(k)):
        qc.h(qs[j])
        for m in reversed(range(j)):
            qc.cp(qs[m], qs[j], pi * 2.0 ** (m - j))
        if breaks and j > 0:
            qc.breakbarrier()
    if breaks:
        qc.breakbarrier()
    for i in range(k // 2):
        qc.swap(qs[i], qs[k - 1 - i])


def _iqft(qc: Circuit, qs) -> None:
    k = len(qs)
    for i in range(k // 2):
        qc.swap(qs[i], qs[k - 1 - i])
    for j in range(k):
        for m in range(j):
            qc.cp(qs[m], qs[j], -pi * 2.0 ** (m - j))
        qc.h(qs[j])


def qft3() -> Circuit:
    """3-qubit Fourier transform cut into its per-qubit stages (4 slices)."""
    c = Circuit()
    q = c.add_qreg("q", 3)
    _qft(c, list(q), breaks=True)
    return c


def full_adder() -> Circuit:
    """1-bit full adder (a=1, cin=1): input prep | carry | sum | readout."""
    c = Circuit()
    q = c.add_qreg("q", 4)  # a, b, cin, carry-out
    cl = c.add_creg("c", 2)
    c.x(q[0])
    c.x(q[2])
    c.breakbarrier()
    c.ccx(q[0], q[1], q[3])
    c.cx(q[0], q[1])
    c.breakbarrier()
    c.ccx(q[1], q[2], q[3])
    c.cx(q[2], q[1])
    c.breakbarrier()
    c.measure(q[1], cl[0])  # sum
    c.measure(q[3], cl[1])  # carry
    return c


def simon2() -> Circuit:
    """Simon's problem on 2 input qubits with secret string 11."""
    c = Circuit()
    x = c.add_qreg("x", 2)
    y = c.add_qreg("y", 2)
    anc = c.add_qreg("anc", 2)
    cl = c.add_creg("c", 2)
    c.h(x)
    c.breakbarrier()
    c.cx(x[0], anc[0])
    c.cx(x[1], anc[0])     # anc[0] = x0 xor x1
    c.cx(anc[0], y[0])
    c.cx(anc[0], y[1])     # f(x) = (x0^x1, x0^x1); f(x) = f(x xor 11)
    c.cx(x[1], anc[0])
    c.cx(x[0], anc[0])
    c.breakbarrier()
    c.h(x)
    c.measure(x, cl)
    return c


def _controlled_grover_step(c: Circuit, ctrl, s) -> None:
    """One Grover iterate on the 4 search qubits, controlled by `ctrl`.

    Marked state is |1111>. Controlled-H uses the exact identity
    H = RY(-pi/4) X RY(pi/4); the diffusion circuit realises the negative of
    the reflection about the mean, so a Z on the control restores the phase
    that becomes observable once the iterate is controlled.
    """
    def c_reflect_all_ones():
        c.h(s[3])
        c.mcx([ctrl, s[0], s[1], s[2]], s[3])
        c.h(s[3])

    def ch_block():
        for i in range(4):
            c.ry(s[i], pi / 4)
            c.cx(ctrl, s[i])
            c.ry(s[i], -pi / 4)

    def cx_block():
        for i in range(4):
            c.cx(ctrl, s[i])

    c_reflect_all_ones()   # controlled oracle
    ch_block()
    cx_block()
    c_reflect_all_ones()
    cx_block()
    ch_block()
    c.z(ctrl)


def quantum_counting8() -> Circuit:
    """Quantum counting: 4 counting qubits estimate the Grover phase of a
    1-of-16 search, giving 6 slices (prep, four controlled powers, readout)."""
    c = Circuit()
    cnt = c.add_qreg("cnt", 4)
    s = c.add_qreg("s", 4)
    cl = c.add_creg("c", 4)
    c.h(cnt)
    c.h(s)
    c.breakbarrier()
    for j in range(4):
        for _ in range(1 << j):
            _controlled_grover_step(c, cnt[j], s)
        c.breakbarrier()
    _iqft(c, list(cnt))
    c.measure(cnt, cl)
    return c


# -- fixture writing -----------------------------------------------------------


def _uniform_16_amplitudes() -> dict:
    return {format(i, "04b"): [0.25, 0.0] for i in range(16)}


def session_suite(circuit_file: str) -> dict:
    """The interactive walkthrough as a regression suite: check the prepared
    superposition, what the oracle marks, and the diffusion identity."""
    return {
        "circuit": circuit_file,
        "mode": "standalone",
        "cases": [
            {
                "name": "1 state_prep produces the uniform superposition",
                "slice": 0,
                "init": {"kind": "basis", "n": 4, "bits": "0000"},
                "run_mode": {"kind": "statevector"},
                "expectation": {
                    "exact_amplitudes": _uniform_16_amplitudes(),
                    "tolerance": 1e-9,
                },
            },
            {
                "name": "2 oracle flags the triangle nodes",
                "slice": 1,
                "mode": "accumulated",
                "init": {"kind": "basis", "n": 13, "bits": "0" * 13},
                "run_mode": {"kind": "sampling", "shots": 1024, "seed": 7},
                "expectation": {"pattern_present": "0111 ...... 111"},
            },
            {
                "name": "3 oracle never flags the four-node subset",
                "slice": 1,
                "mode": "accumulated",
                "init": {"kind": "basis", "n": 13, "bits": "0" * 13},
                "run_mode": {"kind": "sampling", "shots": 1024, "seed": 7},
                "expectation": {"pattern_absent": "1111 ...... 1.."},
            },
            {
                "name": "4 diffusion slice is a reflection about the mean",
                "slice": 2,
                "expectation": {"diffusion_identity": {"tolerance": 1e-6}},
            },
        ],
    }


FIXTURES = {
    "triangle_grover.qasm": (
        lambda: triangle_grover(iterations=3, buggy=False),
        "Grover triangle finding, 3 iterations, corrected diffusion",
    ),
    "triangle_grover_buggy.qasm": (
        lambda: triangle_grover(iterations=3, buggy=True),
        "Grover triangle finding, 3 iterations, buggy diffusion (extra NOT)",
    ),
    "triangle_debug.qasm": (
        lambda: triangle_debug_circuit(buggy=False),
        "one Grover iteration cut into state_prep | oracle | diffusion",
    ),
    "triangle_debug_buggy.qasm": (
        lambda: triangle_debug_circuit(buggy=True),
        "one Grover iteration with the buggy diffusion (extra NOT)",
    ),
    "triangle_diffusion_fixed.qasm": (
        lambda: diffusion_routine(buggy=False),
        "the diffusion routine alone, corrected",
    ),
    "triangle_diffusion_buggy.qasm": (
        lambda: diffusion_routine(buggy=True),
        "the diffusion routine alone, with the extra NOT on nodes[0]",
    ),
    "qft3.qasm": (qft3, "3-qubit quantum Fourier transform"),
    "full_adder.qasm": (full_adder, "1-bit full adder with readout"),
    "simon2.qasm": (simon2, "Simon's algorithm, 2-bit secret 11"),
    "quantum_counting8.qasm": (quantum_counting8, "4+4 qubit quantum counting"),
}


def write_fixtures(directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, (builder, description) in FIXTURES.items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(emit(builder(), comments=[description]))
        written.append(path)
    for suite_name, circuit_file in (
        ("triangle_session.json", "triangle_debug.qasm"),
        ("triangle_session_buggy.json", "triangle_debug_buggy.qasm"),
    ):
        path = os.path.join(directory, suite_name)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(session_suite(circuit_file), f, indent=2)
            f.write("\n")
        written.append(path)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    for p in write_fixtures(target):
        print(f"wrote {p}")
