import pytest

from qcdb.circuit import (
    Circuit,
    GateProvenance,
    erase_breakbarriers,
    gate_info,
    gate_loc,
    insert_breakbarrier,
    remove_breakbarrier,
    start_debug,
)
from qcdb.corpus import diffusion_routine
from qcdb.errors import (
    DebugModeOff,
    InvalidInstruction,
    PositionOutOfRange,
    UnknownGateKind,
)

from helpers import random_circuit


def small_circuit():
    c = Circuit()
    q = c.add_qreg("q", 3)
    c.h(q[0]).cx(q[0], q[1]).ccx(q[0], q[1], q[2])
    c.x(q[2]).z(q[1]).swap(q[0], q[2])
    return c


def test_start_debug_flips_flag_and_is_idempotent():
    c = small_circuit()
    assert not c.debug_mode
    d = start_debug(c)
    assert d.debug_mode and not c.debug_mode
    assert start_debug(d) is d
    assert d.signature() == c.signature()


def test_builder_without_provenance_stores_synthetic_tag():
    c = start_debug(Circuit())
    q = c.add_qreg("q", 1)
    c.x(q[0])
    prov = c.instructions[0].provenance
    assert prov.describe() == "unknown:0:0"


def test_builder_label_becomes_context():
    c = Circuit()
    q = c.add_qreg("q", 1)
    c.x(q[0], prov="init_block")
    assert c.instructions[0].provenance.context == "init_block"


def test_insert_breakbarrier_positions_and_errors():
    c = start_debug(small_circuit())
    with_marker = insert_breakbarrier(c, 3)
    assert len(with_marker.instructions) == 7
    assert with_marker.instructions[3].kind == "breakbarrier"
    # full-width span
    assert list(with_marker.instructions[3].qubits) == with_marker.all_qubit_refs()

    trailing = insert_breakbarrier(c, len(c.instructions))
    assert trailing.instructions[-1].kind == "breakbarrier"

    with pytest.raises(PositionOutOfRange):
        insert_breakbarrier(c, 99)
    with pytest.raises(DebugModeOff):
        insert_breakbarrier(small_circuit(), 0)


def test_erase_breakbarriers_restores_instruction_sequence():
    c = start_debug(small_circuit())
    original = c.signature()
    c = insert_breakbarrier(c, 0)
    c = insert_breakbarrier(c, 4)
    c = insert_breakbarrier(c, len(c.instructions))
    assert erase_breakbarriers(c).signature() == original


def test_remove_breakbarrier():
    c = start_debug(small_circuit())
    c = insert_breakbarrier(c, 1)
    c = insert_breakbarrier(c, 4)
    assert len(c.breakbarrier_positions()) == 2
    c = remove_breakbarrier(c, 0)
    assert c.breakbarrier_positions() == [3]
    with pytest.raises(PositionOutOfRange):
        remove_breakbarrier(c, 5)


def test_arity_and_param_validation_rejected_at_construction():
    c = Circuit()
    q = c.add_qreg("q", 3)
    with pytest.raises(InvalidInstruction):
        c.append("cx", [q[0]])
    with pytest.raises(InvalidInstruction):
        c.append("cx", [q[0], q[0]])  # duplicate operand
    with pytest.raises(InvalidInstruction):
        c.append("rx", [q[0]])  # missing angle
    with pytest.raises(InvalidInstruction):
        c.append("h", [q[0]], params=[0.3])
    with pytest.raises(InvalidInstruction):
        c.append("mcx", [q[0]])
    with pytest.raises(UnknownGateKind):
        c.append("zz", [q[0]])
    with pytest.raises(InvalidInstruction):
        c.measure(q[0], ("nope", 0))
    assert len(c.instructions) == 0  # nothing stored


def test_register_name_collision_and_bounds():
    c = Circuit()
    c.add_qreg("q", 2)
    with pytest.raises(InvalidInstruction):
        c.add_qreg("q", 3)
    with pytest.raises(InvalidInstruction):
        c.add_creg("q", 1)
    with pytest.raises(InvalidInstruction):
        c.add_qreg("r", 0)
    with pytest.raises(InvalidInstruction):
        c.x(("q", 2))


def test_gate_info_register_wide_counts_one_site():
    c = Circuit()
    q = c.add_qreg("q", 4)
    site = GateProvenance("prog.py", 3, 1, "block")
    c.x(q, prov=site)          # register-wide: 4 occurrences, one site
    c.x(q[1], prov=GateProvenance("prog.py", 7, 1, "block"))
    info = gate_info(c)
    total, sites = info["x"]
    assert total == 5
    assert [count for _, count in sites] == [4, 1]


def test_gate_info_empty_circuit():
    assert gate_info(Circuit()) == {}


def test_gate_info_one_gate_per_site():
    c = Circuit()
    q = c.add_qreg("q", 2)
    c.h(q[0], prov=GateProvenance("f.qasm", 3, 1))
    c.h(q[1], prov=GateProvenance("f.qasm", 4, 1))
    total, sites = gate_info(c)["h"]
    assert total == 2 and len(sites) == 2


def test_gate_info_conservation_random(rng):
    for _ in range(20):
        c = random_circuit(rng, 4, 25, n_breakbarriers=2)
        info = gate_info(c)
        for kind, (total, sites) in info.items():
            assert total == sum(1 for i in c.instructions if i.kind == kind)
            assert sum(count for _, count in sites) == total


def test_gate_loc_buggy_diffusion_report():
    report = gate_loc(diffusion_routine(buggy=True), "x")
    assert "3 site(s), 9 occurrence(s)" in report
    assert "line 7, in grover_diff" in report
    fixed = gate_loc(diffusion_routine(buggy=False), "x")
    assert "2 site(s), 8 occurrence(s)" in fixed


def test_gate_loc_unknown_and_absent_kinds():
    c = small_circuit()
    with pytest.raises(UnknownGateKind):
        gate_loc(c, "zz")
    assert gate_loc(c, "tdg") == "gate 'tdg': 0 occurrences"


def test_breakbarrier_via_builder_covers_all_registers():
    c = Circuit()
    c.add_qreg("a", 2)
    c.add_qreg("b", 1)
    c.h(("a", 0))
    c.breakbarrier()
    ins = c.instructions[-1]
    assert ins.kind == "breakbarrier"
    assert list(ins.qubits) == [("a", 0), ("a", 1), ("b", 0)]


def test_measure_register_broadcast_pairs_up():
    c = Circuit()
    q = c.add_qreg("q", 3)
    cl = c.add_creg("c", 3)
    c.measure(q, cl)
    assert len(c.instructions) == 3
    assert c.instructions[1].qubits == (("q", 1),)
    assert c.instructions[1].clbits == (("c", 1),)
    c2 = Circuit()
    c2.add_qreg("q", 3)
    c2.add_creg("c", 2)
    with pytest.raises(InvalidInstruction):
        c2.measure("q", "c")
