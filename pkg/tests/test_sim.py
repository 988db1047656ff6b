import numpy as np
import pytest

from qcdb.circuit import Circuit
from qcdb.errors import (
    CapExceeded,
    InvalidSpec,
    MeasurementPresent,
    MidCircuitMeasurement,
    NoMeasurements,
    QubitCountMismatch,
)
from qcdb.sim import (
    CountsMap,
    StateVector,
    bitstring,
    dump_statevector,
    exact_outcome_distribution,
    format_clbit_outcome,
    render_counts,
    run_statevector,
    sample,
    unitary_of,
)

from helpers import random_circuit, random_state, simulate_ref, unitary_ref


def circuit_on(n, build):
    c = Circuit()
    q = c.add_qreg("q", n)
    build(c, q)
    return c


def test_four_hadamards_uniform():
    c = circuit_on(4, lambda c, q: c.h(q))
    out = run_statevector(c, StateVector.zero(4))
    np.testing.assert_allclose(out.amplitudes, np.full(16, 0.25), atol=1e-12)


def test_empty_circuit_identity():
    init = StateVector(2, np.array([0.5, 0.5, 0.5, 0.5], dtype=complex))
    out = run_statevector(circuit_on(2, lambda c, q: None), init)
    np.testing.assert_allclose(out.amplitudes, init.amplitudes, atol=0)


def test_x_flips_zero_to_one():
    out = run_statevector(circuit_on(1, lambda c, q: c.x(q[0])), StateVector.zero(1))
    np.testing.assert_allclose(out.amplitudes, [0, 1], atol=0)


def test_hadamard_matrix():
    u = unitary_of(circuit_on(1, lambda c, q: c.h(q[0])))
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(u, [[s, s], [s, -s]], atol=1e-12)


def test_empty_two_qubit_unitary_is_identity():
    u = unitary_of(circuit_on(2, lambda c, q: None))
    np.testing.assert_allclose(u, np.eye(4), atol=0)


def test_cx_permutation_little_endian():
    # control = qubit 0: basis |q1 q0>: 01 <-> 11 (indices 1 and 3)
    u = unitary_of(circuit_on(2, lambda c, q: c.cx(q[0], q[1])))
    expect = np.eye(4)[:, [0, 3, 2, 1]]
    np.testing.assert_allclose(u, expect, atol=0)


def test_measurement_present_raises():
    c = circuit_on(1, lambda c, q: c.x(q[0]))
    cl = c.add_creg("c", 1)
    c.measure(("q", 0), cl[0])
    with pytest.raises(MeasurementPresent):
        run_statevector(c, StateVector.zero(1))
    with pytest.raises(MeasurementPresent):
        unitary_of(c)


def test_qubit_count_mismatch():
    with pytest.raises(QubitCountMismatch):
        run_statevector(circuit_on(2, lambda c, q: None), StateVector.zero(1))


def test_cap_exceeded(monkeypatch):
    monkeypatch.setenv("QCDB_QUBIT_CAP", "3")
    with pytest.raises(CapExceeded):
        StateVector.zero(4)
    monkeypatch.delenv("QCDB_QUBIT_CAP")
    with pytest.raises(CapExceeded):
        unitary_of(circuit_on(11, lambda c, q: None))


def test_statevector_normalization_validated():
    with pytest.raises(InvalidSpec):
        StateVector(1, np.array([1.0, 1.0]))
    with pytest.raises(InvalidSpec):
        StateVector(2, np.array([1.0, 0.0]))


def test_against_reference_simulator(rng):
    for _ in range(40):
        n = int(rng.integers(1, 7))
        c = random_circuit(rng, n, int(rng.integers(1, 25)))
        init = random_state(rng, n)
        fast = run_statevector(c, StateVector(n, init.copy())).amplitudes
        slow = simulate_ref(c, init)
        np.testing.assert_allclose(fast, slow, atol=1e-9)


def test_unitary_against_reference(rng):
    for _ in range(10):
        n = int(rng.integers(1, 5))
        c = random_circuit(rng, n, int(rng.integers(1, 12)))
        np.testing.assert_allclose(unitary_of(c), unitary_ref(c), atol=1e-9)


def test_normalization_and_unitarity_random(rng):
    for _ in range(25):
        n = int(rng.integers(1, 7))
        c = random_circuit(rng, n, 20)
        out = run_statevector(c, StateVector.zero(n))
        assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) <= 1e-10
        if n <= 6:
            u = unitary_of(c)
            err = np.max(np.abs(u.conj().T @ u - np.eye(1 << n)))
            assert err <= 1e-8


def test_sample_support_and_determinism():
    c = circuit_on(1, lambda c, q: c.h(q[0]))
    cl = c.add_creg("c", 1)
    c.measure(("q", 0), cl[0])
    cm1 = sample(c, StateVector.zero(1), shots=1024, seed=7)
    cm2 = sample(c, StateVector.zero(1), shots=1024, seed=7)
    assert cm1 == cm2
    assert cm1.shots == 1024 and sum(cm1.counts.values()) == 1024
    assert set(cm1.counts) == {"0", "1"}
    cm3 = sample(c, StateVector.zero(1), shots=1024, seed=8)
    assert cm3 != cm1  # different stream


def test_sample_deterministic_circuit():
    c = circuit_on(1, lambda c, q: c.x(q[0]))
    cl = c.add_creg("c", 1)
    c.measure(("q", 0), cl[0])
    cm = sample(c, StateVector.zero(1), shots=50, seed=1)
    assert cm.counts == {"1": 50}


def test_sample_errors():
    c = circuit_on(1, lambda c, q: c.h(q[0]))
    with pytest.raises(NoMeasurements):
        sample(c, StateVector.zero(1), 10, 0)
    d = circuit_on(1, lambda c, q: c.h(q[0]))
    cl = d.add_creg("c", 1)
    d.measure(("q", 0), cl[0])
    d.x(("q", 0))
    with pytest.raises(MidCircuitMeasurement):
        sample(d, StateVector.zero(1), 10, 0)


def test_exact_distribution_grouping_by_register():
    c = Circuit()
    a = c.add_qreg("a", 2)
    b = c.add_qreg("b", 1)
    ca = c.add_creg("ca", 2)
    cb = c.add_creg("cb", 1)
    c.x(a[0])
    c.x(b[0])
    c.measure(a, ca)
    c.measure(b, cb)
    dist = exact_outcome_distribution(c, StateVector.zero(3))
    # first-declared register leftmost; bit 0 rightmost within a register
    assert dist == {"01 1": pytest.approx(1.0)}


def test_format_clbit_outcome_orders_groups():
    c = Circuit()
    c.add_qreg("q", 7)
    c.add_creg("c", 4)
    c.add_creg("tri", 3)
    # c[0..3] = 1,1,1,0  -> "0111"; tri = 1,1,1 -> "111"
    values = {0: 1, 1: 1, 2: 1, 3: 0, 4: 1, 5: 1, 6: 1}
    assert format_clbit_outcome(c, values) == "0111 111"


def test_partial_measurement_marginal():
    c = circuit_on(2, lambda c, q: (c.h(q[0]), c.x(q[1])))
    cl = c.add_creg("c", 1)
    c.measure(("q", 0), cl[0])
    dist = exact_outcome_distribution(c, StateVector.zero(2))
    assert dist == {"0": pytest.approx(0.5), "1": pytest.approx(0.5)}


def test_dump_statevector_format_and_suppression():
    sv = run_statevector(circuit_on(1, lambda c, q: c.h(q[0])), StateVector.zero(1))
    dump = dump_statevector(sv)
    assert dump.splitlines() == [
        "0 0.7071067812 0 0.5",
        "1 0.7071067812 0 0.5",
    ]
    tiny = np.zeros(4, dtype=complex)
    tiny[0] = 1.0
    tiny[3] = 1e-13
    assert len(dump_statevector(StateVector(2, tiny)).splitlines()) == 1


def test_render_counts_sorting():
    cm = CountsMap(10, {"01": 3, "11": 3, "00": 4})
    assert render_counts(cm).splitlines() == ["00 4", "01 3", "11 3"]


def test_bitstring_display_convention():
    assert bitstring(1, 4) == "0001"  # qubit 0 rightmost
    assert bitstring(8, 4) == "1000"
