import itertools
from math import comb, sqrt

import numpy as np
import pytest

from qcdb.errors import InvalidSpec
from qcdb.states import StateSpec, make_state


def amps(kind, n, **kw):
    return make_state(StateSpec(kind, n, **kw)).amplitudes


def test_ghz3_closed_form():
    a = amps("ghz", 3)
    expect = np.zeros(8)
    expect[0] = expect[7] = 1 / sqrt(2)
    np.testing.assert_allclose(a, expect, atol=1e-15)


def test_w3_closed_form():
    a = amps("w", 3)
    expect = np.zeros(8)
    for i in (1, 2, 4):
        expect[i] = 1 / sqrt(3)
    np.testing.assert_allclose(a, expect, atol=1e-15)


def test_dicke_4_2_closed_form():
    a = amps("dicke", 4, k=2)
    expect = np.zeros(16)
    for i in (3, 5, 6, 9, 10, 12):
        expect[i] = 1 / sqrt(6)
    np.testing.assert_allclose(a, expect, atol=1e-15)
    assert comb(4, 2) == 6


def test_uniform_and_basis():
    np.testing.assert_allclose(amps("uniform", 3), np.full(8, 2 ** -1.5), atol=1e-15)
    a = amps("basis", 4, bits="0111")
    assert a[0b0111] == 1.0 and np.count_nonzero(a) == 1


def test_explicit_amplitudes():
    a = amps("explicit", 1, amps=[[0.6, 0.0], [0.0, 0.8]])
    np.testing.assert_allclose(a, [0.6, 0.8j], atol=0)


def test_normalization_all_kinds():
    specs = [
        StateSpec("uniform", 5),
        StateSpec("ghz", 4),
        StateSpec("w", 5),
        StateSpec("dicke", 5, k=3),
        StateSpec("basis", 3, bits="101"),
    ]
    for spec in specs:
        norm = np.sum(np.abs(make_state(spec).amplitudes) ** 2)
        assert abs(norm - 1.0) <= 1e-12


def test_dicke_degenerate_cases_exact():
    for n in (1, 2, 4):
        np.testing.assert_array_equal(amps("dicke", n, k=1), amps("w", n))
        np.testing.assert_array_equal(amps("dicke", n, k=0), amps("basis", n, bits="0" * n))
        np.testing.assert_array_equal(amps("dicke", n, k=n), amps("basis", n, bits="1" * n))


def _permute_qubits(a, perm):
    n = len(perm)
    out = np.zeros_like(a)
    for i in range(1 << n):
        j = 0
        for q in range(n):
            j |= ((i >> q) & 1) << perm[q]
        out[j] = a[i]
    return out


@pytest.mark.parametrize("kind,kw", [("ghz", {}), ("w", {}), ("dicke", {"k": 2})])
def test_symmetry_under_qubit_permutations(kind, kw):
    for n in range(2, 7):
        if kind == "dicke" and n < 2:
            continue
        a = amps(kind, n, **kw)
        for perm in itertools.permutations(range(n)):
            np.testing.assert_array_equal(_permute_qubits(a, perm), a)


def test_invalid_specs_rejected():
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("basis", 3, bits="01"))
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("basis", 2, bits="21"))
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("dicke", 3, k=4))
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("dicke", 3))
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("explicit", 1, amps=[[1, 0]]))
    with pytest.raises(InvalidSpec):
        make_state(StateSpec("explicit", 1, amps=[[1, 0], [1, 0]]))
    with pytest.raises(InvalidSpec):
        StateSpec("teleport", 2)


def test_json_round_trip():
    spec = StateSpec.from_json({"kind": "dicke", "n": 4, "k": 2})
    assert spec.to_json() == {"kind": "dicke", "n": 4, "k": 2}
    with pytest.raises(InvalidSpec):
        StateSpec.from_json({"kind": "basis", "n": 2, "bogus": 1})
    with pytest.raises(InvalidSpec):
        StateSpec.from_json({})
