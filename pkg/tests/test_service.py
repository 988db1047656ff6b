import os
import time

import pytest
from fastapi.testclient import TestClient

from qcdb.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def triangle_qasm(fixture_dir):
    with open(os.path.join(fixture_dir, "triangle_debug.qasm")) as f:
        return f.read()


def make_session(client, qasm, name="triangle_debug.qasm"):
    r = client.post("/sessions", json={"qasm": qasm, "name": name})
    assert r.status_code == 200, r.text
    return r.json()["id"]


def test_create_and_inspect_session(client, triangle_qasm):
    r = client.post("/sessions", json={"qasm": triangle_qasm, "name": "t.qasm"})
    body = r.json()
    assert body["circuit"]["n_qubits"] == 13
    assert len(body["circuit"]["breakbarriers"]) == 2
    sid = body["id"]

    r = client.get(f"/sessions/{sid}/circuit")
    circuit = r.json()
    assert len(circuit["instructions"]) == body["circuit"]["n_instructions"]
    first = circuit["instructions"][0]
    assert first["kind"] == "h" and first["provenance"]["line"] > 0


def test_slices_and_run_roundtrip(client, triangle_qasm):
    sid = make_session(client, triangle_qasm)
    r = client.post(f"/sessions/{sid}/slices", json={"mode": "standalone"})
    slices = r.json()["slices"]
    assert [s["behaviour"] for s in slices] == [
        "full_quantum", "pseudo_classical", "full_quantum",
    ]

    r = client.post(f"/sessions/{sid}/hslice", json={"slice": 0})
    assert r.json()["slices"][0]["n_qubits"] == 4

    r = client.post(f"/sessions/{sid}/run", json={
        "slice": 0,
        "init": {"kind": "basis", "n": 4, "bits": "0000"},
        "run_mode": "statevector",
    })
    amps = r.json()["amplitudes"]
    assert len(amps) == 16
    assert all(abs(a["prob"] - 0.0625) < 1e-9 for a in amps)


def test_run_sampling_deterministic(client, triangle_qasm):
    sid = make_session(client, triangle_qasm)
    client.post(f"/sessions/{sid}/slices", json={"mode": "accumulated"})
    body = {
        "slice": 1,
        "init": {"kind": "basis", "n": 13, "bits": "0" * 13},
        "run_mode": "sampling",
        "shots": 512,
        "seed": 7,
    }
    r1 = client.post(f"/sessions/{sid}/run", json=body)
    r2 = client.post(f"/sessions/{sid}/run", json=body)
    assert r1.json() == r2.json()
    assert sum(r1.json()["counts"].values()) == 512


def test_breakbarrier_endpoints(client):
    qasm = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"
    sid = make_session(client, qasm, "mini.qasm")
    r = client.post(f"/sessions/{sid}/breakbarriers", json={"position": 1})
    assert r.json()["breakbarriers"] == [1]
    r = client.post(f"/sessions/{sid}/slices", json={"mode": "standalone"})
    assert len(r.json()["slices"]) == 2
    r = client.delete(f"/sessions/{sid}/breakbarriers/0")
    assert r.json()["breakbarriers"] == []


def test_gates_endpoint(client, fixture_dir):
    with open(os.path.join(fixture_dir, "triangle_debug_buggy.qasm")) as f:
        qasm = f.read()
    sid = make_session(client, qasm, "buggy.qasm")
    r = client.get(f"/sessions/{sid}/gates/h")
    body = r.json()
    assert body["total"] == sum(s["occurrences"] for s in body["sites"])
    r = client.get(f"/sessions/{sid}/gates/zz")
    assert r.status_code == 422 and r.json()["error"] == "UnknownGateKind"


def test_gates_endpoint_on_diffusion_fixture(client, fixture_dir):
    with open(os.path.join(fixture_dir, "triangle_diffusion_buggy.qasm")) as f:
        qasm = f.read()
    sid = make_session(client, qasm, "diff.qasm")
    body = client.get(f"/sessions/{sid}/gates/x").json()
    assert len(body["sites"]) == 3
    assert body["total"] == 9


def test_error_mapping(client, triangle_qasm):
    assert client.post("/sessions", json={"oops": 1}).status_code == 400
    assert client.get("/sessions/unknown/circuit").status_code == 404
    sid = make_session(client, triangle_qasm)
    r = client.post(f"/sessions/{sid}/run", json={"slice": 99})
    assert r.status_code == 404 and r.json()["error"] == "SliceNotFound"
    r = client.post(f"/sessions/{sid}/breakbarriers", json={"position": 10_000})
    assert r.status_code == 422 and r.json()["error"] == "PositionOutOfRange"
    r = client.post("/sessions", json={"qasm": "OPENQASM 2.0; zz q[0];"})
    assert r.status_code == 422 and r.json()["error"] == "QasmError"
    assert r.json()["diagnostics"]


def test_sessions_are_isolated(client, triangle_qasm):
    a = make_session(client, triangle_qasm)
    b = make_session(client, "OPENQASM 2.0;\nqreg q[1];\nx q[0];\n", "other.qasm")
    client.post(f"/sessions/{a}/breakbarriers", json={"position": 0})
    ra = client.get(f"/sessions/{a}/circuit").json()
    rb = client.get(f"/sessions/{b}/circuit").json()
    assert ra["n_qubits"] == 13 and rb["n_qubits"] == 1
    assert len(rb["breakbarriers"]) == 0


def test_session_ttl_expiry(triangle_qasm):
    client = TestClient(create_app(ttl=0.0))
    sid = make_session(client, triangle_qasm)
    time.sleep(0.01)
    assert client.get(f"/sessions/{sid}/circuit").status_code == 404


def test_delete_session(client, triangle_qasm):
    sid = make_session(client, triangle_qasm)
    assert client.delete(f"/sessions/{sid}").status_code == 200
    assert client.get(f"/sessions/{sid}/circuit").status_code == 404


def test_slice_qasm_export_endpoint(client, fixture_dir, triangle_qasm, tmp_path):
    """The API exposes the same QASM text the shell's export writes."""
    from qcdb.session import Session

    sid = make_session(client, triangle_qasm)
    client.post(f"/sessions/{sid}/slices", json={"mode": "standalone"})
    r = client.get(f"/sessions/{sid}/slices/1/qasm")
    assert r.status_code == 200
    api_qasm = r.json()["qasm"]

    session = Session()
    session.load_file(os.path.join(fixture_dir, "triangle_debug.qasm"))
    session.export(str(tmp_path))
    with open(tmp_path / "triangle_debug.slice1.qasm") as f:
        assert f.read() == api_qasm
    assert client.get(f"/sessions/{sid}/slices/9/qasm").status_code == 404


def test_api_shell_parity(client, fixture_dir, triangle_qasm):
    """The API must expose the same numbers the shell renders."""
    from qcdb.session import Session
    from qcdb.shell import execute_command

    sid = make_session(client, triangle_qasm)
    client.post(f"/sessions/{sid}/slices", json={"mode": "standalone"})
    client.post(f"/sessions/{sid}/hslice", json={"slice": 0})
    r = client.post(f"/sessions/{sid}/run", json={
        "slice": 0,
        "init": {"kind": "basis", "n": 4, "bits": "0000"},
        "run_mode": "statevector",
    })
    api_amps = [(a["bits"], a["re"], a["im"], a["prob"]) for a in r.json()["amplitudes"]]

    session = Session()
    session.load_file(os.path.join(fixture_dir, "triangle_debug.qasm"))
    execute_command(session, "hslice 0")
    out = execute_command(session, 'run 0 --init {"kind":"basis","n":4,"bits":"0000"}')
    shell_amps = []
    for line in out.output.splitlines():
        bits, re_, im, prob = line.split()
        shell_amps.append((bits, float(re_), float(im), float(prob)))
    assert [(b, round(r_, 9), round(i, 9), round(p, 9)) for b, r_, i, p in api_amps] == [
        (b, round(r_, 9), round(i, 9), round(p, 9)) for b, r_, i, p in shell_amps
    ]
