#!/usr/bin/env python3
"""Record debug-service responses as JSON fixtures for the offline UI tests.

Run from the repo root after building fixtures/:

    python frontend/scripts/record_fixtures.py
"""
import json
import os
import sys

from fastapi.testclient import TestClient

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from qcdb.service import create_app  # noqa: E402

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
OUT = os.path.join(ROOT, "frontend", "tests", "fixtures")


def record():
    os.makedirs(OUT, exist_ok=True)
    client = TestClient(create_app())

    def save(name, payload):
        with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        print(f"wrote frontend/tests/fixtures/{name}")

    with open(os.path.join(ROOT, "fixtures", "triangle_debug.qasm")) as f:
        debug_qasm = f.read()
    r = client.post("/sessions", json={"qasm": debug_qasm, "name": "triangle_debug.qasm"})
    r.raise_for_status() if hasattr(r, "raise_for_status") else None
    session = r.json()
    save("session.json", session)
    sid = session["id"]

    save("circuit.json", client.get(f"/sessions/{sid}/circuit").json())
    save("slices.json", client.post(f"/sessions/{sid}/slices", json={"mode": "standalone"}).json())
    save("hslice0.json", client.post(f"/sessions/{sid}/hslice", json={"slice": 0}).json())
    save("run_slice0.json", client.post(f"/sessions/{sid}/run", json={
        "slice": 0,
        "init": {"kind": "basis", "n": 4, "bits": "0000"},
        "run_mode": "statevector",
    }).json())
    client.post(f"/sessions/{sid}/slices", json={"mode": "accumulated"})
    save("run_oracle_counts.json", client.post(f"/sessions/{sid}/run", json={
        "slice": 1,
        "init": {"kind": "basis", "n": 13, "bits": "0" * 13},
        "run_mode": "sampling",
        "shots": 1024,
        "seed": 7,
    }).json())

    with open(os.path.join(ROOT, "fixtures", "triangle_diffusion_buggy.qasm")) as f:
        buggy_qasm = f.read()
    r = client.post("/sessions", json={"qasm": buggy_qasm, "name": "triangle_diffusion_buggy.qasm"})
    sid2 = r.json()["id"]
    save("gates_x_buggy_diffusion.json", client.get(f"/sessions/{sid2}/gates/x").json())


if __name__ == "__main__":
    record()
