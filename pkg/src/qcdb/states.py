"""Initial-state construction for slice testing.

States are injected directly as amplitude vectors (exact by construction),
not synthesized as gate circuits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

from .errors import InvalidSpec
from .sim import StateVector

KINDS = ("basis", "uniform", "ghz", "w", "dicke", "explicit")


@dataclass
class StateSpec:
    kind: str
    n: int
    bits: str | None = None          # basis
    k: int | None = None             # dicke excitation count
    amps: list | None = None         # explicit, entries [re, im] or numbers

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown state kind {self.kind!r}")
        if self.n < 0:
            raise InvalidSpec("qubit count must be >= 0")

    @classmethod
    def from_json(cls, obj: dict) -> "StateSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InvalidSpec("state spec must be an object with a 'kind' field")
        known = {"kind", "n", "bits", "k", "amps"}
        extra = set(obj) - known
        if extra:
            raise InvalidSpec(f"unknown state spec fields: {sorted(extra)}")
        return cls(
            kind=obj["kind"],
            n=int(obj.get("n", -1)),
            bits=obj.get("bits"),
            k=obj.get("k"),
            amps=obj.get("amps"),
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        if self.bits is not None:
            out["bits"] = self.bits
        if self.k is not None:
            out["k"] = self.k
        if self.amps is not None:
            out["amps"] = self.amps
        return out


def make_state(spec: StateSpec) -> StateVector:
    n = spec.n
    if n < 0:
        raise InvalidSpec("state spec needs a qubit count")
    dim = 1 << n
    amps = np.zeros(dim, dtype=np.complex128)

    if spec.kind == "basis":
        bits = spec.bits if spec.bits is not None else "0" * n
        if len(bits) != n or any(b not in "01" for b in bits):
            raise InvalidSpec(f"basis bits must be {n} characters of 0/1, got {bits!r}")
        amps[int(bits, 2) if n else 0] = 1.0
    elif spec.kind == "uniform":
        amps[:] = 2.0 ** (-n / 2)
    elif spec.kind == "ghz":
        if n < 1:
            raise InvalidSpec("ghz needs at least one qubit")
        amps[0] = amps[dim - 1] = 1.0 / sqrt(2.0)
    elif spec.kind == "w":
        if n < 1:
            raise InvalidSpec("w needs at least one qubit")
        for j in range(n):
            amps[1 << j] = 1.0 / sqrt(n)
    elif spec.kind == "dicke":
        if spec.k is None or not 0 <= spec.k <= n:
            raise InvalidSpec(f"dicke needs 0 <= k <= {n}, got {spec.k!r}")
        c = 1.0 / sqrt(comb(n, spec.k))
        for i in range(dim):
            if bin(i).count("1") == spec.k:
                amps[i] = c
    elif spec.kind == "explicit":
        if spec.amps is None or len(spec.amps) != dim:
            raise InvalidSpec(f"explicit state needs {dim} amplitudes")
        for i, entry in enumerate(spec.amps):
            if isinstance(entry, (list, tuple)):
                if len(entry) != 2:
                    raise InvalidSpec("explicit amplitudes are [re, im] pairs")
                amps[i] = complex(entry[0], entry[1])
            else:
                amps[i] = complex(entry)
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise InvalidSpec(f"explicit state not normalized: sum |a|^2 = {norm!r}")
    return StateVector(n, amps)
