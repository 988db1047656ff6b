"""Declarative slice testing.

A test case names a slice, an initial state and an expectation; running it
produces a structured report and never raises on a plain mismatch. Suites are
JSON documents (see docs/api.md for the schema); the suite runner exits
nonzero when any case fails, which makes suites usable for scripted
regression runs.

Iteration-count estimate for amplitude amplification: floor((pi/4)*sqrt(N/m))
for search-space size N and m solutions.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit
from .errors import (
    CapExceeded,
    DomainMismatch,
    InvalidCounts,
    InvalidSpec,
    MeasurementPresent,
    PatternLengthMismatch,
    QcdbError,
    QubitCountMismatch,
    SliceNotFound,
)
from .sim import (
    CountsMap,
    StateVector,
    bitstring,
    run_statevector,
    sample,
    unitary_of,
)
from .slicer import Slice, hslice, whole_circuit_slice
from .states import StateSpec, make_state

WILDCARDS = {".", "·", "*"}


@dataclass(frozen=True)
class IterationEstimate:
    N: int
    m: int
    opt_iter: int


def opt_iterations(N: int, m: int) -> IterationEstimate:
    if m < 1 or m > N:
        raise InvalidCounts(f"need N >= m >= 1, got N={N}, m={m}")
    return IterationEstimate(N, m, math.floor((math.pi / 4.0) * math.sqrt(N / m)))


@dataclass(frozen=True)
class OutcomePattern:
    """Fixed-width mask over displayed bits; '.', '·' or '*' match either bit.

    Spaces are cosmetic group separators and are ignored when matching.
    """

    pattern: str

    def core(self) -> str:
        return self.pattern.replace(" ", "")

    def matches(self, outcome: str) -> bool:
        got = outcome.replace(" ", "")
        want = self.core()
        if len(got) != len(want):
            raise PatternLengthMismatch(
                f"pattern covers {len(want)} bits but outcome has {len(got)}"
            )
        return all(w in WILDCARDS or w == g for w, g in zip(want, got))


def filter_counts(counts: CountsMap, pattern: OutcomePattern | str) -> CountsMap:
    if isinstance(pattern, str):
        pattern = OutcomePattern(pattern)
    kept = {k: v for k, v in counts.counts.items() if pattern.matches(k)}
    return CountsMap(shots=sum(kept.values()), counts=kept)


def tvd(p: dict[str, float], q: dict[str, float]) -> float:
    """Total variation distance: half the L1 distance between distributions."""
    for name, dist in (("p", p), ("q", q)):
        total = sum(dist.values())
        if abs(total - 1.0) > 1e-9:
            raise DomainMismatch(f"distribution {name} sums to {total!r}, not 1")
    lengths = {len(k.replace(" ", "")) for k in (*p, *q)}
    if len(lengths) > 1:
        raise DomainMismatch(f"outcome strings of mixed lengths: {sorted(lengths)}")
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


@dataclass
class DiffusionReport:
    passed: bool
    deviation: float
    n_qubits: int
    message: str = ""


def diffusion_check(sl: Slice, tolerance: float = 1e-6) -> DiffusionReport:
    """Compare a slice's unitary against the reflection 2|s><s| - I on its
    used qubits, up to a global phase. |s> is the uniform state.
    """
    if sl.circuit.has_measurement:
        raise MeasurementPresent("diffusion check needs a measurement-free slice")
    reduced = hslice(sl)
    n = reduced.circuit.n_qubits
    if n > 10:
        raise CapExceeded(f"diffusion check capped at 10 used qubits, slice uses {n}")
    u = unitary_of(reduced.circuit)
    dim = 1 << n
    d_ref = np.full((dim, dim), 2.0 / dim, dtype=np.complex128)
    np.fill_diagonal(d_ref, 2.0 / dim - 1.0)
    # align the free global phase via the Hilbert-Schmidt inner product
    overlap = np.trace(d_ref.conj().T @ u)
    phase = np.exp(1j * np.angle(overlap)) if abs(overlap) > 0 else 1.0
    deviation = float(np.max(np.abs(u - phase * d_ref)))
    return DiffusionReport(
        passed=deviation <= tolerance,
        deviation=deviation,
        n_qubits=n,
        message=f"max deviation from reflection about the mean: {deviation:.3e}",
    )


# -- test cases --------------------------------------------------------------

EXPECTATION_KINDS = (
    "exact_amplitudes",
    "distribution",
    "pattern_present",
    "pattern_absent",
    "diffusion_identity",
)


@dataclass
class TestCase:
    __test__ = False  # not a pytest class

    name: str
    slice_ref: int | str = "full"
    init: StateSpec | None = None
    run_mode: str = "statevector"      # "statevector" | "sampling"
    shots: int = 1024
    seed: int = 0
    expectation: dict = field(default_factory=dict)
    mode: str | None = None            # slicing-mode override for this case

    @classmethod
    def from_json(cls, obj: dict) -> "TestCase":
        if "name" not in obj or "expectation" not in obj:
            raise InvalidSpec("test case needs 'name' and 'expectation'")
        exp = obj["expectation"]
        kinds = [k for k in EXPECTATION_KINDS if k in exp]
        if len(kinds) != 1:
            raise InvalidSpec(
                f"expectation must contain exactly one of {EXPECTATION_KINDS}"
            )
        rm = obj.get("run_mode", {"kind": "statevector"})
        if isinstance(rm, str):
            rm = {"kind": rm}
        init = obj.get("init")
        return cls(
            name=obj["name"],
            slice_ref=obj.get("slice", "full"),
            init=StateSpec.from_json(init) if init else None,
            run_mode=rm.get("kind", "statevector"),
            shots=int(rm.get("shots", 1024)),
            seed=int(rm.get("seed", 0)),
            expectation=exp,
            mode=obj.get("mode"),
        )

    @property
    def expectation_kind(self) -> str:
        return next(k for k in EXPECTATION_KINDS if k in self.expectation)


@dataclass
class TestReport:
    __test__ = False  # not a pytest class

    name: str
    status: str                    # "pass" | "fail" | "error"
    observed: object = None        # StateVector | CountsMap | DiffusionReport
    deviation: float | None = None
    matched_outcomes: list[str] = field(default_factory=list)
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _resolve_slice(circuit: Circuit, slices: list[Slice], ref) -> Slice:
    if ref == "full":
        return whole_circuit_slice(circuit)
    try:
        idx = int(ref)
    except (TypeError, ValueError):
        raise SliceNotFound(f"slice reference {ref!r} is not an index or 'full'")
    if not 0 <= idx < len(slices):
        raise SliceNotFound(f"slice {idx} not in 0..{len(slices) - 1}")
    return slices[idx]


def fit_slice_to_init(sl: Slice, init: StateVector) -> Slice:
    """h-slice automatically when the initial state covers the used qubits only."""
    if init.n == sl.circuit.n_qubits:
        return sl
    reduced = hslice(sl)
    if init.n == reduced.circuit.n_qubits:
        return reduced
    raise QubitCountMismatch(
        f"initial state has {init.n} qubits; slice has {sl.circuit.n_qubits}"
        f" ({reduced.circuit.n_qubits} after horizontal slicing)"
    )


def auto_measured(circuit: Circuit) -> Circuit:
    """Copy that measures every qubit, outcomes grouped by quantum register."""
    new = Circuit()
    for reg in circuit.qregs:
        new.add_qreg(reg.name, reg.size)
    mirrors = {}
    for reg in circuit.qregs:
        name = f"{reg.name}_m"
        while any(r.name == name for r in new.cregs + new.qregs):
            name += "_"
        mirrors[reg.name] = new.add_creg(name, reg.size)
    new.instructions = [i for i in circuit.instructions if i.kind != "breakbarrier"]
    for reg in circuit.qregs:
        for i in range(reg.size):
            new.measure((reg.name, i), (mirrors[reg.name].name, i))
    return new


def _parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InvalidSpec("complex amplitudes are [re, im] pairs")
        return complex(value[0], value[1])
    return complex(value)


def run_test(circuit: Circuit, slices: list[Slice], case: TestCase) -> TestReport:
    """Execute one case; mismatches become status=fail, execution problems
    become status=error. Deterministic given the case (sampling is seeded)."""
    try:
        return _run_test_inner(circuit, slices, case)
    except QcdbError as e:
        return TestReport(case.name, "error", message=f"{e.code}: {e.message}")


def _run_test_inner(circuit: Circuit, slices: list[Slice], case: TestCase) -> TestReport:
    sl = _resolve_slice(circuit, slices, case.slice_ref)
    kind = case.expectation_kind
    exp = case.expectation

    if kind == "diffusion_identity":
        tol = float(exp["diffusion_identity"].get("tolerance", 1e-6)
                    if isinstance(exp["diffusion_identity"], dict) else 1e-6)
        report = diffusion_check(sl, tolerance=tol)
        return TestReport(
            case.name,
            "pass" if report.passed else "fail",
            observed=report,
            deviation=report.deviation,
            message=report.message,
        )

    if case.init is None:
        raise InvalidSpec(f"case {case.name!r} needs an initial state")
    init = make_state(case.init)
    sl = fit_slice_to_init(sl, init)

    if case.run_mode == "statevector":
        state = run_statevector(sl.circuit, init)
        if kind == "exact_amplitudes":
            tol = float(exp.get("tolerance", 1e-9))
            expected = np.zeros(1 << state.n, dtype=np.complex128)
            for bits, value in exp["exact_amplitudes"].items():
                clean = bits.replace(" ", "")
                if len(clean) != state.n:
                    raise QubitCountMismatch(
                        f"amplitude key {bits!r} does not cover {state.n} qubits"
                    )
                expected[int(clean, 2)] = _parse_complex(value)
            deviation = float(np.max(np.abs(state.amplitudes - expected)))
            status = "pass" if deviation <= tol else "fail"
            return TestReport(case.name, status, observed=state, deviation=deviation)
        if kind == "distribution":
            tol = float(exp.get("tvd_tolerance", 0.02))
            observed = {
                bitstring(i, state.n): float(p)
                for i, p in enumerate(state.probabilities())
                if p > 0
            }
            deviation = tvd(observed, {k: float(v) for k, v in exp["distribution"].items()})
            status = "pass" if deviation <= tol else "fail"
            return TestReport(case.name, status, observed=state, deviation=deviation)
        raise InvalidSpec(f"{kind} expectations require sampling mode")

    if case.run_mode != "sampling":
        raise InvalidSpec(f"unknown run mode {case.run_mode!r}")
    target = sl.circuit if sl.circuit.has_measurement else auto_measured(sl.circuit)
    counts = sample(target, init, case.shots, case.seed)
    if kind == "distribution":
        tol = float(exp.get("tvd_tolerance", 0.02))
        empirical = {k: v / counts.shots for k, v in counts.counts.items()}
        deviation = tvd(empirical, {k: float(v) for k, v in exp["distribution"].items()})
        status = "pass" if deviation <= tol else "fail"
        return TestReport(case.name, status, observed=counts, deviation=deviation)
    if kind in ("pattern_present", "pattern_absent"):
        pattern = OutcomePattern(exp[kind])
        kept = filter_counts(counts, pattern)
        matched = sorted(kept.counts)
        present = kept.shots > 0
        ok = present if kind == "pattern_present" else not present
        return TestReport(
            case.name,
            "pass" if ok else "fail",
            observed=counts,
            matched_outcomes=matched,
            message=f"{kept.shots}/{counts.shots} shots matched {pattern.pattern!r}",
        )
    raise InvalidSpec(f"{kind} expectations require statevector mode")


# -- suites ------------------------------------------------------------------


@dataclass
class SuiteResult:
    circuit_path: str
    reports: list[TestReport]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)


def load_suite(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    if "circuit" not in doc or "cases" not in doc:
        raise InvalidSpec("suite needs 'circuit' and 'cases' fields")
    return doc


def run_suite(path: str, circuit_override: str | None = None) -> SuiteResult:
    from .qasm import parse_file
    from .slicer import vslice

    doc = load_suite(path)
    circuit_path = circuit_override or os.path.join(os.path.dirname(path), doc["circuit"])
    circuit = parse_file(circuit_path).unwrap()
    default_mode = doc.get("mode", "standalone")
    sliced = {default_mode: vslice(circuit, default_mode)}
    cases = [TestCase.from_json(c) for c in doc["cases"]]
    reports = []
    for case in cases:
        mode = case.mode or default_mode
        if mode not in sliced:
            sliced[mode] = vslice(circuit, mode)
        reports.append(run_test(circuit, sliced[mode], case))
    reports.sort(key=lambda r: r.name)
    return SuiteResult(circuit_path, reports)


def render_suite_result(result: SuiteResult) -> str:
    lines = [f"suite on {result.circuit_path}"]
    for r in result.reports:
        extra = f" (deviation {r.deviation:.3e})" if r.deviation is not None else ""
        if r.message and r.status == "error":
            extra = f" ({r.message})"
        lines.append(f"  [{r.status.upper():5}] {r.name}{extra}")
    verdict = "ALL PASSED" if result.all_passed else "FAILURES"
    lines.append(verdict)
    return "\n".join(lines)


def suite_result_json(result: SuiteResult) -> dict:
    return {
        "circuit": result.circuit_path,
        "all_passed": result.all_passed,
        "reports": [
            {
                "name": r.name,
                "status": r.status,
                "deviation": r.deviation,
                "matched_outcomes": r.matched_outcomes,
                "message": r.message,
            }
            for r in result.reports
        ],
    }
