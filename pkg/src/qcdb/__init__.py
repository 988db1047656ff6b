"""qcdb: slice, simulate, test and trace quantum circuits while debugging them."""

from .circuit import (
    Circuit,
    GateInstruction,
    GateProvenance,
    erase_breakbarriers,
    gate_info,
    gate_loc,
    insert_breakbarrier,
    remove_breakbarrier,
    start_debug,
)
from .qasm import ParseDiagnostic, ParseResult, SourceSpan, emit, parse, parse_file
from .sim import (
    CountsMap,
    StateVector,
    dump_statevector,
    render_counts,
    run_statevector,
    sample,
    unitary_of,
)
from .slicer import Slice, SliceCategory, categorize, hslice, vslice, whole_circuit_slice
from .states import StateSpec, make_state
from .testkit import (
    IterationEstimate,
    OutcomePattern,
    TestCase,
    TestReport,
    diffusion_check,
    filter_counts,
    opt_iterations,
    run_suite,
    run_test,
    tvd,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CountsMap",
    "GateInstruction",
    "GateProvenance",
    "IterationEstimate",
    "OutcomePattern",
    "ParseDiagnostic",
    "ParseResult",
    "Slice",
    "SliceCategory",
    "SourceSpan",
    "StateSpec",
    "StateVector",
    "TestCase",
    "TestReport",
    "categorize",
    "diffusion_check",
    "dump_statevector",
    "emit",
    "erase_breakbarriers",
    "filter_counts",
    "gate_info",
    "gate_loc",
    "hslice",
    "insert_breakbarrier",
    "make_state",
    "opt_iterations",
    "parse",
    "parse_file",
    "remove_breakbarrier",
    "render_counts",
    "run_statevector",
    "run_suite",
    "run_test",
    "sample",
    "start_debug",
    "tvd",
    "unitary_of",
    "vslice",
    "whole_circuit_slice",
]
