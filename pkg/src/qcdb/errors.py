"""Exception types shared across the package.

Every error carries a stable ``code`` string; the HTTP service echoes these
codes verbatim so clients can match on them.
"""


class QcdbError(Exception):
    code = "QcdbError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class DebugModeOff(QcdbError):
    code = "DebugModeOff"


class PositionOutOfRange(QcdbError):
    code = "PositionOutOfRange"


class UnknownGateKind(QcdbError):
    code = "UnknownGateKind"


class InvalidInstruction(QcdbError):
    code = "InvalidInstruction"


class MeasurementPresent(QcdbError):
    code = "MeasurementPresent"


class MidCircuitMeasurement(QcdbError):
    code = "MidCircuitMeasurement"


class NoMeasurements(QcdbError):
    code = "NoMeasurements"


class QubitCountMismatch(QcdbError):
    code = "QubitCountMismatch"


class CapExceeded(QcdbError):
    code = "CapExceeded"


class InvalidSpec(QcdbError):
    code = "InvalidSpec"


class InvalidCounts(QcdbError):
    code = "InvalidCounts"


class SliceNotFound(QcdbError):
    code = "SliceNotFound"


class PatternLengthMismatch(QcdbError):
    code = "PatternLengthMismatch"


class DomainMismatch(QcdbError):
    code = "DomainMismatch"


class QasmError(QcdbError):
    """Raised when a QASM source fails to parse; carries the diagnostics."""

    code = "QasmError"

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "\n".join(str(d) for d in self.diagnostics)
        super().__init__(f"QASM parse failed:\n{lines}")
