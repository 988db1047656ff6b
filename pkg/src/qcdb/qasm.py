"""OpenQASM 2.0 subset parser and emitter.

Supported statements: the version header, qreg/creg declarations, the gate set
of `circuit.GATE_SPECS`, measure and barrier. `gate` definitions, `if`,
`reset`, `opaque` and `include` are rejected with diagnostics.

Two directive comments extend the wire format while keeping files valid QASM
for third-party tools:

- ``//@break`` immediately before a full-width ``barrier`` statement turns
  that barrier into a breakbarrier marker
- ``//@ext mcx`` precedes emitted ``mcx`` statements as an interoperability
  warning; the parser accepts ``mcx`` with or without it

Gate statements record their source location, so parsed circuits carry usable
provenance for gate tracking.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import pi

from .circuit import Circuit, GATE_SPECS, GateInstruction, GateProvenance
from .errors import InvalidInstruction, QasmError, UnknownGateKind


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int = 1


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" | "warning"
    span: SourceSpan
    message: str

    def __str__(self):
        return f"{self.span.file}:{self.span.line}:{self.span.column}: {self.severity}: {self.message}"


@dataclass
class ParseResult:
    circuit: Circuit | None
    diagnostics: list[ParseDiagnostic]

    @property
    def ok(self) -> bool:
        return self.circuit is not None

    @property
    def errors(self) -> list[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]

    @property
    def warnings(self) -> list[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.severity == "warning"]

    def unwrap(self) -> Circuit:
        if self.circuit is None:
            raise QasmError(self.diagnostics)
        return self.circuit


_REJECTED = {
    "include": "include is not supported; inline the program instead",
    "gate": "gate definitions are not supported",
    "opaque": "opaque declarations are not supported",
    "if": "classical control flow (if) is not supported",
    "reset": "reset is not supported",
}

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_REG_DECL = re.compile(rf"^(qreg|creg)\s+({_IDENT})\s*\[\s*(\d+)\s*\]$")
_ARG = re.compile(rf"^({_IDENT})(?:\s*\[\s*(\d+)\s*\])?$")
_MEASURE = re.compile(r"^measure\s+(.+?)\s*->\s*(.+)$")
_GATE_STMT = re.compile(rf"^({_IDENT})\s*(\((.*)\))?\s*(.*)$", re.DOTALL)


@dataclass
class _Statement:
    text: str
    line: int
    column: int


def _scan(source: str):
    """Split into statements and break directives, tracking source positions.

    Yields ("stmt", _Statement) and ("break", SourceSpan) items in order.
    """
    line, col = 1, 1
    i, n = 0, len(source)
    buf: list[str] = []
    start: tuple[int, int] | None = None
    brace_depth = 0
    items = []

    def flush():
        nonlocal buf, start
        text = "".join(buf).strip()
        if text:
            items.append(("stmt", _Statement(text, start[0], start[1])))
        buf, start = [], None

    while i < n:
        ch = source[i]
        if ch == "\n":
            if buf:
                buf.append(" ")
            line += 1
            col = 1
            i += 1
            continue
        if ch == "/" and i + 1 < n and source[i + 1] == "/":
            j = source.find("\n", i)
            comment = source[i:j if j != -1 else n]
            directive = comment[2:].strip()
            if directive == "@break":
                items.append(("break", SourceSpan("", line, col, len(comment))))
            i = j if j != -1 else n
            col = 1
            continue
        if ch == ";" and brace_depth == 0:
            flush()
            i += 1
            col += 1
            continue
        if ch == "{":
            brace_depth += 1
        elif ch == "}":
            brace_depth = max(0, brace_depth - 1)
            buf.append(ch)
            i += 1
            col += 1
            first = "".join(buf).lstrip().split(" ", 1)[0] if buf else ""
            if brace_depth == 0 and first in ("gate", "opaque"):
                flush()
            continue
        if not ch.isspace() or buf:
            if start is None and not ch.isspace():
                start = (line, col)
            buf.append(ch)
        i += 1
        col += 1
    if "".join(buf).strip():
        items.append(("error_unterminated", SourceSpan("", start[0], start[1], 1)))
    return items


class _ExprError(ValueError):
    pass


_NUM = re.compile(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?")


def _eval_param(text: str) -> float:
    """Evaluate a QASM parameter expression: numbers, pi, + - * / ^, parens."""
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(ch)
            i += 1
            continue
        m = _NUM.match(text, i)
        if m:
            tokens.append(m.group(0))
            i = m.end()
            continue
        if text.startswith("pi", i):
            tokens.append("pi")
            i += 2
            continue
        raise _ExprError(f"bad character {ch!r} in parameter expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        v = term()
        while peek() in ("+", "-"):
            if take() == "+":
                v += term()
            else:
                v -= term()
        return v

    def term():
        v = factor()
        while peek() in ("*", "/"):
            if take() == "*":
                v *= factor()
            else:
                v /= factor()
        return v

    def factor():
        if peek() == "-":
            take()
            return -factor()
        if peek() == "+":
            take()
            return factor()
        return power()

    def power():
        v = atom()
        if peek() == "^":
            take()
            return v ** factor()
        return v

    def atom():
        tok = peek()
        if tok is None:
            raise _ExprError("unexpected end of parameter expression")
        if tok == "(":
            take()
            v = expr()
            if peek() != ")":
                raise _ExprError("missing closing parenthesis")
            take()
            return v
        if tok == "pi":
            take()
            return pi
        if _NUM.fullmatch(tok):
            take()
            return float(tok)
        raise _ExprError(f"unexpected token {tok!r}")

    value = expr()
    if pos != len(tokens):
        raise _ExprError(f"trailing tokens in parameter expression: {tokens[pos:]}")
    return value


def parse(source: str, file: str = "<string>") -> ParseResult:
    """Parse QASM text; returns the circuit or error diagnostics."""
    diags: list[ParseDiagnostic] = []
    circuit = Circuit()
    saw_header = False
    pending_break: SourceSpan | None = None
    break_candidates: list[int] = []  # instruction indices of breakbarrier barriers

    def err(stmt_or_span, message):
        span = _span_of(stmt_or_span)
        diags.append(ParseDiagnostic("error", span, message))

    def warn(stmt_or_span, message):
        span = _span_of(stmt_or_span)
        diags.append(ParseDiagnostic("warning", span, message))

    def _span_of(s) -> SourceSpan:
        if isinstance(s, SourceSpan):
            return SourceSpan(file, s.line, s.column, s.length)
        return SourceSpan(file, s.line, s.column, max(1, len(s.text)))

    for kind, item in _scan(source):
        if kind == "break":
            if pending_break is not None:
                warn(pending_break, "break directive not followed by a barrier statement")
            pending_break = item
            continue
        if kind == "error_unterminated":
            err(item, "unterminated statement (missing ';')")
            continue
        stmt: _Statement = item
        first = stmt.text.split(None, 1)[0].split("(")[0]
        if first == "OPENQASM":
            rest = stmt.text[len("OPENQASM"):].strip()
            if saw_header:
                err(stmt, "duplicate OPENQASM header")
            elif rest != "2.0":
                err(stmt, f"unsupported OPENQASM version {rest!r}; expected 2.0")
            else:
                saw_header = True
            continue
        if not saw_header:
            err(stmt, "missing 'OPENQASM 2.0;' header before first statement")
            saw_header = True  # report once
        if first in _REJECTED:
            if pending_break is not None:
                warn(pending_break, "break directive not followed by a barrier statement")
                pending_break = None
            err(stmt, _REJECTED[first])
            continue

        consumed_break = pending_break is not None and first == "barrier"
        if pending_break is not None and first != "barrier":
            warn(pending_break, "break directive not followed by a barrier statement")
        pending_break = None

        before = len(circuit.instructions)
        try:
            _parse_statement(circuit, stmt, file)
        except (InvalidInstruction, UnknownGateKind, _ExprError) as e:
            err(stmt, str(e))
            continue
        if consumed_break:
            break_candidates.append(before)

    if pending_break is not None:
        warn(pending_break, "break directive not followed by a barrier statement")
    if not saw_header and not diags:
        diags.append(ParseDiagnostic("error", SourceSpan(file, 1, 1, 1),
                                     "missing 'OPENQASM 2.0;' header"))

    # Promote directive-marked barriers that span every qubit.
    all_refs = circuit.all_qubit_refs()
    for idx in break_candidates:
        ins = circuit.instructions[idx]
        if set(ins.qubits) == set(all_refs):
            circuit.instructions[idx] = GateInstruction(
                "breakbarrier", tuple(all_refs), (), (), ins.provenance
            )
        else:
            diags.append(ParseDiagnostic(
                "warning",
                SourceSpan(file, ins.provenance.line, ins.provenance.column, 1),
                "break directive on a barrier that does not span all qubits; kept as plain barrier",
            ))

    if any(d.severity == "error" for d in diags):
        return ParseResult(None, diags)
    return ParseResult(circuit, diags)


def _parse_statement(circuit: Circuit, stmt: _Statement, file: str) -> None:
    text = stmt.text
    prov = GateProvenance(file, stmt.line, stmt.column, "")

    m = _REG_DECL.match(text)
    if m:
        which, name, size = m.group(1), m.group(2), int(m.group(3))
        if which == "qreg":
            circuit.add_qreg(name, size)
        else:
            circuit.add_creg(name, size)
        return

    m = _MEASURE.match(text)
    if m:
        qarg = _parse_arg(m.group(1))
        carg = _parse_arg(m.group(2))
        circuit.append("measure", [qarg], clbits=[carg], prov=prov)
        return

    m = _GATE_STMT.match(text)
    if not m:
        raise InvalidInstruction(f"cannot parse statement: {text!r}")
    name, has_params, params_text, args_text = m.group(1), m.group(2), m.group(3), m.group(4)
    if name not in GATE_SPECS or name in ("measure", "breakbarrier"):
        raise UnknownGateKind(f"unknown gate {name!r}")
    params = []
    if has_params:
        for piece in _split_args(params_text):
            params.append(_eval_param(piece))
    args = [_parse_arg(a) for a in _split_args(args_text)]
    if not args:
        raise InvalidInstruction(f"{name} statement has no operands")
    circuit.append(name, args, params=params, prov=prov)


def _split_args(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def _parse_arg(text: str):
    m = _ARG.match(text.strip())
    if not m:
        raise InvalidInstruction(f"cannot parse operand {text.strip()!r}")
    name, idx = m.group(1), m.group(2)
    if idx is None:
        return name  # register-wide; Circuit.append broadcasts
    return (name, int(idx))


# -- emission ----------------------------------------------------------------


def _fmt_param(v: float) -> str:
    return repr(float(v))


def _fmt_ref(ref) -> str:
    return f"{ref[0]}[{ref[1]}]"


def emit(circuit: Circuit, comments: list[str] | None = None) -> str:
    """Canonical QASM text; `parse(emit(c))` matches c instruction for instruction.

    Consecutive instructions that came from one register-wide statement (same
    kind, params and provenance site, covering a whole register in order) are
    re-grouped into a single register-wide statement so site structure survives
    a round trip.
    """
    lines = ["OPENQASM 2.0;"]
    for c in comments or []:
        lines.append(f"// {c}")
    for reg in circuit.qregs:
        lines.append(f"qreg {reg.name}[{reg.size}];")
    for reg in circuit.cregs:
        lines.append(f"creg {reg.name}[{reg.size}];")

    ins = circuit.instructions
    i = 0
    while i < len(ins):
        g = ins[i]
        if g.kind == "breakbarrier":
            lines.append("//@break")
            lines.append(f"barrier {', '.join(r.name for r in circuit.qregs)};")
            i += 1
            continue
        if g.kind == "barrier":
            regs_covered = _covering_registers(circuit, g.qubits)
            if regs_covered is not None:
                lines.append(f"barrier {', '.join(regs_covered)};")
            else:
                lines.append(f"barrier {', '.join(_fmt_ref(q) for q in g.qubits)};")
            i += 1
            continue
        run = _register_wide_run(circuit, ins, i)
        if run is not None:
            text, consumed = run
            lines.append(text)
            i += consumed
            continue
        lines.append(_emit_single(g))
        i += 1
    return "\n".join(lines) + "\n"


def _emit_single(g: GateInstruction) -> str:
    params = f"({', '.join(_fmt_param(p) for p in g.params)})" if g.params else ""
    if g.kind == "measure":
        return f"measure {_fmt_ref(g.qubits[0])} -> {_fmt_ref(g.clbits[0])};"
    args = ", ".join(_fmt_ref(q) for q in g.qubits)
    if g.kind == "mcx":
        return f"//@ext mcx\nmcx {args};"
    return f"{g.kind}{params} {args};"


def _covering_registers(circuit: Circuit, qubits) -> list[str] | None:
    """If the refs are exactly whole registers in declaration order, name them."""
    want = list(qubits)
    names: list[str] = []
    pos = 0
    while pos < len(want):
        name = want[pos][0]
        reg = next((r for r in circuit.qregs if r.name == name), None)
        if reg is None or want[pos:pos + reg.size] != list(reg):
            return None
        names.append(name)
        pos += reg.size
    return names


def _register_wide_run(circuit: Circuit, ins, i) -> tuple[str, int] | None:
    g = ins[i]
    arity, _ = GATE_SPECS.get(g.kind, (None, 0))
    if g.kind == "measure":
        qreg = next((r for r in circuit.qregs if r.name == g.qubits[0][0]), None)
        creg = next((r for r in circuit.cregs if r.name == g.clbits[0][0]), None)
        if qreg is None or creg is None or qreg.size != creg.size or qreg.size < 2:
            return None
        size = qreg.size
        if i + size > len(ins):
            return None
        for j in range(size):
            step = ins[i + j]
            if (step.kind != "measure" or step.provenance != g.provenance
                    or step.qubits != ((qreg.name, j),)
                    or step.clbits != ((creg.name, j),)):
                return None
        return f"measure {qreg.name} -> {creg.name};", size
    if arity != 1:
        return None
    reg = next((r for r in circuit.qregs if r.name == g.qubits[0][0]), None)
    if reg is None or reg.size < 2 or i + reg.size > len(ins):
        return None
    for j in range(reg.size):
        step = ins[i + j]
        if (step.kind != g.kind or step.params != g.params
                or step.provenance != g.provenance
                or step.qubits != ((reg.name, j),)):
            return None
    params = f"({', '.join(_fmt_param(p) for p in g.params)})" if g.params else ""
    return f"{g.kind}{params} {reg.name};", reg.size


def parse_file(path: str) -> ParseResult:
    with open(path, encoding="utf-8") as f:
        return parse(f.read(), file=str(path))
