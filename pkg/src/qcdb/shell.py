"""Interactive debugger shell.

Every command is also expressible as a one-shot CLI invocation (see cli.py),
which drives the same `execute_command` so outputs match exactly. Rendering
is deterministic: amplitude dumps sort by basis index and suppress magnitudes
below 1e-12; counts sort descending by count, ties lexicographically.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass

from .errors import QcdbError
from .sim import CountsMap, StateVector, dump_statevector, render_counts
from .session import Session

HELP = """\
commands:
  load <file>                      load a QASM circuit (debug mode on)
  break add <pos>                  insert a breakbarrier at instruction index
  break rm <k>                     remove the k-th breakbarrier
  break list                       list breakbarriers and the circuit
  slice [--mode standalone|accumulated]   (re)slice at breakbarriers
  hslice <k>                       drop unused qubits from slice k
  run <k|full> [--init SPEC] [--shots S --seed R]   simulate or sample
  state <k>                        statevector after slices 0..k from |0...0>
  cat <k>                          categorize slice k
  where <gate> [<slice>]           provenance report for a gate kind
  export <dir>                     write every slice as QASM
  help                             this message
  quit                             leave the shell
SPEC: uniform | ghz | w | zero | basis:BITS | dicke:K | {"kind":...} JSON"""


@dataclass
class ShellResult:
    output: str
    ok: bool = True
    quit: bool = False


def render_result(result) -> str:
    if isinstance(result, StateVector):
        return dump_statevector(result)
    if isinstance(result, CountsMap):
        return f"shots: {result.shots}\n{render_counts(result)}"
    return str(result)


def render_slices(session: Session) -> str:
    summaries = session.slice_summaries()
    lines = [f"{len(summaries)} slices (mode {session.mode})"]
    for s in summaries:
        lines.append(
            f"  slice {s['index']}: {s['n_gates']} gates, "
            f"{s['used_qubits']}/{s['n_qubits']} qubits used, "
            f"{s['behaviour']}/{s['complexity']}"
            + (" [measures]" if s["has_measurement"] else "")
        )
        for w in s["warnings"]:
            lines.append(f"    warning: {w}")
    return "\n".join(lines)


def render_listing(session: Session) -> str:
    c = session.require_circuit()
    positions = set(c.breakbarrier_positions())
    lines = [f"breakbarriers at {sorted(positions)}" if positions else "no breakbarriers"]
    marker = 0
    for i, ins in enumerate(c.instructions):
        if ins.kind == "breakbarrier":
            lines.append(f"  {i:4d}: ---- breakbarrier #{marker} ----")
            marker += 1
            continue
        args = ", ".join(f"{r}[{q}]" for r, q in ins.qubits)
        params = (
            "(" + ", ".join(f"{p:.6g}" for p in ins.params) + ")" if ins.params else ""
        )
        target = " -> " + ", ".join(f"{r}[{q}]" for r, q in ins.clbits) if ins.clbits else ""
        lines.append(f"  {i:4d}: {ins.kind}{params} {args}{target}")
    return "\n".join(lines)


def _parse_flags(args: list[str]) -> tuple[list[str], dict]:
    """Split positional arguments from --flag value pairs."""
    positional, flags = [], {}
    i = 0
    while i < len(args):
        if args[i].startswith("--"):
            if i + 1 >= len(args):
                raise QcdbError(f"flag {args[i]} needs a value")
            flags[args[i][2:]] = args[i + 1]
            i += 2
        else:
            positional.append(args[i])
            i += 1
    return positional, flags


def _protect_json(line: str) -> tuple[str, list[str]]:
    """Replace {...} blobs with placeholders so shlex leaves them intact."""
    blobs: list[str] = []
    out: list[str] = []
    i = 0
    while i < len(line):
        if line[i] == "{":
            depth, j = 0, i
            while j < len(line):
                if line[j] == "{":
                    depth += 1
                elif line[j] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth == 0:
                out.append(f"\x00{len(blobs)}\x00")
                blobs.append(line[i:j + 1])
                i = j + 1
                continue
        out.append(line[i])
        i += 1
    return "".join(out), blobs


def execute_command(session: Session, line: str) -> ShellResult:
    """Run one shell command against the session; never raises."""
    protected, blobs = _protect_json(line)
    try:
        tokens = shlex.split(protected)
    except ValueError as e:
        return ShellResult(f"error: {e}", ok=False)
    for k, blob in enumerate(blobs):
        tokens = [t.replace(f"\x00{k}\x00", blob) for t in tokens]
    if not tokens:
        return ShellResult("")
    cmd, args = tokens[0], tokens[1:]
    try:
        return _dispatch(session, cmd, args)
    except QcdbError as e:
        return ShellResult(f"error [{e.code}]: {e.message}", ok=False)
    except (OSError, ValueError) as e:
        return ShellResult(f"error: {e}", ok=False)


def _dispatch(session: Session, cmd: str, args: list[str]) -> ShellResult:
    if cmd in ("quit", "exit"):
        return ShellResult("bye", quit=True)
    if cmd == "help":
        return ShellResult(HELP)

    if cmd == "load":
        if len(args) != 1:
            return ShellResult("usage: load <file>", ok=False)
        session.load_file(args[0])
        s = session.circuit_summary()
        out = (
            f"loaded {s['name']}: {s['n_qubits']} qubits, "
            f"{s['n_instructions']} instructions, "
            f"{len(s['breakbarriers'])} breakbarriers"
        )
        for w in session.load_warnings:
            out += f"\nwarning: {w}"
        return ShellResult(out)

    if cmd == "break":
        if not args:
            return ShellResult("usage: break add <pos> | break rm <k> | break list", ok=False)
        sub = args[0]
        if sub == "list":
            return ShellResult(render_listing(session))
        if sub == "add" and len(args) == 2:
            session.add_breakbarrier(int(args[1]))
            return ShellResult(render_listing(session))
        if sub == "rm" and len(args) == 2:
            session.remove_breakbarrier(int(args[1]))
            return ShellResult(render_listing(session))
        return ShellResult("usage: break add <pos> | break rm <k> | break list", ok=False)

    if cmd == "slice":
        _, flags = _parse_flags(args)
        session.set_mode(flags.get("mode", session.mode))
        return ShellResult(render_slices(session))

    if cmd == "hslice":
        if len(args) != 1:
            return ShellResult("usage: hslice <k>", ok=False)
        sl = session.hslice_slice(int(args[0]))
        removed = ", ".join(f"{r}[{i}]" for r, i in sl.removed_qubits) or "none"
        return ShellResult(
            f"slice {sl.index}: {sl.circuit.n_qubits} qubits kept, removed: {removed}"
        )

    if cmd == "run":
        positional, flags = _parse_flags(args)
        if len(positional) != 1:
            return ShellResult("usage: run <k|full> [--init SPEC] [--shots S --seed R]", ok=False)
        ref = positional[0]
        sampling = "shots" in flags or "seed" in flags
        result = session.run(
            ref,
            init=flags.get("init"),
            sampling=sampling,
            shots=int(flags["shots"]) if "shots" in flags else None,
            seed=int(flags["seed"]) if "seed" in flags else None,
        )
        return ShellResult(render_result(result))

    if cmd == "state":
        if len(args) != 1:
            return ShellResult("usage: state <k>", ok=False)
        return ShellResult(render_result(session.state_after(int(args[0]))))

    if cmd == "cat":
        if len(args) != 1:
            return ShellResult("usage: cat <k>", ok=False)
        k = int(args[0])
        cat = session.categorize_slice(k)
        ev = cat.evidence
        return ShellResult(
            f"slice {k}: {cat.behaviour}, {cat.complexity} "
            f"(permutation={ev.permutation}, diagonal_phase={ev.diagonal_phase}, "
            f"amplitude_mixing={ev.amplitude_mixing})"
        )

    if cmd == "where":
        if len(args) not in (1, 2):
            return ShellResult("usage: where <gate> [<slice>]", ok=False)
        slice_ref = args[1] if len(args) == 2 else None
        return ShellResult(session.gate_report(args[0], slice_ref))

    if cmd == "export":
        if len(args) != 1:
            return ShellResult("usage: export <dir>", ok=False)
        written = session.export(args[0])
        return ShellResult("\n".join(f"wrote {p}" for p in written))

    return ShellResult(f"unknown command {cmd!r}; try 'help'", ok=False)


def repl(session: Session | None = None) -> int:
    session = session or Session()
    print("qcdb debugger shell. 'help' lists commands.")
    while True:
        try:
            line = input("qcdb> ")
        except EOFError:
            print()
            return 0
        except KeyboardInterrupt:
            print()
            continue
        result = execute_command(session, line)
        if result.output:
            print(result.output)
        if result.quit:
            return 0
