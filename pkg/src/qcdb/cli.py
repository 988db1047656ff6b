"""Command-line entry point.

One-shot subcommands drive the same shell commands as the REPL, so their
output is identical to an interactive session, which keeps golden-file
regression runs honest. Exit codes: 0 success, 1 test or assertion failure,
2 usage error (including circuits that fail to parse).

QCDB_QUBIT_CAP overrides the simulator qubit cap; QCDB_NUMBA=0 forces the
pure-numpy kernels.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import QcdbError
from .service import DEFAULT_PORT
from .session import Session
from .shell import execute_command, repl


def _run_script(commands: list[str]) -> int:
    """Feed commands to a fresh session, print the last command's output."""
    session = Session()
    for command in commands[:-1]:
        result = execute_command(session, command)
        if not result.ok:
            print(result.output, file=sys.stderr)
            return 2
    result = execute_command(session, commands[-1])
    print(result.output)
    return 0 if result.ok else 2


def _cmd_repl(args) -> int:
    session = Session()
    if args.circuit:
        result = execute_command(session, f"load {args.circuit}")
        print(result.output)
        if not result.ok:
            return 2
    return repl(session)


def _setup_commands(args) -> list[str]:
    commands = [f"load {args.circuit}"]
    for pos in getattr(args, "break_add", None) or []:
        commands.append(f"break add {pos}")
    commands.append(f"slice --mode {args.mode}")
    return commands


def _cmd_slice(args) -> int:
    return _run_script(
        _setup_commands(args) + ([f"export {args.export}"] if args.export else [])
    )


def _cmd_run(args) -> int:
    commands = _setup_commands(args)
    if args.hslice:
        commands.append(f"hslice {args.slice}")
    run_cmd = f"run {args.slice}"
    if args.init:
        run_cmd += f" --init '{args.init}'"
    if args.shots is not None:
        run_cmd += f" --shots {args.shots}"
    if args.seed is not None:
        run_cmd += f" --seed {args.seed}"
    return _run_script(commands + [run_cmd])


def _cmd_where(args) -> int:
    where = f"where {args.gate}"
    if args.slice is not None:
        where += f" {args.slice}"
    return _run_script(_setup_commands(args) + [where])


def _cmd_state(args) -> int:
    return _run_script(_setup_commands(args) + [f"state {args.slice}"])


def _cmd_cat(args) -> int:
    return _run_script(_setup_commands(args) + [f"cat {args.slice}"])


def _cmd_test(args) -> int:
    from .testkit import render_suite_result, run_suite, suite_result_json

    try:
        result = run_suite(args.suite, circuit_override=args.circuit)
    except (QcdbError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(suite_result_json(result), indent=2))
    else:
        print(render_suite_result(result))
    return 0 if result.all_passed else 1


def _cmd_serve(args) -> int:
    from .service import serve

    host = "0.0.0.0" if args.open else args.host
    print(f"qcdb debug service on http://{host}:{args.port}")
    serve(host=host, port=args.port, ui_dir=args.ui)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcdb",
        description="quantum circuit debugger: slice, simulate, test, trace",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repl", help="interactive debugger shell")
    p.add_argument("--circuit", help="QASM file to load on startup")
    p.set_defaults(func=_cmd_repl)

    def common(p):
        p.add_argument("--circuit", required=True)
        p.add_argument("--mode", default="standalone",
                       choices=["standalone", "accumulated"])
        p.add_argument("--break-add", type=int, action="append", metavar="POS",
                       help="insert a breakbarrier after loading (repeatable)")

    p = sub.add_parser("slice", help="slice a circuit at its breakbarriers")
    common(p)
    p.add_argument("--export", help="directory to write slice QASM files")
    p.set_defaults(func=_cmd_slice)

    p = sub.add_parser("run", help="simulate a slice or the full circuit")
    common(p)
    p.add_argument("--slice", default="full", help="slice index or 'full'")
    p.add_argument("--init", help="initial state: uniform|ghz|w|zero|basis:BITS|dicke:K|JSON")
    p.add_argument("--shots", type=int, help="sample instead of dumping amplitudes")
    p.add_argument("--seed", type=int, help="sampling seed")
    p.add_argument("--hslice", action="store_true", help="drop unused qubits first")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("where", help="provenance report for a gate kind")
    common(p)
    p.add_argument("--gate", required=True)
    p.add_argument("--slice", help="restrict to one slice")
    p.set_defaults(func=_cmd_where)

    p = sub.add_parser("state", help="statevector after slices 0..k from |0...0>")
    common(p)
    p.add_argument("--slice", required=True, type=int, help="last slice to include")
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("cat", help="categorize one slice")
    common(p)
    p.add_argument("--slice", required=True, type=int)
    p.set_defaults(func=_cmd_cat)

    p = sub.add_parser("test", help="run a JSON test suite; exit 1 on failures")
    p.add_argument("--suite", required=True)
    p.add_argument("--circuit", help="override the suite's circuit path")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("serve", help="start the local debug service (and UI)")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--open", action="store_true", help="bind all interfaces")
    p.add_argument("--ui", help="static UI directory (default: bundled frontend)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
