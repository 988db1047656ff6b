"""Local HTTP/JSON facade over debugging sessions, for the browser UI.

Sessions are in-memory with an idle TTL (default one hour) and are never
persisted. Operations on one session are serialized behind a lock; different
sessions run fully in parallel. Error mapping: 400 for malformed request
bodies, 404 for unknown sessions/slices, 422 for domain errors with a
machine-readable ``error`` code mirroring the package exception names.

Endpoint schemas are documented in docs/api.md.
"""
from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .circuit import gate_info, GATE_SPECS
from .errors import QasmError, QcdbError, SliceNotFound
from .session import Session
from .sim import CountsMap, StateVector, DUMP_EPS, bitstring
from .slicer import MODES

DEFAULT_PORT = 7317
DEFAULT_TTL_SECONDS = 3600.0


class CreateSessionBody(BaseModel):
    qasm: str
    name: str = "<input>"


class BreakbarrierBody(BaseModel):
    position: int


class SlicesBody(BaseModel):
    mode: str = "standalone"


class HsliceBody(BaseModel):
    slice: int


class RunBody(BaseModel):
    slice: int | str = "full"
    init: dict | str | None = None
    run_mode: str = "statevector"
    shots: int = 1024
    seed: int = 0


@dataclass
class ApiSession:
    id: str
    session: Session
    created: float
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionRegistry:
    def __init__(self, ttl: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl
        self._sessions: dict[str, ApiSession] = {}
        self._lock = threading.Lock()

    def create(self, session: Session) -> ApiSession:
        sid = secrets.token_hex(8)
        now = time.monotonic()
        api = ApiSession(sid, session, now, now)
        with self._lock:
            self._purge(now)
            self._sessions[sid] = api
        return api

    def get(self, sid: str) -> ApiSession:
        now = time.monotonic()
        with self._lock:
            self._purge(now)
            api = self._sessions.get(sid)
            if api is None:
                raise KeyError(sid)
            api.last_access = now
            return api

    def drop(self, sid: str) -> None:
        with self._lock:
            self._sessions.pop(sid, None)

    def _purge(self, now: float) -> None:
        expired = [k for k, v in self._sessions.items() if now - v.last_access > self.ttl]
        for k in expired:
            del self._sessions[k]


def _statevector_json(sv: StateVector) -> dict:
    amplitudes = []
    for i, a in enumerate(sv.amplitudes):
        if abs(a) < DUMP_EPS:
            continue
        amplitudes.append({
            "bits": bitstring(i, sv.n),
            "re": float(a.real),
            "im": float(a.imag),
            "prob": float(abs(a) ** 2),
        })
    return {"kind": "statevector", "n": sv.n, "amplitudes": amplitudes}


def _counts_json(cm: CountsMap) -> dict:
    return {"kind": "counts", "shots": cm.shots, "counts": dict(cm.counts)}


def _circuit_json(session: Session) -> dict:
    c = session.require_circuit()
    instructions = []
    for i, ins in enumerate(c.instructions):
        instructions.append({
            "index": i,
            "kind": ins.kind,
            "params": list(ins.params),
            "qubits": [f"{r}[{q}]" for r, q in ins.qubits],
            "qubit_indices": [c.qubit_index(ref) for ref in ins.qubits],
            "clbits": [f"{r}[{q}]" for r, q in ins.clbits],
            "provenance": {
                "file": ins.provenance.file,
                "line": ins.provenance.line,
                "column": ins.provenance.column,
                "context": ins.provenance.context,
                "label": ins.provenance.describe(),
            },
        })
    return {**session.circuit_summary(), "instructions": instructions}


def create_app(ui_dir: str | None = None, ttl: float = DEFAULT_TTL_SECONDS) -> FastAPI:
    app = FastAPI(title="qcdb debug service", docs_url=None, redoc_url=None)
    registry = SessionRegistry(ttl=ttl)
    app.state.registry = registry

    @app.exception_handler(RequestValidationError)
    async def bad_schema(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "SchemaViolation", "message": str(exc.errors())},
        )

    @app.exception_handler(QcdbError)
    async def domain_error(request: Request, exc: QcdbError):
        status = 404 if isinstance(exc, SliceNotFound) else 422
        body = {"error": exc.code, "message": exc.message}
        if isinstance(exc, QasmError):
            body["diagnostics"] = [str(d) for d in exc.diagnostics]
        return JSONResponse(status_code=status, content=body)

    def require(sid: str) -> ApiSession:
        try:
            return registry.get(sid)
        except KeyError:
            raise _UnknownSession(sid) from None

    class _UnknownSession(Exception):
        def __init__(self, sid):
            self.sid = sid

    @app.exception_handler(_UnknownSession)
    async def unknown_session(request: Request, exc: _UnknownSession):
        return JSONResponse(
            status_code=404,
            content={"error": "UnknownSession", "message": f"no session {exc.sid!r}"},
        )

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        session = Session()
        session.load_text(body.qasm, name=body.name)
        api = registry.create(session)
        return {
            "id": api.id,
            "circuit": session.circuit_summary(),
            "warnings": session.load_warnings,
        }

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str):
        require(sid)
        registry.drop(sid)
        return {"deleted": sid}

    @app.get("/sessions/{sid}/circuit")
    def get_circuit(sid: str):
        api = require(sid)
        with api.lock:
            return _circuit_json(api.session)

    @app.post("/sessions/{sid}/breakbarriers")
    def add_breakbarrier(sid: str, body: BreakbarrierBody):
        api = require(sid)
        with api.lock:
            api.session.add_breakbarrier(body.position)
            return api.session.circuit_summary()

    @app.delete("/sessions/{sid}/breakbarriers/{k}")
    def rm_breakbarrier(sid: str, k: int):
        api = require(sid)
        with api.lock:
            api.session.remove_breakbarrier(k)
            return api.session.circuit_summary()

    @app.post("/sessions/{sid}/slices")
    def make_slices(sid: str, body: SlicesBody):
        api = require(sid)
        if body.mode not in MODES:
            raise QcdbError(f"mode must be one of {MODES}")
        with api.lock:
            api.session.set_mode(body.mode)
            return {"mode": body.mode, "slices": api.session.slice_summaries()}

    @app.post("/sessions/{sid}/hslice")
    def hslice_slice(sid: str, body: HsliceBody):
        api = require(sid)
        with api.lock:
            api.session.hslice_slice(body.slice)
            return {"mode": api.session.mode, "slices": api.session.slice_summaries()}

    @app.post("/sessions/{sid}/run")
    def run(sid: str, body: RunBody):
        api = require(sid)
        with api.lock:
            result = api.session.run(
                body.slice,
                init=body.init,
                sampling=body.run_mode == "sampling",
                shots=body.shots,
                seed=body.seed,
            )
        if isinstance(result, CountsMap):
            return _counts_json(result)
        return _statevector_json(result)

    @app.get("/sessions/{sid}/slices/{k}/qasm")
    def slice_qasm(sid: str, k: int):
        from .qasm import emit

        api = require(sid)
        with api.lock:
            sl = api.session.get_slice(k)
            comments = [
                f"slice {sl.index} of {api.session.name} (mode {sl.mode})",
                "qubit_map: " + ", ".join(
                    f"{r}[{i}]->{local}" for (r, i), local in sl.qubit_map.items()
                ),
            ]
            return {"index": sl.index, "mode": sl.mode,
                    "qasm": emit(sl.circuit, comments=comments)}

    @app.get("/sessions/{sid}/gates/{kind}")
    def gates(sid: str, kind: str):
        api = require(sid)
        with api.lock:
            report = api.session.gate_report(kind)
            info = gate_info(api.session.require_circuit()).get(kind)
        total, sites = info if info else (0, [])
        return {
            "kind": kind,
            "total": total,
            "sites": [
                {
                    "file": prov.file,
                    "line": prov.line,
                    "column": prov.column,
                    "context": prov.context,
                    "label": prov.describe(),
                    "occurrences": count,
                }
                for prov, count in sites
            ],
            "report": report,
        }

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "gate_kinds": sorted(GATE_SPECS)}

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def default_ui_dir() -> str | None:
    env = os.environ.get("QCDB_UI_DIR")
    if env:
        return env
    here = os.path.dirname(os.path.abspath(__file__))
    for candidate in (
        os.path.join(os.getcwd(), "frontend", "dist"),
        os.path.abspath(os.path.join(here, "..", "..", "frontend", "dist")),
    ):
        if os.path.isdir(candidate):
            return candidate
    return None


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
          ui_dir: str | None = None) -> None:
    import uvicorn

    app = create_app(ui_dir=ui_dir if ui_dir is not None else default_ui_dir())
    uvicorn.run(app, host=host, port=port, log_level="warning")
