"""HTTP/JSON emulation service.

Endpoints:
    POST /sessions                      train a network on a pattern set
    POST /sessions/{sid}/retrieve       run one retrieval in a session
    GET  /sessions/{sid}/traces/{tid}   stream a run's period frames (SSE)
    GET  /healthz                       liveness probe

Wire schema (all JSON): a pattern is an array of rows, each row an
array of 0/1 integers.  Session bodies: {"patterns": [pattern, ...],
"config": {"architecture", "weight_bits", "phase_bits",
"hybrid_sampling", "logic_frequency_hz"}} with every config key
optional.  Retrieve bodies: {"pattern": pattern, "options":
{"max_periods", "stability_window", "corrupt": {"fraction", "seed"}}}
with every option optional; server-side corruption uses the same
pinned generator as the benchmark so clients can reproduce it.

Sessions are in-memory and isolated; ids are sequential ("s1", "s2",
...; traces "t1", "t2", ... per session) so that replaying the same
request sequence yields byte-identical responses.  A per-session lock
serializes retrievals within one session; separate sessions run
concurrently.  Malformed bodies return 400, unknown ids 404, pattern
size mismatches 409, and networks larger than the configured
oscillator cap 413.
"""

from __future__ import annotations

import json
import threading
from collections import deque
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse

from onnemu.core import (
    Architecture,
    BinaryPattern,
    HybridSampling,
    NetworkConfig,
    SpinVector,
    WeightMatrix,
    validate_config,
)
from onnemu.engine import engine_init, relative_phases, run_until_settled
from onnemu.tasks import CorruptionSpec, corrupt, pattern_to_phases, phases_to_pattern
from onnemu.training import TrainingParams, quantize_matrix, train_do1

HISTORY_LIMIT = 32


@dataclass
class TraceRecord:
    frames: list[dict]
    summary: dict


@dataclass
class Session:
    sid: str
    config: NetworkConfig
    weights: WeightMatrix
    width: int
    height: int
    patterns: list[list[list[int]]]
    stability: dict
    lock: threading.Lock = field(default_factory=threading.Lock)
    trace_counter: int = 0
    traces: dict[str, TraceRecord] = field(default_factory=dict)
    trace_order: deque = field(default_factory=lambda: deque(maxlen=HISTORY_LIMIT))
    history: deque = field(default_factory=lambda: deque(maxlen=HISTORY_LIMIT))


def _bad_request(msg: str) -> HTTPException:
    return HTTPException(status_code=400, detail=msg)


def _parse_grid(obj, what: str) -> BinaryPattern:
    if not isinstance(obj, list) or not obj:
        raise _bad_request(f"{what} must be a non-empty array of rows")
    width = None
    rows = []
    for row in obj:
        if not isinstance(row, list) or not row:
            raise _bad_request(f"{what} rows must be non-empty arrays")
        if any(not isinstance(v, int) or isinstance(v, bool) or v not in (0, 1)
               for v in row):
            raise _bad_request(f"{what} cells must be 0 or 1")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise _bad_request(f"{what} rows have inconsistent lengths")
        rows.append(row)
    return BinaryPattern.from_rows(rows)


def _parse_session_config(obj, n: int) -> NetworkConfig:
    if obj is None:
        obj = {}
    if not isinstance(obj, dict):
        raise _bad_request("config must be an object")
    try:
        config = NetworkConfig(
            architecture=Architecture(obj.get("architecture", "hybrid")),
            n_oscillators=n,
            weight_bits=int(obj.get("weight_bits", 5)),
            phase_bits=int(obj.get("phase_bits", 4)),
            hybrid_sampling=HybridSampling(obj.get("hybrid_sampling", "pipelined")),
            logic_frequency_hz=float(obj.get("logic_frequency_hz", 50e6)),
        )
        return validate_config(config)
    except (ValueError, TypeError) as exc:
        raise _bad_request(f"invalid config: {exc}")


def _config_json(config: NetworkConfig) -> dict:
    return {
        "architecture": config.architecture.value,
        "n_oscillators": config.n_oscillators,
        "weight_bits": config.weight_bits,
        "phase_bits": config.phase_bits,
        "hybrid_sampling": config.hybrid_sampling.value,
        "logic_frequency_hz": config.logic_frequency_hz,
    }


def _pattern_json(pattern: BinaryPattern) -> list[list[int]]:
    return [[int(v) for v in row] for row in pattern.rows()]


def create_app(max_oscillators: int = 2048) -> FastAPI:
    app = FastAPI(title="onnemu service")
    sessions: dict[str, Session] = {}
    state_lock = threading.Lock()
    counter = {"n": 0}

    @app.exception_handler(RequestValidationError)
    def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed body"})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(payload: dict):
        raw_patterns = payload.get("patterns")
        if not isinstance(raw_patterns, list) or not raw_patterns:
            raise _bad_request("patterns must be a non-empty array")
        patterns = [_parse_grid(p, f"patterns[{i}]")
                    for i, p in enumerate(raw_patterns)]
        w, h = patterns[0].width, patterns[0].height
        if any((p.width, p.height) != (w, h) for p in patterns):
            raise _bad_request("all patterns must share one grid size")
        n = w * h
        if n > max_oscillators:
            raise HTTPException(
                status_code=413,
                detail=f"{n} oscillators exceed the cap of {max_oscillators}",
            )
        config = _parse_session_config(payload.get("config"), n)
        spins = [SpinVector.from_pattern(p) for p in patterns]
        train_obj = payload.get("training") or {}
        if not isinstance(train_obj, dict):
            raise _bad_request("training must be an object")
        try:
            params = TrainingParams(
                stability_threshold=float(train_obj.get("stability_threshold", 1.0)),
                max_epochs=int(train_obj.get("max_epochs", 1000)),
            )
        except (ValueError, TypeError) as exc:
            raise _bad_request(f"invalid training params: {exc}")
        result = train_do1(spins, params)
        weights, report = quantize_matrix(
            result.weights, config.weight_bits, patterns=spins
        )
        stability = {
            "converged": result.converged,
            "epochs": result.epochs,
            "scale": report.scale,
            "pattern_stable": [
                i not in report.unstable_patterns for i in range(len(patterns))
            ],
        }
        with state_lock:
            counter["n"] += 1
            sid = f"s{counter['n']}"
            session = Session(
                sid=sid,
                config=config,
                weights=weights,
                width=w,
                height=h,
                patterns=[_pattern_json(p) for p in patterns],
                stability=stability,
            )
            sessions[sid] = session
        return {
            "session_id": sid,
            "config": _config_json(config),
            "stability": stability,
        }

    def _get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {sid!r}")
        return session

    @app.post("/sessions/{sid}/retrieve")
    def retrieve(sid: str, payload: dict):
        session = _get_session(sid)
        pattern = _parse_grid(payload.get("pattern"), "pattern")
        if (pattern.width, pattern.height) != (session.width, session.height):
            raise HTTPException(
                status_code=409,
                detail=f"pattern is {pattern.width}x{pattern.height}, session "
                       f"was trained at {session.width}x{session.height}",
            )
        options = payload.get("options") or {}
        if not isinstance(options, dict):
            raise _bad_request("options must be an object")
        try:
            max_periods = int(options.get("max_periods", 1000))
            window = int(options.get("stability_window", 3))
        except (ValueError, TypeError):
            raise _bad_request("max_periods and stability_window must be integers")
        corrupt_obj = options.get("corrupt")
        applied_corruption = None
        if corrupt_obj is not None:
            if not isinstance(corrupt_obj, dict):
                raise _bad_request("corrupt option must be an object")
            try:
                spec = CorruptionSpec(
                    fraction=float(corrupt_obj.get("fraction", 0.0)),
                    seed=int(corrupt_obj.get("seed", 0)),
                )
            except (ValueError, TypeError) as exc:
                raise _bad_request(f"invalid corrupt option: {exc}")
            pattern = corrupt(pattern, spec)
            applied_corruption = {"fraction": spec.fraction, "seed": spec.seed}
        config = session.config
        with session.lock:
            phases = pattern_to_phases(pattern, config.phase_bits)
            try:
                engine = engine_init(config, session.weights, phases,
                                     record_trace=True)
                outcome = run_until_settled(engine, max_periods, window)
            except ValueError as exc:
                raise _bad_request(str(exc))
            decoded = phases_to_pattern(
                outcome.final_phases, config.phase_bits,
                session.width, session.height,
            )
            frames = []
            for sample in engine.trace:
                rel = relative_phases(sample, config.phase_bits)
                frame_pattern = phases_to_pattern(
                    sample, config.phase_bits, session.width, session.height
                )
                frames.append({
                    "relative_phases": [int(q) for q in rel],
                    "pattern": _pattern_json(frame_pattern),
                })
            summary = {
                "settled": outcome.settled,
                "timed_out": outcome.timed_out,
                "cycles_to_settle": outcome.cycles_to_settle,
                "pattern": _pattern_json(decoded),
            }
            session.trace_counter += 1
            tid = f"t{session.trace_counter}"
            if len(session.trace_order) == session.trace_order.maxlen:
                evicted = session.trace_order[0]
                session.traces.pop(evicted, None)
            session.trace_order.append(tid)
            session.traces[tid] = TraceRecord(frames=frames, summary=summary)
            session.history.append({"trace_id": tid, **summary})
        return {
            "settled": outcome.settled,
            "timed_out": outcome.timed_out,
            "cycles_to_settle": outcome.cycles_to_settle,
            "pattern": _pattern_json(decoded),
            "probe": _pattern_json(pattern),
            "corruption": applied_corruption,
            "trace_id": tid,
            "frames": len(frames),
        }

    @app.get("/sessions/{sid}/traces/{tid}")
    def stream_trace(sid: str, tid: str):
        session = _get_session(sid)
        record = session.traces.get(tid)
        if record is None:
            raise HTTPException(status_code=404, detail=f"no trace {tid!r}")

        def event_stream():
            for i, frame in enumerate(record.frames):
                payload = json.dumps({"index": i, **frame}, separators=(",", ":"))
                yield f"event: frame\ndata: {payload}\n\n"
            payload = json.dumps(record.summary, separators=(",", ":"))
            yield f"event: summary\ndata: {payload}\n\n"

        return StreamingResponse(event_stream(), media_type="text/event-stream")

    return app
