"""Local HTTP JSON protocol for interactive factorization sessions.

POST /session {bank|matrix, coprimification?} -> {id, state}
GET  /session/{id}/state
GET  /session/{id}/options
POST /session/{id}/step {eta, M, delta, ell}
POST /session/{id}/undo
POST /session/{id}/finalize -> {cascade, signature, schema, conditioning,
                                op_counts}

Errors are HTTP 400 with {code, message, step_index?}.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse

from . import bank as bankmod
from .analysis import lifting_cond
from .errors import LiftforgeError, SchemaError
from .field import context_from_spec
from .pmat import PolyMatrix2, cascade_to_json
from .poly import OpCounter
from .session import SessionEngine


def _state_json(state):
    lifts = [f for f in state.left + state.right
             if f.__class__.__name__ == "Lift"]
    cond = 1.0
    for f in lifts:
        cond *= lifting_cond(f.filt)
    return {
        "id": state.session_id,
        "matrix": state.Q.to_strings(),
        "degrees": [[_deg(state.Q[i, j]) for j in range(2)] for i in range(2)],
        "determinant": state.Q.determinant().to_text(),
        "delays": list(state.delays),
        "terminated": state.terminated,
        "steps_applied": len(state.choices),
        "schema": state.schema_text(),
        "running_cond": cond,
        "op_counts": _counts_json(OpCounter(*state.counter_state)),
    }


def _deg(p):
    d = p.degree()
    return d if isinstance(d, int) else None


def _counts_json(counter):
    return {"pp_add": counter.pp_add, "sp_mult": counter.sp_mult,
            "pp_mult": counter.pp_mult, "p_div": counter.p_div}


def _field_json(v):
    if isinstance(v, frozenset):
        return sorted(v)
    return v


def _options_json(previews):
    out = []
    for p in previews:
        out.append({
            "eta": p.choice.eta,
            "M": _field_json(p.choice.M),
            "delta": _field_json(p.choice.delta),
            "ell": _field_json(p.choice.ell),
            "lifting_filter": p.lifting_filter,
            "delay_m": p.delay_m,
            "quotient_degrees": p.quotient_degrees,
            "cond_factor": p.cond_factor,
        })
    return out


def _parse_matrix(payload):
    if "bank" in payload:
        b = bankmod.builtin(payload["bank"])
        return bankmod.to_polyphase(b)
    if "bank_json" in payload:
        return bankmod.to_polyphase(bankmod.bank_from_json(payload["bank_json"]))
    if "matrix" in payload:
        ctx = context_from_spec(payload.get("field", "rational"))
        return PolyMatrix2.from_strings(payload["matrix"], ctx)
    raise SchemaError("request needs one of 'bank', 'bank_json', 'matrix'")


def create_app(engine: SessionEngine | None = None) -> FastAPI:
    engine = engine or SessionEngine()
    app = FastAPI(title="liftforge session service")

    @app.exception_handler(LiftforgeError)
    async def _domain_error(request: Request, exc: LiftforgeError):
        body = {"code": exc.__class__.__name__, "message": str(exc)}
        if isinstance(exc, SchemaError) and exc.step_index is not None:
            body["step_index"] = exc.step_index
        return JSONResponse(status_code=400, content=body)

    @app.post("/session")
    async def new_session(payload: dict):
        H = _parse_matrix(payload)
        coprim = payload.get("coprimification")
        explicit = None
        order = "rows_first"
        if isinstance(coprim, dict):
            order = coprim.get("order", "rows_first")
            if "delays" in coprim:
                explicit = tuple(int(x) for x in coprim["delays"])
        elif isinstance(coprim, list):
            explicit = tuple(int(x) for x in coprim)
        state = engine.new_session(H, coprimification=explicit, order=order)
        return {"id": state.session_id, "state": _state_json(state)}

    @app.get("/session/{sid}/state")
    async def get_state(sid: str):
        return _state_json(engine.get(sid))

    @app.get("/session/{sid}/options")
    async def get_options(sid: str):
        return {"options": _options_json(engine.options(sid))}

    @app.post("/session/{sid}/step")
    async def post_step(sid: str, payload: dict):
        state = engine.apply(sid, payload["eta"], int(payload["M"]),
                             int(payload["delta"]), int(payload["ell"]))
        return _state_json(state)

    @app.post("/session/{sid}/undo")
    async def post_undo(sid: str):
        return _state_json(engine.undo(sid))

    @app.post("/session/{sid}/finalize")
    async def post_finalize(sid: str):
        cascade, signature, schema, report, counter = engine.finalize(sid)
        return {
            "cascade": cascade_to_json(cascade),
            "signature": signature.to_text(),
            "schema": schema,
            "conditioning": report.to_json(),
            "op_counts": _counts_json(counter),
        }

    @app.get("/", response_class=HTMLResponse)
    async def index():
        return ("<html><body><h1>liftforge session service</h1>"
                "<p>POST /session to start.</p></body></html>")

    return app


def serve(port=8321, host="127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
