"""Stateful interactive-factorization engine behind the explorer UI.

Each session holds a current quotient matrix, enumerates the legal next
choices with previews, applies or undoes steps, and finalizes to standard
causal lifting form.  Mutations on one session are serialized by a lock;
distinct sessions are independent.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field, replace

from .analysis import cascade_conditioning, lifting_cond
from .cca import (
    StepChoice,
    coalesce_options,
    extract_step,
    format_schema,
    has_zero,
    Schema,
    terminate,
)
from .errors import (
    DivisorNotLeftJustified,
    IllegalChoice,
    NotCoprime,
    NothingToUndo,
    PreconditionViolated,
    Terminated,
)
from .pmat import PolyMatrix2, coprimify, normalize, pr_check
from .poly import OpCounter


@dataclass(frozen=True)
class SessionState:
    session_id: str
    H: PolyMatrix2
    delays: tuple  # (rho0, rho1, c0, c1)
    Q: PolyMatrix2
    left: tuple  # factors accumulated by left-handed steps
    right: tuple  # factors accumulated by right-handed steps
    choices: tuple  # StepChoice per applied step
    counter_state: tuple
    history: tuple = field(default=(), repr=False)

    @property
    def terminated(self):
        return has_zero(self.Q)

    def schema_text(self):
        return format_schema(Schema(steps=self.choices))


@dataclass(frozen=True)
class ChoicePreview:
    choice: StepChoice
    lifting_filter: str
    delay_m: int
    quotient_degrees: list
    cond_factor: float


class SessionEngine:
    def __init__(self):
        self._sessions = {}
        self._locks = {}
        self._global = threading.Lock()

    def _lock(self, sid):
        with self._global:
            if sid not in self._locks:
                raise IllegalChoice(f"unknown session {sid!r}")
            return self._locks[sid]

    def new_session(self, H: PolyMatrix2, coprimification=None,
                    order="rows_first") -> SessionState:
        pr_check(H)
        rho0, rho1, c0, c1, Q = coprimify(H, order=order,
                                          explicit=coprimification)
        sid = uuid.uuid4().hex[:12]
        state = SessionState(
            session_id=sid, H=H, delays=(rho0, rho1, c0, c1), Q=Q,
            left=(), right=(), choices=(), counter_state=(0, 0, 0, 0))
        with self._global:
            self._sessions[sid] = state
            self._locks[sid] = threading.Lock()
        return state

    def get(self, sid) -> SessionState:
        with self._global:
            if sid not in self._sessions:
                raise IllegalChoice(f"unknown session {sid!r}")
            return self._sessions[sid]

    def options(self, sid):
        state = self.get(sid)
        if state.terminated:
            raise Terminated("quotient has a zero; finalize the session")
        return enumerate_options(state.Q)

    def apply(self, sid, eta, M, delta, ell) -> SessionState:
        with self._lock(sid):
            state = self.get(sid)
            if state.terminated:
                raise Terminated("quotient has a zero; finalize the session")
            counter = OpCounter(*state.counter_state)
            try:
                step = extract_step(state.Q, eta, M, delta, ell, counter)
            except (PreconditionViolated, DivisorNotLeftJustified,
                    NotCoprime) as exc:
                raise IllegalChoice(str(exc)) from exc
            choice = coalesce_options(state.Q, StepChoice(eta, M, delta, ell))
            if eta == "L":
                left = state.left + ((step.lift,) if not step.delay.m
                                     else (step.lift, step.delay))
                right = state.right
            else:
                tail = (step.delay, step.lift) if step.delay.m else (step.lift,)
                left = state.left
                right = tail + state.right
            new = replace(
                state, Q=step.quotient, left=left, right=right,
                choices=state.choices + (choice,),
                counter_state=counter.as_tuple(),
                history=state.history + (state,))
            self._store(new)
            return new

    def undo(self, sid) -> SessionState:
        with self._lock(sid):
            state = self.get(sid)
            if not state.history:
                raise NothingToUndo("no steps to undo")
            prev = state.history[-1]
            self._store(prev)
            return prev

    def finalize(self, sid):
        from .signatures import lifting_signature

        with self._lock(sid):
            state = self.get(sid)
            if not state.terminated:
                raise IllegalChoice(
                    "quotient is zero-free; keep factoring or choose a "
                    "terminating step")
            counter = OpCounter(*state.counter_state)
            rho0, rho1, c0, c1 = state.delays
            factors = list(state.left) + terminate(state.Q, counter) + \
                list(state.right)
            cascade = normalize(factors, state.H.ctx,
                                row_delays=(rho0, rho1), col_delays=(c0, c1),
                                counter=counter)
            report = cascade_conditioning(cascade)
            return cascade, lifting_signature(cascade), state.schema_text(), \
                report, counter

    def _store(self, state):
        with self._global:
            self._sessions[state.session_id] = state


def enumerate_options(Q: PolyMatrix2):
    """Legal (eta, M, delta, ell) choices with previews, brace-coalesced.

    A quotient that already contains a zero admits no lifting steps: the
    list is empty and only finalization remains."""
    if has_zero(Q):
        return []
    _, d_hat = pr_check(Q)
    groups = {}
    order = []
    for eta in ("L", "R"):
        for delta in (0, 1):
            for m in range(d_hat + 1):
                for ell in (0, 1):
                    try:
                        step = extract_step(Q, eta, m, delta, ell)
                    except (PreconditionViolated, DivisorNotLeftJustified,
                            NotCoprime):
                        continue
                    key = (eta, delta, step.lift, step.delay, step.quotient)
                    if key not in groups:
                        groups[key] = {"step": step, "ms": set(), "ells": set()}
                        order.append(key)
                    groups[key]["ms"].add(m)
                    groups[key]["ells"].add(ell)
    out = []
    for key in order:
        eta, delta = key[0], key[1]
        info = groups[key]
        step = info["step"]

        def pack(vals):
            return frozenset(vals) if len(vals) > 1 else next(iter(vals))

        choice = StepChoice(eta, pack(info["ms"]), delta, pack(info["ells"]))
        degrees = [[_deg_str(step.quotient[i, j]) for j in range(2)]
                   for i in range(2)]
        out.append(ChoicePreview(
            choice=choice,
            lifting_filter=step.lift.filt.to_text(),
            delay_m=step.delay.m,
            quotient_degrees=degrees,
            cond_factor=lifting_cond(step.lift.filt)))
    return out


def _deg_str(p):
    d = p.degree()
    return str(d) if isinstance(d, int) else "-inf"
