"""HTTP facade for elicitation sessions and computed results.

Stateless handlers over a shared session store; writes to one session
are serialized by a per-session lock, distinct sessions run fully
concurrently.  Results are cached per session keyed by a hash of the
judgment log, so a stale cache can never be served.
"""

from __future__ import annotations

import threading
import uuid
from collections import defaultdict
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from riskweave import pipeline
from riskweave.judgments import (
    Judgment,
    JudgmentError,
    completeness,
    matrix_from_judgments,
    parse_value,
)
from riskweave.priority import CR_THRESHOLD, consistency, most_inconsistent_judgment, principal_eigenvector
from riskweave.store import (
    LoadedModel,
    SessionRecord,
    SessionStore,
    StoreError,
    builtin_documents,
    load_model,
    load_model_file,
)
from riskweave.supermatrix import SupermatrixError


class CreateSession(BaseModel):
    model: str


class JudgmentBody(BaseModel):
    context: str
    row: str
    col: str
    value: str | int


class ApiError(Exception):
    def __init__(self, status: int, detail: str):
        self.status = status
        self.detail = detail


def _load_models(store_root: Path) -> dict[str, LoadedModel]:
    models = {name: load_model(doc) for name, doc in builtin_documents().items()}
    models_dir = store_root / "models"
    if models_dir.is_dir():
        for path in sorted(models_dir.glob("*.json")):
            loaded = load_model_file(path)
            models[loaded.name] = loaded
    return models


def create_app(
    store_root: str | Path = "riskweave-data",
    cors_allow_origin: str | None = None,
) -> FastAPI:
    root = Path(store_root)
    app = FastAPI(title="riskweave", version="0.1.0")
    if cors_allow_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_allow_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    app.state.store = SessionStore(root)
    app.state.models = _load_models(root)
    app.state.sessions: dict[str, SessionRecord] = {}
    app.state.locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request body"})

    @app.exception_handler(ApiError)
    async def api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"detail": exc.detail})

    def get_model(name: str) -> LoadedModel:
        model = app.state.models.get(name)
        if model is None:
            raise ApiError(404, f"unknown model {name!r}")
        return model

    def get_session(session_id: str) -> SessionRecord:
        record = app.state.sessions.get(session_id)
        if record is None:
            try:
                record = app.state.store.load(session_id)
            except StoreError:
                raise ApiError(404, f"unknown session {session_id!r}") from None
            app.state.sessions[session_id] = record
        return record

    def context_status(model: LoadedModel, record: SessionRecord) -> list[dict]:
        effective = record.effective_judgments()
        out = []
        for ctx in model.contexts:
            if ctx.n == 1:
                out.append(
                    {
                        "id": ctx.id,
                        "kind": ctx.kind,
                        "control": ctx.control,
                        "control_label": ctx.control_label,
                        "n": ctx.n,
                        "pairs": 0,
                        "answered": 0,
                        "progress": 1.0,
                        "complete": True,
                    }
                )
                continue
            report = completeness(ctx, tuple(effective.get(ctx.id, ())))
            entry = {
                "id": ctx.id,
                "kind": ctx.kind,
                "control": ctx.control,
                "control_label": ctx.control_label,
                "n": ctx.n,
                "pairs": len(ctx.pairs),
                "answered": report.answered,
                "progress": report.progress,
                "complete": not report.missing,
            }
            if not report.missing:
                matrix = matrix_from_judgments(ctx, tuple(effective.get(ctx.id, ())))
                cr = consistency(matrix)
                entry["consistency"] = {
                    "lambda_max": cr.lambda_max,
                    "ci": cr.ci,
                    "cr": cr.cr,
                    "acceptable": cr.acceptable,
                }
            out.append(entry)
        return out

    def session_view(model: LoadedModel, record: SessionRecord) -> dict:
        contexts = context_status(model, record)
        return {
            "session_id": record.session_id,
            "model": record.model,
            "created": record.created,
            "contexts": contexts,
            "complete": all(c["complete"] for c in contexts),
            "judgment_count": len(record.log),
        }

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/models")
    def models():
        return [
            {
                "name": m.name,
                "description": m.description,
                "contexts": len(m.contexts),
                "fmea_items": len(m.fmea_items),
            }
            for m in app.state.models.values()
        ]

    @app.get("/sessions")
    def sessions():
        ids = sorted(set(app.state.store.list_ids()) | set(app.state.sessions))
        out = []
        for session_id in ids:
            record = get_session(session_id)
            out.append(
                {
                    "session_id": session_id,
                    "model": record.model,
                    "created": record.created,
                    "judgment_count": len(record.log),
                }
            )
        return out

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession):
        model = get_model(body.model)
        record = SessionRecord(
            session_id=uuid.uuid4().hex[:12],
            model=model.name,
            created=__import__("datetime").datetime.now(
                __import__("datetime").timezone.utc
            ).isoformat(),
        )
        app.state.sessions[record.session_id] = record
        app.state.store.save(record)
        return session_view(model, record)

    @app.get("/sessions/{session_id}")
    def session_state(session_id: str):
        record = get_session(session_id)
        return session_view(get_model(record.model), record)

    @app.get("/sessions/{session_id}/next")
    def next_pair(session_id: str):
        record = get_session(session_id)
        model = get_model(record.model)
        effective = record.effective_judgments()
        for ctx in model.contexts:
            if ctx.n < 2:
                continue
            report = completeness(ctx, tuple(effective.get(ctx.id, ())))
            if report.missing:
                row, col = report.missing[0]
                return {
                    "context": {
                        "id": ctx.id,
                        "kind": ctx.kind,
                        "control": ctx.control,
                        "control_label": ctx.control_label,
                        "answered": report.answered,
                        "pairs": len(ctx.pairs),
                    },
                    "row": row,
                    "col": col,
                    "row_label": ctx.label_of(row),
                    "col_label": ctx.label_of(col),
                    "question": ctx.question(row, col),
                }
        return Response(status_code=204)

    @app.put("/sessions/{session_id}/judgments")
    def put_judgment(session_id: str, body: JudgmentBody):
        with app.state.locks[session_id]:
            record = get_session(session_id)
            model = get_model(record.model)
            try:
                ctx = model.context(body.context)
            except StoreError:
                raise ApiError(404, f"unknown context {body.context!r}") from None
            if body.row == body.col:
                raise ApiError(409, "a judgment cannot compare an element with itself")
            if body.row not in ctx.compared or body.col not in ctx.compared:
                raise ApiError(404, f"element not compared in context {ctx.id!r}")
            try:
                judgment = Judgment(ctx.id, body.row, body.col, parse_value(body.value))
            except JudgmentError as exc:
                raise ApiError(422, str(exc)) from None

            entry = record.append(judgment)
            app.state.store.append_entry(record, entry)

            effective = record.effective_judgments()
            report = completeness(ctx, tuple(effective.get(ctx.id, ())))
            response = {
                "context": ctx.id,
                "answered": report.answered,
                "pairs": len(ctx.pairs),
                "progress": report.progress,
                "context_complete": not report.missing,
            }
            if not report.missing:
                matrix = matrix_from_judgments(ctx, tuple(effective.get(ctx.id, ())))
                cr = consistency(matrix)
                response["consistency"] = {
                    "lambda_max": cr.lambda_max,
                    "ci": cr.ci,
                    "cr": cr.cr,
                    "acceptable": cr.acceptable,
                }
                if not cr.acceptable and ctx.n >= 3:
                    vector, _ = principal_eigenvector(matrix)
                    row, col, deviation = most_inconsistent_judgment(matrix, vector)
                    response["most_inconsistent"] = {
                        "row": row,
                        "col": col,
                        "deviation": deviation,
                        "current": str(matrix.value(row, col)),
                    }
            return response

    def compute_results(record: SessionRecord, model: LoadedModel, weights_source: str) -> dict:
        log_digest = record.log_hash()
        cache = record.cache
        if (
            cache
            and cache.get("log_hash") == log_digest
            and cache.get("weights_source") == weights_source
        ):
            return cache
        effective = record.effective_judgments()
        gaps = pipeline.missing_pairs(model, effective)
        if gaps:
            raise ApiError(
                409,
                "session incomplete: "
                + "; ".join(f"{ctx}: {len(pairs)} pairs missing" for ctx, pairs in gaps.items()),
            )
        try:
            result = pipeline.solve(model, weights_source, judgments=effective)
        except (StoreError, ValueError) as exc:
            if isinstance(exc, SupermatrixError):
                raise ApiError(500, f"limit computation failed: {exc}") from None
            raise ApiError(422, str(exc)) from None
        payload = pipeline.results_payload(model, result, log_hash=log_digest)
        cache = {
            "log_hash": log_digest,
            "weights_source": weights_source,
            "results": payload,
            "supermatrix": {
                "index": list(result.unweighted.index),
                "unweighted": [[round(float(v), 12) for v in row] for row in result.unweighted.entries],
                "weighted": [[round(float(v), 12) for v in row] for row in result.weighted.entries],
                "limit": [[round(float(v), 12) for v in row] for row in result.limit_matrix.entries],
            },
        }
        record.cache = cache
        app.state.store.update_cache(record)
        return cache

    @app.get("/sessions/{session_id}/results")
    def results(session_id: str, weights_source: str = "computed"):
        if weights_source not in (pipeline.WEIGHTS_COMPUTED, pipeline.WEIGHTS_PAPER):
            raise ApiError(422, f"unknown weights_source {weights_source!r}")
        with app.state.locks[session_id]:
            record = get_session(session_id)
            model = get_model(record.model)
            return compute_results(record, model, weights_source)["results"]

    @app.get("/sessions/{session_id}/supermatrix")
    def supermatrix(session_id: str, stage: str = "weighted", weights_source: str = "computed"):
        if stage not in ("unweighted", "weighted", "limit"):
            raise ApiError(422, f"unknown stage {stage!r}")
        with app.state.locks[session_id]:
            record = get_session(session_id)
            model = get_model(record.model)
            cache = compute_results(record, model, weights_source)
            return {
                "stage": stage,
                "index": cache["supermatrix"]["index"],
                "entries": cache["supermatrix"][stage],
            }

    return app
