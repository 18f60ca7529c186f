"""HTTP front end: check, bulk check, onboarding, related lookup, stats.

All successful bodies are produced by the canonical JSON serializer shared
with the CLI. Reads run concurrently against an immutable context snapshot;
onboarding is serialized behind a single writer lock and publishes a new
snapshot atomically, so readers never observe a half-updated store.
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading

from fastapi import FastAPI, Request, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware

from . import ann
from .corpus import (
    PipelineConfig,
    ProviderSet,
    QuestionStore,
    TaxonomyTag,
    load_config,
    load_store,
    parse_records,
    save_store,
)
from .errors import IngestError, InvalidInputError, QdupError
from .pipeline import (
    CheckContext,
    DuplicateReport,
    annotate_for_store,
    bulk_check,
    check,
    prepare,
)
from .schemas import bulk_item_to_dict, canonical_json, report_to_dict

logger = logging.getLogger(__name__)

INDEX_FILE = "index.qdi"


class Engine:
    """Store plus prepared context; the single mutable unit behind the API."""

    def __init__(
        self,
        store: QuestionStore,
        providers: ProviderSet | None = None,
        config: PipelineConfig | None = None,
        index: ann.AnnIndex | None = None,
        persist_dir: str | None = None,
    ):
        self._write_lock = threading.Lock()
        self.persist_dir = persist_dir
        self.ctx = prepare(store, providers, config, index)

    @property
    def store(self) -> QuestionStore:
        return self.ctx.store

    def check(self, text: str) -> DuplicateReport:
        return check(text, self.ctx.store, context=self.ctx)

    def onboard(
        self, text: str, force: bool, tag: TaxonomyTag | None
    ) -> tuple[str | None, DuplicateReport]:
        """Screen and insert one question; returns (new id or None, report).

        Insertion appends to the existing index partitioning and swaps in a
        fresh context; nothing is mutated when duplicates block the insert.
        """
        with self._write_lock:
            ctx = self.ctx
            report = check(text, ctx.store, context=ctx)
            if report.has_duplicates and not force:
                return None, report
            question = annotate_for_store(text, ctx, question_id=report.input_id)
            if tag is not None:
                question.tag = tag
            new_index = ann.with_added(ctx.index, question.id, question.embedding)
            ctx.store.add(question)
            centroids = (
                {} if ctx.providers.tagger is not None else ctx.store.subject_centroids()
            )
            self.ctx = CheckContext(
                store=ctx.store,
                providers=ctx.providers,
                config=ctx.config,
                index=new_index,
                symbols=ctx.symbols,
                centroids=centroids,
            )
            if self.persist_dir is not None:
                save_store(ctx.store, self.persist_dir)
                ann.save_index(new_index, os.path.join(self.persist_dir, INDEX_FILE))
            return question.id, report

    def related(self, qid: str, n: int) -> list[dict] | None:
        ctx = self.ctx
        question = ctx.store.questions.get(qid)
        if question is None:
            return None
        if question.embedding is None:
            return []
        hits = ann.query(ctx.index, question.embedding, n, exclude={qid})
        return [
            {"id": hit, "text": ctx.store.questions[hit].raw_text, "score": score}
            for hit, score in hits
        ]

    def stats(self) -> dict:
        ctx = self.ctx
        return {
            "questions": len(ctx.store),
            "subjects": {s: len(ids) for s, ids in sorted(ctx.store.subject_index.items())},
            "index_mode": ctx.index.mode.value,
            "embedding_dim": ctx.store.embedding_dim,
        }


def engine_from_dir(
    store_dir: str, config_path: str | None = None, persist: bool = True
) -> Engine:
    """Load a persisted store (and its index, if saved) into an Engine."""
    store = load_store(store_dir)
    config = load_config(config_path) if config_path else None
    index_path = os.path.join(store_dir, INDEX_FILE)
    index = ann.load_index(index_path) if os.path.exists(index_path) else None
    return Engine(store, config=config, index=index, persist_dir=store_dir if persist else None)


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(message: str, status_code: int) -> Response:
    return _json({"detail": message}, status_code)


async def _body_json(request: Request) -> dict | Response:
    try:
        body = await request.json()
    except Exception:
        return _error("request body must be valid JSON", 400)
    if not isinstance(body, dict):
        return _error("request body must be a JSON object", 400)
    return body


def _require_text_field(body: dict) -> str | Response:
    text = body.get("text")
    if not isinstance(text, str) or not text.strip():
        return _error("field 'text' must be a non-empty string", 400)
    return text


def create_app(
    engine: Engine | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    """Build the API application; `engine=None` serves 503s until loaded."""
    app = FastAPI(title="qdup", docs_url=None, redoc_url=None)
    app.state.engine = engine
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(InvalidInputError)
    async def _invalid_input(_request, exc):
        return _error(str(exc), 400)

    @app.exception_handler(QdupError)
    async def _qdup_error(_request, exc):
        logger.exception("unhandled engine error")
        return _error(str(exc), 500)

    def _engine() -> Engine | None:
        return app.state.engine

    @app.get("/api/v1/health")
    async def health():
        return _json({"status": "ok"})

    @app.get("/api/v1/stats")
    async def stats():
        engine = _engine()
        if engine is None:
            return _error("no question store loaded", 503)
        return _json(engine.stats())

    @app.post("/api/v1/check")
    async def check_question(request: Request):
        engine = _engine()
        if engine is None:
            return _error("no question store loaded", 503)
        body = await _body_json(request)
        if isinstance(body, Response):
            return body
        text = _require_text_field(body)
        if isinstance(text, Response):
            return text
        return _json(report_to_dict(engine.check(text)))

    @app.post("/api/v1/bulk-check")
    async def bulk_check_file(file: UploadFile):
        engine = _engine()
        if engine is None:
            return _error("no question store loaded", 503)
        name = file.filename or "upload.jsonl"
        fmt = "csv" if name.lower().endswith(".csv") else "jsonl"
        raw = await file.read()
        tmp = tempfile.NamedTemporaryFile(suffix=f".{fmt}", delete=False)
        try:
            tmp.write(raw)
            tmp.close()
            try:
                records = parse_records(tmp.name, fmt)
            except IngestError as exc:
                return _error(str(exc), 400)
        finally:
            os.unlink(tmp.name)
        ctx = engine.ctx
        items = bulk_check([r.text for r in records], ctx.store, context=ctx)
        return _json(
            [bulk_item_to_dict(item, text=records[item.row].text) for item in items]
        )

    @app.post("/api/v1/questions")
    async def onboard(request: Request):
        engine = _engine()
        if engine is None:
            return _error("no question store loaded", 503)
        body = await _body_json(request)
        if isinstance(body, Response):
            return body
        text = _require_text_field(body)
        if isinstance(text, Response):
            return text
        force = body.get("force", False)
        if not isinstance(force, bool):
            return _error("field 'force' must be a boolean", 400)
        tag = None
        subject = body.get("subject")
        if subject is not None:
            for fieldname in ("subject", "chapter", "topic"):
                value = body.get(fieldname)
                if value is not None and not isinstance(value, str):
                    return _error(f"field '{fieldname}' must be a string", 400)
            try:
                tag = TaxonomyTag(subject, body.get("chapter"), body.get("topic"))
            except ValueError as exc:
                return _error(str(exc), 400)
        elif body.get("chapter") or body.get("topic"):
            return _error("chapter/topic require a subject", 400)
        new_id, report = engine.onboard(text, force, tag)
        if new_id is None:
            return _json(
                {"detail": "duplicates found", "report": report_to_dict(report)}, 409
            )
        return _json({"id": new_id, "report": report_to_dict(report)}, 201)

    @app.get("/api/v1/questions/{qid}/related")
    async def related(qid: str, n: int | None = None):
        engine = _engine()
        if engine is None:
            return _error("no question store loaded", 503)
        if n is None:
            n = engine.ctx.config.related_top_n
        if n < 1:
            return _error("n must be a positive integer", 400)
        results = engine.related(qid, n)
        if results is None:
            return _error(f"unknown question id {qid!r}", 404)
        return _json(results)

    return app
