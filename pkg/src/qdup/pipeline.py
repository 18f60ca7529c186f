"""End-to-end duplicate check: annotate, retrieve, filter, relate.

`check` runs one question through the full stage sequence and returns a
DuplicateReport carrying the complete per-candidate elimination trace;
`bulk_check` maps it over a batch with per-item error isolation.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import ann
from .corpus import (
    PipelineConfig,
    ProviderSet,
    Question,
    QuestionStore,
    TaxonomyTag,
    annotate,
    nearest_subject,
    resolve_symbol_dictionary,
)
from .errors import DimensionMismatchError, InvalidInputError, QdupError
from .filters import (
    StageDecision,
    entity_stage,
    jaccard_stage,
    keyphrase_stage,
    negation_stage,
)
from .normalize import SymbolDictionary
from .taxonomy import candidate_set

logger = logging.getLogger(__name__)


@dataclass
class DuplicateReport:
    """Everything the pipeline decided about one input question."""

    input_id: str
    normalized_text: str
    tag: TaxonomyTag
    exact_duplicates: list[str]
    near_duplicates: list[str]
    related: list[tuple[str, float]]
    trace: list[StageDecision]
    timings: dict[str, float]

    @property
    def has_duplicates(self) -> bool:
        return bool(self.exact_duplicates or self.near_duplicates)


@dataclass
class BulkItem:
    """One row of a bulk check: either a report or an isolated failure."""

    row: int
    report: DuplicateReport | None = None
    error: str | None = None


@dataclass
class CheckContext:
    """Precomputed per-store state shared across many check calls."""

    store: QuestionStore
    providers: ProviderSet
    config: PipelineConfig
    index: ann.AnnIndex
    symbols: SymbolDictionary
    centroids: dict[str, np.ndarray] = field(default_factory=dict)


def prepare(
    store: QuestionStore,
    providers: ProviderSet | None = None,
    config: PipelineConfig | None = None,
    index: ann.AnnIndex | None = None,
) -> CheckContext:
    """Build the reusable context: symbol dictionary, tag centroids, ANN index."""
    config = config if config is not None else store.config
    providers = providers if providers is not None else ProviderSet.default(config)
    if index is None:
        index = ann.build(
            store.embeddings(),
            config.ann_mode,
            n_partitions=config.ann_partitions,
            n_probe=config.ann_probe,
            seed=config.seed,
        )
    centroids = {} if providers.tagger is not None else store.subject_centroids()
    return CheckContext(
        store=store,
        providers=providers,
        config=config,
        index=index,
        symbols=resolve_symbol_dictionary(config.symbol_dictionary),
        centroids=centroids,
    )


def _resolve_tag(question: Question, ctx: CheckContext) -> TaxonomyTag:
    if ctx.providers.tagger is not None:
        return ctx.providers.tagger.tag(question.norm_tokens)
    if ctx.centroids and question.embedding is not None:
        return TaxonomyTag(nearest_subject(question.embedding, ctx.centroids))
    return question.tag


def annotate_for_store(
    q_text: str, ctx: CheckContext, question_id: str | None = None
) -> Question:
    """Annotate one input in the store's space, resolving its subject tag."""
    question = annotate(
        q_text, ctx.config, ctx.providers, symbols=ctx.symbols, question_id=question_id
    )
    question.tag = _resolve_tag(question, ctx)
    return question


def related_questions(
    dups: Iterable[str],
    store: QuestionStore,
    index: ann.AnnIndex,
    n: int,
    exclude: Iterable[str] = (),
) -> list[tuple[str, float]]:
    """Nearest non-duplicate neighbors of the detected duplicates.

    Each duplicate is queried for its n closest stored questions; hits are
    merged keeping each id's best score, which makes the result independent
    of duplicate processing order. Top n overall, ties by ascending id.
    """
    dups = set(dups)
    if not dups:
        return []
    excluded = dups | set(exclude)
    best: dict[str, float] = {}
    for dup in sorted(dups):
        vec = store.questions[dup].embedding
        if vec is None:
            continue
        for qid, score in ann.query(index, vec, n, exclude=excluded):
            if qid not in best or score > best[qid]:
                best[qid] = score
    ranked = sorted(best.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:n]


def check(
    q_text: str,
    store: QuestionStore,
    providers: ProviderSet | None = None,
    config: PipelineConfig | None = None,
    *,
    context: CheckContext | None = None,
) -> DuplicateReport:
    """Run the full elimination pipeline for one question.

    Builds a fresh context (including an ANN index over the store) unless
    one is supplied; callers issuing many checks should `prepare` once.
    """
    ctx = context if context is not None else prepare(store, providers, config)
    if ctx.providers.embedder.dimension != ctx.store.embedding_dim and ctx.providers.tagger is None:
        # Tagging compares the input embedding against store centroids, so
        # the spaces must line up unless a tagger was supplied.
        raise DimensionMismatchError(
            f"provider embeds {ctx.providers.embedder.dimension}-d but the store "
            f"holds {ctx.store.embedding_dim}-d vectors; supply a matching provider"
        )
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    question = annotate_for_store(q_text, ctx)
    timings["annotate"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    cands = candidate_set(ctx.store, question.tag, exclude_id=question.id)
    timings["candidates"] = (time.perf_counter() - t0) * 1000.0

    trace: list[StageDecision] = []

    t0 = time.perf_counter()
    exact, retained, decisions = jaccard_stage(
        question, cands, ctx.store, ctx.config.jaccard_threshold
    )
    trace.extend(decisions)
    timings["jaccard"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    retained, decisions = entity_stage(question, retained, ctx.store)
    trace.extend(decisions)
    timings["entity"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    retained, decisions = keyphrase_stage(
        question, retained, ctx.store, ctx.config.keyphrase_share_threshold
    )
    trace.extend(decisions)
    timings["keyphrase"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    retained, decisions = negation_stage(
        question, retained, ctx.store, ctx.config.negation_lexicon
    )
    trace.extend(decisions)
    timings["negation"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    duplicates = exact | retained
    related: list[tuple[str, float]] = []
    if duplicates:
        related = related_questions(
            duplicates, ctx.store, ctx.index, ctx.config.related_top_n,
            exclude={question.id},
        )
    timings["related"] = (time.perf_counter() - t0) * 1000.0

    return DuplicateReport(
        input_id=question.id,
        normalized_text=question.norm_text,
        tag=question.tag,
        exact_duplicates=sorted(exact),
        near_duplicates=sorted(retained),
        related=related,
        trace=trace,
        timings=timings,
    )


def bulk_check(
    inputs: Sequence[str],
    store: QuestionStore,
    providers: ProviderSet | None = None,
    config: PipelineConfig | None = None,
    *,
    context: CheckContext | None = None,
) -> list[BulkItem]:
    """Check each input against the store; failures stay per-item.

    Batch items are compared to the store only, not to each other, so the
    result for each row is independent of the rest of the batch.
    """
    ctx = context if context is not None else prepare(store, providers, config)
    items: list[BulkItem] = []
    for row, text in enumerate(inputs):
        try:
            items.append(BulkItem(row=row, report=check(text, store, context=ctx)))
        except QdupError as exc:
            items.append(BulkItem(row=row, error=str(exc)))
    return items
