"""Domain model, corpus ingestion, annotation providers, and persistence.

A `QuestionStore` holds fully annotated questions partitioned by subject.
Model-backed annotations (tagging, entities, keyphrase candidates, sentence
embeddings) enter through small provider interfaces, each with a
deterministic built-in baseline, so the pipeline runs with zero external
model artifacts; precomputed embeddings and keyphrases can be supplied as
sidecar files instead.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import uuid
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol, Sequence, runtime_checkable

import numpy as np

from .ann import AnnMode
from .embed import (
    BaselineEmbedder,
    CachedEmbedder,
    EmbeddingProvider,
    load_embeddings,
    save_embeddings,
)
from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    IncompatibleFormatError,
    IngestError,
    InvalidInputError,
    MissingArtifactError,
    SidecarMismatchError,
)
from .filters import negation_signature
from .keyphrase import CandidateExtractor, Keyphrase, StopwordExtractor, rank_keyphrases
from .lexicons import DEFAULT_GAZETTEER, DEFAULT_NEGATION_LEXICON, default_symbol_entries
from .normalize import SymbolDictionary, default_symbol_dictionary, normalize_text

logger = logging.getLogger(__name__)

STORE_FORMAT_VERSION = 1
STORE_FILE = "store.json"
EMBEDDINGS_FILE = "embeddings.qde"
INDEX_FILE = "index.qdi"

ENTITY_LABELS = frozenset({"PERSON", "ORG", "LOC", "MISC"})

FALLBACK_SUBJECT = "general"


@dataclass(frozen=True, slots=True)
class TaxonomyTag:
    """Subject -> chapter -> topic label; deeper levels require shallower ones."""

    subject: str
    chapter: str | None = None
    topic: str | None = None

    def __post_init__(self):
        if not self.subject:
            raise ValueError("taxonomy subject must be non-empty")
        if self.topic is not None and self.chapter is None:
            raise ValueError("taxonomy topic requires a chapter")


@dataclass(frozen=True, slots=True)
class Entity:
    surface: str
    label: str

    def __post_init__(self):
        if not self.surface:
            raise ValueError("entity surface must be non-empty")
        if self.label not in ENTITY_LABELS:
            raise ValueError(f"unknown entity label {self.label!r}")


@dataclass
class PipelineConfig:
    """Tunable knobs for the whole pipeline; defaults follow the references
    built into each stage (0.4 Jaccard cut, 0.7 keyphrase share, top-3
    related questions)."""

    jaccard_threshold: float = 0.4
    keyphrase_share_threshold: float = 0.7
    keyphrase_top_k: int = 10
    related_top_n: int = 3
    negation_lexicon: frozenset[str] = DEFAULT_NEGATION_LEXICON
    symbol_dictionary: dict[str, str] = field(default_factory=default_symbol_entries)
    embedding_dim: int = 256
    ann_mode: AnnMode = AnnMode.EXACT
    ann_partitions: int | None = None
    ann_probe: int | None = None
    seed: int = 13

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for name in ("jaccard_threshold", "keyphrase_share_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0,1], got {value}")
        if self.keyphrase_top_k < 1:
            raise ValueError(f"keyphrase_top_k must be >= 1, got {self.keyphrase_top_k}")
        if self.related_top_n < 1:
            raise ValueError(f"related_top_n must be >= 1, got {self.related_top_n}")
        if not self.negation_lexicon:
            raise ValueError("negation_lexicon must be non-empty")
        if self.embedding_dim < 16 or self.embedding_dim & (self.embedding_dim - 1):
            raise ValueError(
                f"embedding_dim must be a power of two >= 16, got {self.embedding_dim}"
            )
        if not isinstance(self.ann_mode, AnnMode):
            self.ann_mode = AnnMode(self.ann_mode)
        self.negation_lexicon = frozenset(self.negation_lexicon)

    @classmethod
    def from_dict(cls, data: Mapping) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidInputError(f"unknown config fields: {sorted(unknown)}")
        kwargs = dict(data)
        if "negation_lexicon" in kwargs:
            kwargs["negation_lexicon"] = frozenset(kwargs["negation_lexicon"])
        if "ann_mode" in kwargs:
            kwargs["ann_mode"] = AnnMode(kwargs["ann_mode"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "jaccard_threshold": self.jaccard_threshold,
            "keyphrase_share_threshold": self.keyphrase_share_threshold,
            "keyphrase_top_k": self.keyphrase_top_k,
            "related_top_n": self.related_top_n,
            "negation_lexicon": sorted(self.negation_lexicon),
            "symbol_dictionary": dict(sorted(self.symbol_dictionary.items())),
            "embedding_dim": self.embedding_dim,
            "ann_mode": self.ann_mode.value,
            "ann_partitions": self.ann_partitions,
            "ann_probe": self.ann_probe,
            "seed": self.seed,
        }


def load_config(path: str) -> PipelineConfig:
    """Read a JSON config file mirroring the PipelineConfig fields."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must contain a JSON object")
    return PipelineConfig.from_dict(data)


@runtime_checkable
class TaggerProvider(Protocol):
    """Assigns a taxonomy tag to a normalized question."""

    name: str
    deterministic: bool

    def tag(self, norm_tokens: Sequence[str]) -> TaxonomyTag: ...


@runtime_checkable
class EntityProvider(Protocol):
    name: str

    def entities(self, norm_tokens: Sequence[str]) -> frozenset[Entity]: ...


class GazetteerNER:
    """Dictionary NER: longest-match scan of known surfaces over the tokens."""

    def __init__(self, gazetteer: Mapping[str, str] | None = None):
        table = dict(DEFAULT_GAZETTEER if gazetteer is None else gazetteer)
        for surface, label in table.items():
            if label not in ENTITY_LABELS:
                raise ValueError(f"unknown entity label {label!r} for {surface!r}")
        self.table = table
        self.max_words = max((s.count(" ") + 1 for s in table), default=1)
        self.name = "gazetteer"

    def entities(self, norm_tokens: Sequence[str]) -> frozenset[Entity]:
        found: set[Entity] = set()
        i = 0
        n = len(norm_tokens)
        while i < n:
            for span in range(min(self.max_words, n - i), 0, -1):
                surface = " ".join(norm_tokens[i : i + span])
                label = self.table.get(surface)
                if label is not None:
                    found.add(Entity(surface, label))
                    i += span
                    break
            else:
                i += 1
        return frozenset(found)


@dataclass
class ProviderSet:
    """The injectable model-backed pieces: sentence embedder, NER, candidate
    extractor, and (optionally) a taxonomy tagger. When `tagger` is None the
    pipeline tags against the store's own per-subject embedding centroids."""

    embedder: EmbeddingProvider
    ner: EntityProvider
    extractor: CandidateExtractor
    tagger: TaggerProvider | None = None

    @classmethod
    def default(cls, config: PipelineConfig | None = None) -> "ProviderSet":
        dim = config.embedding_dim if config is not None else 256
        return cls(
            embedder=CachedEmbedder(BaselineEmbedder(dim)),
            ner=GazetteerNER(),
            extractor=StopwordExtractor(),
        )


@dataclass(eq=False)
class Question:
    id: str
    raw_text: str
    norm_tokens: list[str]
    tag: TaxonomyTag
    entities: frozenset[Entity]
    keyphrases: list[Keyphrase]
    embedding: np.ndarray | None
    negation_cues: frozenset[str]

    @property
    def norm_text(self) -> str:
        return " ".join(self.norm_tokens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Question):
            return NotImplemented
        if (self.id, self.raw_text, self.norm_tokens, self.tag) != (
            other.id, other.raw_text, other.norm_tokens, other.tag
        ):
            return False
        if (self.entities, self.keyphrases, self.negation_cues) != (
            other.entities, other.keyphrases, other.negation_cues
        ):
            return False
        if (self.embedding is None) != (other.embedding is None):
            return False
        if self.embedding is None:
            return True
        return (
            self.embedding.dtype == other.embedding.dtype
            and np.array_equal(self.embedding, other.embedding)
        )


def resolve_symbol_dictionary(entries: Mapping[str, str]) -> SymbolDictionary:
    default = default_symbol_dictionary()
    if entries == default.entries:
        return default
    return SymbolDictionary(dict(entries))


def new_question_id() -> str:
    return uuid.uuid4().hex


def annotate(
    question_text: str,
    config: PipelineConfig,
    providers: ProviderSet,
    *,
    question_id: str | None = None,
    tag: TaxonomyTag | None = None,
    symbols: SymbolDictionary | None = None,
    embedding: np.ndarray | None = None,
    keyphrases: list[Keyphrase] | None = None,
) -> Question:
    """Build a fully populated Question from raw text.

    Deterministic apart from the generated id. `embedding` and `keyphrases`
    override the providers when precomputed values exist (sidecars); the
    stored embedding is unit-normalized float32 either way.
    """
    if not question_text.strip():
        raise InvalidInputError("question text is empty")
    if symbols is None:
        symbols = resolve_symbol_dictionary(config.symbol_dictionary)
    norm_tokens = normalize_text(question_text, symbols)
    if not norm_tokens:
        raise InvalidInputError("question text has no tokens after normalization")
    norm_text = " ".join(norm_tokens)

    provider_vec = providers.embedder.embed(norm_text)
    if embedding is None:
        stored = provider_vec
    else:
        vec = np.asarray(embedding, dtype=np.float64)
        norm = np.linalg.norm(vec)
        stored = (vec / norm if norm > 0.0 else vec).astype(np.float32)

    if keyphrases is None:
        candidates = providers.extractor.extract(norm_tokens)
        # Ranking always runs in the provider's embedding space; a sidecar
        # vector of a different dimension only replaces the stored embedding.
        keyphrases = rank_keyphrases(
            provider_vec, candidates, providers.embedder, config.keyphrase_top_k
        )

    if tag is None:
        if providers.tagger is not None:
            tag = providers.tagger.tag(norm_tokens)
        else:
            tag = TaxonomyTag(FALLBACK_SUBJECT)

    return Question(
        id=question_id if question_id is not None else new_question_id(),
        raw_text=question_text,
        norm_tokens=norm_tokens,
        tag=tag,
        entities=providers.ner.entities(norm_tokens),
        keyphrases=list(keyphrases),
        embedding=stored,
        negation_cues=negation_signature(norm_tokens, config.negation_lexicon),
    )


def nearest_subject(vec: np.ndarray, centroids: Mapping[str, np.ndarray]) -> str:
    """Subject with the max-cosine centroid; ties go to the smaller name."""
    if not centroids:
        raise ValueError("no subject centroids available")
    v = np.asarray(vec, dtype=np.float64)
    norm = np.linalg.norm(v)
    if norm > 0.0:
        v = v / norm
    best_subject = None
    best_score = -np.inf
    for subject in sorted(centroids):
        c = np.asarray(centroids[subject], dtype=np.float64)
        cnorm = np.linalg.norm(c)
        score = float(v @ c / cnorm) if cnorm > 0.0 else 0.0
        if score > best_score:
            best_subject = subject
            best_score = score
    return best_subject


@dataclass(eq=False)
class QuestionStore:
    questions: dict[str, Question]
    subject_index: dict[str, set[str]]
    config: PipelineConfig
    embedding_dim: int

    @classmethod
    def empty(cls, config: PipelineConfig, embedding_dim: int | None = None) -> "QuestionStore":
        dim = embedding_dim if embedding_dim is not None else config.embedding_dim
        return cls(questions={}, subject_index={}, config=config, embedding_dim=dim)

    def __len__(self) -> int:
        return len(self.questions)

    def __contains__(self, qid: str) -> bool:
        return qid in self.questions

    def add(self, question: Question) -> None:
        if question.id in self.questions:
            raise DuplicateIdError(question.id)
        if question.embedding is not None and question.embedding.shape != (self.embedding_dim,):
            raise DimensionMismatchError(
                f"question {question.id!r} embedding has shape "
                f"{question.embedding.shape}, store dimension is {self.embedding_dim}"
            )
        self.questions[question.id] = question
        self.subject_index.setdefault(question.tag.subject, set()).add(question.id)

    def subjects(self) -> list[str]:
        return sorted(self.subject_index)

    def embeddings(self) -> dict[str, np.ndarray]:
        return {
            qid: q.embedding for qid, q in self.questions.items() if q.embedding is not None
        }

    def subject_centroids(self) -> dict[str, np.ndarray]:
        """Unit mean embedding per subject, for centroid tagging."""
        out: dict[str, np.ndarray] = {}
        for subject, ids in self.subject_index.items():
            vecs = [
                self.questions[qid].embedding
                for qid in ids
                if self.questions[qid].embedding is not None
            ]
            if not vecs:
                continue
            mean = np.mean(np.asarray(vecs, dtype=np.float64), axis=0)
            norm = np.linalg.norm(mean)
            out[subject] = mean / norm if norm > 0.0 else mean
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuestionStore):
            return NotImplemented
        return (
            self.questions == other.questions
            and self.subject_index == other.subject_index
            and self.config == other.config
            and self.embedding_dim == other.embedding_dim
        )


@dataclass(slots=True)
class _RawRecord:
    line: int
    id: str
    text: str
    subject: str | None
    chapter: str | None
    topic: str | None


def _require_str(value, line: int, fieldname: str, *, optional: bool = False) -> str | None:
    if value is None or (optional and value == ""):
        if optional:
            return None
        raise IngestError(f"missing required field {fieldname!r}", line=line, field=fieldname)
    if not isinstance(value, str):
        raise IngestError(
            f"field {fieldname!r} must be a string, got {type(value).__name__}",
            line=line, field=fieldname,
        )
    if not optional and not value.strip():
        raise IngestError(f"field {fieldname!r} is empty", line=line, field=fieldname)
    return value


def _parse_jsonl(path: str) -> list[_RawRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"invalid JSON: {exc.msg}", line=line_no) from None
            if not isinstance(obj, dict):
                raise IngestError("record is not a JSON object", line=line_no)
            records.append(_record_from_mapping(obj, line_no))
    return records


def _parse_csv(path: str) -> list[_RawRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        for required in ("id", "text"):
            if required not in reader.fieldnames:
                raise IngestError(
                    f"missing required column {required!r}", line=1, field=required
                )
        for row in reader:
            line_no = reader.line_num
            row.pop(None, None)
            records.append(_record_from_mapping(row, line_no, empty_is_missing=True))
    return records


def _record_from_mapping(obj: Mapping, line_no: int, *, empty_is_missing: bool = False) -> _RawRecord:
    def clean(name, optional):
        value = obj.get(name)
        if empty_is_missing and value == "" and not optional:
            value = None
        return _require_str(value, line_no, name, optional=optional)

    record = _RawRecord(
        line=line_no,
        id=clean("id", optional=False),
        text=clean("text", optional=False),
        subject=clean("subject", optional=True),
        chapter=clean("chapter", optional=True),
        topic=clean("topic", optional=True),
    )
    if record.subject is None and (record.chapter or record.topic):
        raise IngestError(
            "chapter/topic given without a subject", line=line_no, field="subject"
        )
    return record


def _tag_from_record(record: _RawRecord) -> TaxonomyTag | None:
    if record.subject is None:
        return None
    try:
        return TaxonomyTag(record.subject, record.chapter, record.topic)
    except ValueError as exc:
        raise IngestError(str(exc), line=record.line, field="topic") from None


def parse_records(path: str, fmt: str | None = None) -> list[_RawRecord]:
    """Parse a corpus file into raw records without annotating them.

    `fmt` is "jsonl" or "csv"; inferred from the extension when omitted.
    """
    if fmt is None:
        fmt = os.path.splitext(path)[1].lstrip(".").lower() or "jsonl"
    fmt = fmt.lower()
    if fmt == "jsonl":
        return _parse_jsonl(path)
    if fmt == "csv":
        return _parse_csv(path)
    raise IngestError(f"unsupported corpus format {fmt!r} (expected jsonl or csv)")


def build_store(
    records: Sequence[_RawRecord] | Sequence[Mapping],
    config: PipelineConfig | None = None,
    providers: ProviderSet | None = None,
    embeddings: Mapping[str, np.ndarray] | None = None,
    keyphrases: Mapping[str, list[Keyphrase]] | None = None,
) -> QuestionStore:
    """Annotate and index already-parsed records into a QuestionStore.

    Records carrying a `subject` keep it; unlabeled records are tagged by the
    provider tagger when configured, otherwise against the centroids of the
    labeled part of the corpus, and fall back to a single shared subject when
    nothing is labeled.
    """
    if config is None:
        config = PipelineConfig()
    if providers is None:
        providers = ProviderSet.default(config)
    records = [
        r if isinstance(r, _RawRecord) else _record_from_mapping(r, line_no=i + 1)
        for i, r in enumerate(records)
    ]

    seen: dict[str, int] = {}
    for record in records:
        if record.id in seen:
            raise DuplicateIdError(record.id, line=record.line)
        seen[record.id] = record.line

    dim = providers.embedder.dimension
    if embeddings is not None:
        corpus_ids = set(seen)
        missing = corpus_ids - set(embeddings)
        if missing:
            raise SidecarMismatchError(
                f"embedding sidecar is missing {len(missing)} corpus id(s), "
                f"e.g. {sorted(missing)[:3]}"
            )
        unknown = set(embeddings) - corpus_ids
        if unknown:
            raise SidecarMismatchError(
                f"embedding sidecar has {len(unknown)} unknown id(s), "
                f"e.g. {sorted(unknown)[:3]}"
            )
        dims = {np.asarray(v).shape[-1] for v in embeddings.values()}
        if len(dims) != 1:
            raise SidecarMismatchError(f"embedding sidecar mixes dimensions {sorted(dims)}")
        dim = dims.pop()
    if keyphrases is not None:
        unknown = set(keyphrases) - set(seen)
        if unknown:
            raise SidecarMismatchError(
                f"keyphrase sidecar has {len(unknown)} unknown id(s), "
                f"e.g. {sorted(unknown)[:3]}"
            )

    symbols = resolve_symbol_dictionary(config.symbol_dictionary)
    store = QuestionStore.empty(config, dim)
    pending: list[Question] = []
    for record in records:
        try:
            question = annotate(
                record.text,
                config,
                providers,
                question_id=record.id,
                tag=_tag_from_record(record),
                symbols=symbols,
                embedding=None if embeddings is None else embeddings[record.id],
                keyphrases=None if keyphrases is None else keyphrases.get(record.id),
            )
        except InvalidInputError as exc:
            raise IngestError(str(exc), line=record.line, field="text") from None
        if record.subject is None and providers.tagger is None:
            pending.append(question)
        else:
            store.add(question)

    if pending:
        centroids = store.subject_centroids()
        for question in pending:
            if centroids and question.embedding is not None:
                question.tag = TaxonomyTag(nearest_subject(question.embedding, centroids))
            store.add(question)
    return store


def ingest_corpus(
    path: str,
    fmt: str | None = None,
    config: PipelineConfig | None = None,
    providers: ProviderSet | None = None,
    embeddings: Mapping[str, np.ndarray] | None = None,
    keyphrases: Mapping[str, list[Keyphrase]] | None = None,
) -> QuestionStore:
    """Parse, annotate, and index a corpus file; see :func:`build_store`."""
    store = build_store(
        parse_records(path, fmt), config, providers, embeddings, keyphrases
    )
    logger.info(
        "ingested %d questions across %d subjects from %s",
        len(store), len(store.subject_index), path,
    )
    return store


def load_keyphrase_sidecar(path: str) -> dict[str, list[Keyphrase]]:
    """Read a precomputed-keyphrase JSONL sidecar: {id, keyphrases:[{text,score}]}."""
    out: dict[str, list[Keyphrase]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"invalid JSON: {exc.msg}", line=line_no) from None
            qid = _require_str(obj.get("id"), line_no, "id")
            raw = obj.get("keyphrases")
            if not isinstance(raw, list):
                raise IngestError("missing keyphrases array", line=line_no, field="keyphrases")
            phrases = []
            last = None
            for item in raw:
                if not isinstance(item, dict) or "text" not in item or "score" not in item:
                    raise IngestError(
                        "keyphrase entries need text and score", line=line_no, field="keyphrases"
                    )
                text = str(item["text"])
                if not text.strip():
                    raise IngestError(
                        "keyphrase text must be non-empty", line=line_no, field="keyphrases"
                    )
                score = float(item["score"])
                if not -1.0 <= score <= 1.0:
                    raise IngestError(
                        f"keyphrase score {score} outside [-1,1]", line=line_no, field="keyphrases"
                    )
                if last is not None and score > last:
                    raise IngestError(
                        "keyphrase scores must be non-increasing", line=line_no, field="keyphrases"
                    )
                last = score
                phrases.append(Keyphrase(text=text, score=score))
            if qid in out:
                raise DuplicateIdError(qid, line=line_no)
            out[qid] = phrases
    return out


def _question_to_json(q: Question) -> dict:
    return {
        "id": q.id,
        "raw_text": q.raw_text,
        "norm_tokens": q.norm_tokens,
        "tag": {"subject": q.tag.subject, "chapter": q.tag.chapter, "topic": q.tag.topic},
        "entities": sorted([e.surface, e.label] for e in q.entities),
        "keyphrases": [{"text": p.text, "score": p.score} for p in q.keyphrases],
        "negation_cues": sorted(q.negation_cues),
        "has_embedding": q.embedding is not None,
    }


def _question_from_json(obj: dict, embedding: np.ndarray | None) -> Question:
    tag = obj["tag"]
    return Question(
        id=obj["id"],
        raw_text=obj["raw_text"],
        norm_tokens=list(obj["norm_tokens"]),
        tag=TaxonomyTag(tag["subject"], tag.get("chapter"), tag.get("topic")),
        entities=frozenset(Entity(s, l) for s, l in obj["entities"]),
        keyphrases=[Keyphrase(p["text"], p["score"]) for p in obj["keyphrases"]],
        embedding=embedding,
        negation_cues=frozenset(obj["negation_cues"]),
    )


def save_store(store: QuestionStore, dirpath: str) -> None:
    """Persist the store: JSON metadata plus the binary embedding file."""
    os.makedirs(dirpath, exist_ok=True)
    payload = {
        "format_version": STORE_FORMAT_VERSION,
        "embedding_dim": store.embedding_dim,
        "config": store.config.to_dict(),
        "questions": [
            _question_to_json(store.questions[qid]) for qid in sorted(store.questions)
        ],
    }
    with open(os.path.join(dirpath, STORE_FILE), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=1)
    vectors = store.embeddings()
    emb_path = os.path.join(dirpath, EMBEDDINGS_FILE)
    if vectors:
        save_embeddings(vectors, emb_path)
    elif os.path.exists(emb_path):
        os.remove(emb_path)


def load_store(dirpath: str) -> QuestionStore:
    """Load a persisted store; inverse of :func:`save_store`, bit-exact."""
    store_path = os.path.join(dirpath, STORE_FILE)
    if not os.path.exists(store_path):
        raise MissingArtifactError(f"no {STORE_FILE} in {dirpath}")
    with open(store_path, encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("format_version")
    if version != STORE_FORMAT_VERSION:
        raise IncompatibleFormatError(
            f"store format version {version}, expected {STORE_FORMAT_VERSION}"
        )
    config = PipelineConfig.from_dict(payload["config"])
    store = QuestionStore.empty(config, payload["embedding_dim"])
    emb_path = os.path.join(dirpath, EMBEDDINGS_FILE)
    vectors: dict[str, np.ndarray] = {}
    if os.path.exists(emb_path):
        vectors = load_embeddings(emb_path)
    for obj in payload["questions"]:
        embedding = vectors.get(obj["id"])
        if obj["has_embedding"] and embedding is None:
            raise MissingArtifactError(
                f"question {obj['id']!r} expects an embedding but {EMBEDDINGS_FILE} lacks it"
            )
        store.add(_question_from_json(obj, embedding))
    return store
