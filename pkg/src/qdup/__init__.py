"""Near-duplicate and related-question detection for question repositories.

The package exposes three layers over the same engine:

- a library (:func:`check`, :class:`QuestionStore`, :class:`DuplicateDetector`),
- a ``qdup`` command line (``index build``, ``check``, ``bulk``, ``eval``, ``serve``),
- an HTTP service (:func:`qdup.service.create_app`).
"""

from .ann import AnnIndex, AnnMode, build as build_index, load_index, query, save_index
from .corpus import (
    Entity,
    PipelineConfig,
    ProviderSet,
    Question,
    QuestionStore,
    TaxonomyTag,
    annotate,
    build_store,
    ingest_corpus,
    load_config,
    load_store,
    parse_records,
    save_store,
)
from .embed import BaselineEmbedder, CachedEmbedder, cosine, load_embeddings, save_embeddings
from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    EmbeddingFormatError,
    IncompatibleFormatError,
    IngestError,
    InvalidInputError,
    MissingArtifactError,
    MissingGoldLabelError,
    QdupError,
    SidecarMismatchError,
    UnknownSubjectError,
)
from .estimator import DuplicateDetector
from .filters import Action, Stage, StageDecision, jaccard, negation_signature
from .keyphrase import Keyphrase, extract_candidates, keyphrase_share, rank_keyphrases
from .normalize import normalize_text, preprocess, tokenize
from .pipeline import (
    BulkItem,
    CheckContext,
    DuplicateReport,
    bulk_check,
    check,
    prepare,
    related_questions,
)
from .taxonomy import CentroidTagger, baseline_tag, candidate_set

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AnnIndex",
    "AnnMode",
    "BaselineEmbedder",
    "BulkItem",
    "CachedEmbedder",
    "CentroidTagger",
    "CheckContext",
    "DimensionMismatchError",
    "DuplicateDetector",
    "DuplicateIdError",
    "DuplicateReport",
    "EmbeddingFormatError",
    "Entity",
    "IncompatibleFormatError",
    "IngestError",
    "InvalidInputError",
    "Keyphrase",
    "MissingArtifactError",
    "MissingGoldLabelError",
    "PipelineConfig",
    "ProviderSet",
    "QdupError",
    "Question",
    "QuestionStore",
    "SidecarMismatchError",
    "Stage",
    "StageDecision",
    "TaxonomyTag",
    "UnknownSubjectError",
    "annotate",
    "baseline_tag",
    "build_index",
    "build_store",
    "bulk_check",
    "candidate_set",
    "check",
    "cosine",
    "extract_candidates",
    "ingest_corpus",
    "jaccard",
    "keyphrase_share",
    "load_config",
    "load_embeddings",
    "load_index",
    "load_store",
    "negation_signature",
    "normalize_text",
    "parse_records",
    "prepare",
    "preprocess",
    "query",
    "rank_keyphrases",
    "related_questions",
    "save_embeddings",
    "save_index",
    "save_store",
    "tokenize",
    "__version__",
]
