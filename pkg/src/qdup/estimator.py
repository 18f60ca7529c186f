"""Scikit-learn style facade over the duplicate-detection pipeline.

`fit` ingests a corpus, `predict` flags inputs that collide with stored
questions, `transform` exposes the embedding space, and `report` returns the
full per-input reports for anyone needing the elimination traces.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .ann import AnnMode
from .corpus import PipelineConfig, ProviderSet, build_store
from .normalize import normalize_text
from .pipeline import DuplicateReport, check, prepare
from .validation import as_corpus_records, as_text_list


class DuplicateDetector(BaseEstimator):
    """Unsupervised near-duplicate detector over a question corpus.

    Parameters mirror the pipeline configuration; see `PipelineConfig` for
    semantics. The estimator is fully deterministic for a given seed.

    Examples
    --------
    >>> det = DuplicateDetector().fit([
    ...     {"id": "q1", "text": "What is GDP?", "subject": "economics"},
    ...     {"id": "q2", "text": "Define inflation", "subject": "economics"},
    ... ])
    >>> bool(det.predict(["what is gdp"])[0])
    True
    """

    def __init__(
        self,
        jaccard_threshold: float = 0.4,
        keyphrase_share_threshold: float = 0.7,
        keyphrase_top_k: int = 10,
        related_top_n: int = 3,
        embedding_dim: int = 256,
        ann_mode: str = "EXACT",
        seed: int = 13,
    ):
        self.jaccard_threshold = jaccard_threshold
        self.keyphrase_share_threshold = keyphrase_share_threshold
        self.keyphrase_top_k = keyphrase_top_k
        self.related_top_n = related_top_n
        self.embedding_dim = embedding_dim
        self.ann_mode = ann_mode
        self.seed = seed

    def _config(self) -> PipelineConfig:
        return PipelineConfig(
            jaccard_threshold=self.jaccard_threshold,
            keyphrase_share_threshold=self.keyphrase_share_threshold,
            keyphrase_top_k=self.keyphrase_top_k,
            related_top_n=self.related_top_n,
            embedding_dim=self.embedding_dim,
            ann_mode=AnnMode(self.ann_mode),
            seed=self.seed,
        )

    def fit(self, X, y=None):
        """Ingest corpus records: mappings, (id, text) pairs, or texts."""
        records = as_corpus_records(X)
        config = self._config()
        providers = ProviderSet.default(config)
        self.store_ = build_store(records, config, providers)
        self.context_ = prepare(self.store_, providers, config)
        self.n_questions_ = len(self.store_)
        return self

    def report(self, X) -> list[DuplicateReport]:
        """Full duplicate reports, one per input text."""
        check_is_fitted(self, "context_")
        return [
            check(text, self.store_, context=self.context_)
            for text in as_text_list(X)
        ]

    def predict(self, X) -> np.ndarray:
        """Boolean per input: does it duplicate a stored question."""
        return np.array([r.has_duplicates for r in self.report(X)], dtype=bool)

    def transform(self, X) -> np.ndarray:
        """Embed inputs into the detector's vector space, one row per text."""
        check_is_fitted(self, "context_")
        ctx = self.context_
        rows = []
        for text in as_text_list(X):
            tokens = normalize_text(text, ctx.symbols)
            rows.append(ctx.providers.embedder.embed(" ".join(tokens)))
        return np.vstack(rows) if rows else np.zeros((0, ctx.providers.embedder.dimension), dtype=np.float32)
