"""Subject tagging and subject-partitioned candidate retrieval.

Tagging is nearest-centroid over embeddings: centroids come either from a
seed-exemplar file or from the store's own labeled questions. Candidate
retrieval returns the stored questions sharing the input's subject.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

import numpy as np

from .corpus import QuestionStore, TaxonomyTag, nearest_subject
from .embed import EmbeddingProvider
from .errors import InvalidInputError, UnknownSubjectError
from .normalize import normalize_text


def _seed_centroids(
    seed_labels: Mapping[str, Sequence[Sequence[str]]], embedder: EmbeddingProvider
) -> dict[str, np.ndarray]:
    if not seed_labels:
        raise InvalidInputError("seed_labels must be non-empty")
    centroids: dict[str, np.ndarray] = {}
    for subject, exemplars in seed_labels.items():
        if not exemplars:
            raise InvalidInputError(f"subject {subject!r} has no exemplars")
        vecs = np.asarray(
            [embedder.embed(" ".join(tokens)) for tokens in exemplars], dtype=np.float64
        )
        mean = vecs.mean(axis=0)
        norm = np.linalg.norm(mean)
        centroids[subject] = mean / norm if norm > 0.0 else mean
    return centroids


def baseline_tag(
    norm_tokens: Sequence[str],
    seed_labels: Mapping[str, Sequence[Sequence[str]]],
    embedder: EmbeddingProvider,
) -> TaxonomyTag:
    """Tag by max-cosine exemplar centroid; ties go to the smaller subject name."""
    if not norm_tokens:
        raise UnknownSubjectError("cannot tag an empty token list")
    centroids = _seed_centroids(seed_labels, embedder)
    vec = embedder.embed(" ".join(norm_tokens))
    return TaxonomyTag(nearest_subject(vec, centroids))


class CentroidTagger:
    """Tagger with a fixed label set derived from seed exemplars."""

    def __init__(
        self,
        seed_labels: Mapping[str, Sequence[Sequence[str]]],
        embedder: EmbeddingProvider,
    ):
        self._centroids = _seed_centroids(seed_labels, embedder)
        self._embedder = embedder
        self.name = "centroid-seeds"
        self.deterministic = True

    @classmethod
    def from_file(cls, path: str, embedder: EmbeddingProvider) -> "CentroidTagger":
        """Load a seed-exemplar file: JSON map subject -> array of strings."""
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict) or not all(
            isinstance(v, list) and all(isinstance(s, str) for s in v) for v in data.values()
        ):
            raise InvalidInputError(
                f"{path}: expected a JSON object mapping subject to strings"
            )
        seed_labels = {
            subject: [normalize_text(s) for s in exemplars]
            for subject, exemplars in data.items()
        }
        return cls(seed_labels, embedder)

    def subjects(self) -> list[str]:
        return sorted(self._centroids)

    def tag(self, norm_tokens: Sequence[str]) -> TaxonomyTag:
        if not norm_tokens:
            raise UnknownSubjectError("cannot tag an empty token list")
        vec = self._embedder.embed(" ".join(norm_tokens))
        return TaxonomyTag(nearest_subject(vec, self._centroids))


class StoreCentroidTagger:
    """Tagger whose label set is the store's own subjects.

    A question whose normalization matches a stored one embeds identically,
    so it always lands in the same subject partition as its stored twin.
    """

    def __init__(self, store: QuestionStore, embedder: EmbeddingProvider):
        self._centroids = store.subject_centroids()
        if not self._centroids:
            raise UnknownSubjectError("store has no embedded questions to tag against")
        self._embedder = embedder
        self.name = "centroid-store"
        self.deterministic = True

    def tag(self, norm_tokens: Sequence[str]) -> TaxonomyTag:
        if not norm_tokens:
            raise UnknownSubjectError("cannot tag an empty token list")
        vec = self._embedder.embed(" ".join(norm_tokens))
        return TaxonomyTag(nearest_subject(vec, self._centroids))


def candidate_set(
    store: QuestionStore, tag: TaxonomyTag, exclude_id: str | None = None
) -> set[str]:
    """All stored ids sharing the tag's subject, minus the question itself."""
    ids = set(store.subject_index.get(tag.subject, ()))
    ids.discard(exclude_id)
    return ids
