"""Unsupervised keyphrase extraction: candidate spans ranked by embedding.

Candidates are stopword-delimited contiguous spans (max 4 tokens), scored by
cosine similarity between the phrase embedding and the whole-question
embedding, top-k kept. Candidate generation is behind a small provider
interface so a tagger-based extractor can be swapped in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence, runtime_checkable

import numpy as np

from .embed import EmbeddingProvider, cosine
from .lexicons import DEFAULT_STOPWORDS

MAX_PHRASE_TOKENS = 4


@dataclass(frozen=True, slots=True)
class Keyphrase:
    """A ranked phrase; score is cosine relatedness to the question."""

    text: str
    score: float


@dataclass(frozen=True, slots=True)
class CandidatePhrase:
    """Contiguous token span drawn from a normalized question."""

    tokens: tuple[str, ...]
    start: int

    @property
    def length(self) -> int:
        return len(self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@runtime_checkable
class CandidateExtractor(Protocol):
    name: str

    def extract(self, norm_tokens: Sequence[str]) -> list[CandidatePhrase]: ...


def _is_delimiter(token: str, stopwords: frozenset[str]) -> bool:
    # Stopwords split candidate runs; so do tokens with no alphanumeric
    # content (punctuation remnants from custom symbol dictionaries).
    return token in stopwords or not any(ch.isalnum() for ch in token)


def extract_candidates(
    norm_tokens: Sequence[str], stopwords: frozenset[str]
) -> list[CandidatePhrase]:
    """All sub-spans (length <= 4) of maximal stopword-free runs.

    Deduplicated by phrase text, first occurrence wins; enumeration is by
    start index, then span length.
    """
    out: list[CandidatePhrase] = []
    seen: set[str] = set()
    run_start = None
    n = len(norm_tokens)
    for i in range(n + 1):
        boundary = i == n or _is_delimiter(norm_tokens[i], stopwords)
        if boundary:
            if run_start is not None:
                for s in range(run_start, i):
                    for e in range(s + 1, min(s + MAX_PHRASE_TOKENS, i) + 1):
                        phrase = CandidatePhrase(tuple(norm_tokens[s:e]), start=s)
                        if phrase.text not in seen:
                            seen.add(phrase.text)
                            out.append(phrase)
                run_start = None
        elif run_start is None:
            run_start = i
    return out


class StopwordExtractor:
    """Default candidate provider: stopword-delimited spans."""

    def __init__(self, stopwords: Iterable[str] | None = None):
        self.stopwords = frozenset(stopwords) if stopwords is not None else DEFAULT_STOPWORDS
        self.name = "stopword-spans"

    def extract(self, norm_tokens: Sequence[str]) -> list[CandidatePhrase]:
        return extract_candidates(norm_tokens, self.stopwords)


def rank_keyphrases(
    question_vector: np.ndarray,
    candidates: Sequence[CandidatePhrase],
    embedder: EmbeddingProvider,
    k: int,
) -> list[Keyphrase]:
    """Top-k candidates by cosine to the question vector.

    Ties break toward the earlier start index, then the shorter phrase, so
    ranking is deterministic. Returns fewer than k when candidates run out.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    scored = [
        (cosine(question_vector, embedder.embed(c.text)), c)
        for c in candidates
    ]
    scored.sort(key=lambda item: (-item[0], item[1].start, item[1].length))
    return [Keyphrase(text=c.text, score=score) for score, c in scored[:k]]


def keyphrase_share(
    a: Iterable[Keyphrase | str], b: Iterable[Keyphrase | str]
) -> float:
    """Overlap coefficient |A∩B| / min(|A|,|B|) over phrase texts.

    Returns 0.0 when either side is empty. Symmetric; 1.0 exactly when the
    smaller set is contained in the larger.
    """
    set_a = {p.text if isinstance(p, Keyphrase) else p for p in a}
    set_b = {p.text if isinstance(p, Keyphrase) else p for p in b}
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / min(len(set_a), len(set_b))
