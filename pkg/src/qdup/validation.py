"""Input coercion and validation helpers for the public entry points."""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from .errors import InvalidInputError


def require_text(value: Any, name: str = "text") -> str:
    """Assert a non-empty string; InvalidInputError otherwise."""
    if not isinstance(value, str):
        raise InvalidInputError(f"{name} must be a string, got {type(value).__name__}")
    if not value.strip():
        raise InvalidInputError(f"{name} must be non-empty")
    return value


def as_text_list(X: Iterable) -> list[str]:
    """Coerce an iterable of question texts to a list, rejecting a bare string."""
    if isinstance(X, str):
        raise InvalidInputError(
            "expected an iterable of texts, got a single string; wrap it in a list"
        )
    texts = list(X)
    for i, text in enumerate(texts):
        if not isinstance(text, str):
            raise InvalidInputError(
                f"item {i} must be a string, got {type(text).__name__}"
            )
    return texts


def as_corpus_records(X: Iterable) -> list[dict]:
    """Coerce fit() inputs to corpus record dicts.

    Accepts mappings with id/text (plus optional subject/chapter/topic),
    (id, text) pairs, or bare strings (ids are generated positionally).
    """
    if isinstance(X, (str, Mapping)):
        raise InvalidInputError("expected an iterable of records")
    records: list[dict] = []
    for i, item in enumerate(X):
        if isinstance(item, Mapping):
            records.append(dict(item))
        elif isinstance(item, str):
            records.append({"id": f"q{i:06d}", "text": item})
        elif isinstance(item, tuple) and len(item) == 2:
            records.append({"id": str(item[0]), "text": item[1]})
        else:
            raise InvalidInputError(
                f"record {i} must be a mapping, an (id, text) pair, or a string"
            )
    return records
