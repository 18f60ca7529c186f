"""Embedding providers, cosine similarity, and the binary embedding file.

The baseline embedder is a deterministic signed feature-hashing model so the
whole pipeline runs without any learned weights; real sentence-encoder
vectors can be supplied instead through the precomputed embedding file.
"""

from __future__ import annotations

import struct
from collections import Counter
from functools import lru_cache
from typing import Iterable, Mapping, Protocol, runtime_checkable

import numpy as np

from .errors import DimensionMismatchError, EmbeddingFormatError

MAGIC = b"QDUPEMB1"
FORMAT_VERSION = 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


@runtime_checkable
class EmbeddingProvider(Protocol):
    """Anything that maps text to a fixed-dimension unit vector."""

    name: str
    dimension: int

    def embed(self, text: str) -> np.ndarray: ...


@lru_cache(maxsize=1_000_000)
def fnv1a64(feature: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 bytes; pinned for cross-platform tests."""
    h = _FNV_OFFSET
    for byte in feature.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class BaselineEmbedder:
    """Signed feature hashing over token unigrams, bigrams, and char trigrams.

    Bucket is hash mod D, sign comes from hash bit 63, weights are raw term
    frequencies, and the result is L2-normalized. Empty text maps to the zero
    vector. Deterministic by construction; safe for concurrent use.
    """

    def __init__(self, dimension: int = 256):
        if dimension < 16 or dimension & (dimension - 1) != 0:
            raise ValueError(f"dimension must be a power of two >= 16, got {dimension}")
        self.dimension = dimension
        self.name = f"hashing-{dimension}"

    def _features(self, text: str) -> Iterable[str]:
        tokens = text.split()
        for tok in tokens:
            yield "u:" + tok
        for a, b in zip(tokens, tokens[1:]):
            yield "b:" + a + " " + b
        joined = " ".join(tokens)
        for i in range(len(joined) - 2):
            yield "c:" + joined[i : i + 3]

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dimension, dtype=np.float64)
        counts = Counter(self._features(text))
        for feature, count in counts.items():
            h = fnv1a64(feature)
            sign = -1.0 if h >> 63 else 1.0
            vec[h % self.dimension] += sign * count
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            return np.zeros(self.dimension, dtype=np.float32)
        # Normalize in float64, then fix float32 as the canonical storage
        # precision so file round-trips are bit-exact.
        return (vec / norm).astype(np.float32)


class CachedEmbedder:
    """LRU-caching wrapper around any provider.

    Corpus builds embed the same short phrases over and over; caching them
    keeps large-store ingestion tractable without changing any output.
    """

    def __init__(self, inner: EmbeddingProvider, maxsize: int = 200_000):
        self.inner = inner
        self.name = inner.name
        self.dimension = inner.dimension
        self._embed = lru_cache(maxsize=maxsize)(inner.embed)

    def embed(self, text: str) -> np.ndarray:
        return self._embed(text)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity, computed in float64; 0.0 if either vector is zero."""
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"cosine between vectors of shape {a.shape} and {b.shape}"
        )
    a64 = np.asarray(a, dtype=np.float64)
    b64 = np.asarray(b, dtype=np.float64)
    na = float(np.linalg.norm(a64))
    nb = float(np.linalg.norm(b64))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a64, b64) / (na * nb))


def _encode_record(qid: str, vector: np.ndarray, dim: int) -> bytes:
    id_bytes = qid.encode("utf-8")
    if len(id_bytes) > 0xFFFF:
        raise ValueError(f"id too long to serialize: {qid[:40]!r}...")
    arr = np.ascontiguousarray(vector, dtype="<f4")
    if arr.shape != (dim,):
        raise DimensionMismatchError(
            f"vector for {qid!r} has shape {arr.shape}, expected ({dim},)"
        )
    return struct.pack("<H", len(id_bytes)) + id_bytes + arr.tobytes()


def save_embeddings(vectors: Mapping[str, np.ndarray], path: str) -> None:
    """Write ``vectors`` in the versioned binary format (little-endian)."""
    if not vectors:
        raise ValueError("refusing to save an empty embedding map")
    dims = {np.asarray(v).shape[-1] for v in vectors.values()}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed embedding dimensions: {sorted(dims)}")
    dim = dims.pop()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HIQ", FORMAT_VERSION, dim, len(vectors)))
        for qid, vec in vectors.items():
            fh.write(_encode_record(qid, vec, dim))


def load_embeddings(path: str) -> dict[str, np.ndarray]:
    """Read an embedding file, validating structure and vector finiteness."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
        raise EmbeddingFormatError(
            f"bad magic, expected {MAGIC!r}", offset=0
        )
    offset = len(MAGIC)
    if len(data) < offset + 14:
        raise EmbeddingFormatError("truncated header", offset=len(data))
    version, dim, count = struct.unpack_from("<HIQ", data, offset)
    if version != FORMAT_VERSION:
        raise EmbeddingFormatError(
            f"unsupported format version {version}", offset=offset
        )
    offset += 14
    if dim == 0:
        raise EmbeddingFormatError("dimension is zero", offset=len(MAGIC) + 2)
    out: dict[str, np.ndarray] = {}
    vec_bytes = 4 * dim
    for _ in range(count):
        if offset + 2 > len(data):
            raise EmbeddingFormatError("truncated record header", offset=offset)
        (id_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        if offset + id_len + vec_bytes > len(data):
            raise EmbeddingFormatError("truncated record", offset=offset)
        try:
            qid = data[offset : offset + id_len].decode("utf-8")
        except UnicodeDecodeError:
            raise EmbeddingFormatError("id is not valid UTF-8", offset=offset) from None
        offset += id_len
        vec = np.frombuffer(data, dtype="<f4", count=dim, offset=offset).copy()
        if not np.all(np.isfinite(vec)):
            raise EmbeddingFormatError(
                f"non-finite component in vector for id {qid!r}", offset=offset
            )
        offset += vec_bytes
        if qid in out:
            raise EmbeddingFormatError(f"duplicate id {qid!r}", offset=offset)
        out[qid] = vec
    if offset != len(data):
        raise EmbeddingFormatError("trailing bytes after last record", offset=offset)
    return out
