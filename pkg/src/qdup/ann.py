"""Top-k cosine search over corpus embeddings: exact scan or IVF partitions.

The partitioned mode clusters vectors with spherical k-means and probes only
the closest partitions at query time, trading a little recall for a large
scan reduction. Indexes are immutable after build; `with_added` returns an
updated copy so services can swap atomically.
"""

from __future__ import annotations

import logging
import math
import struct
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .embed import MAGIC as _EMB_MAGIC
from .errors import DimensionMismatchError, EmbeddingFormatError

logger = logging.getLogger(__name__)

INDEX_MAGIC = b"QDUPIDX1"
INDEX_VERSION = 1

KMEANS_MAX_ITER = 25


class AnnMode(str, Enum):
    EXACT = "EXACT"
    PARTITIONED = "PARTITIONED"


def default_partitions(n_vectors: int) -> int:
    return max(1, math.ceil(math.sqrt(n_vectors)))


def default_probe(n_partitions: int) -> int:
    return max(1, n_partitions // 10)


def _unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return matrix / norms


def spherical_kmeans(
    matrix: np.ndarray, k: int, seed: int, max_iter: int = KMEANS_MAX_ITER
) -> tuple[np.ndarray, np.ndarray]:
    """Cluster unit rows into k centroids by cosine; returns (centroids, assignment).

    k-means++ seeding, max-cosine assignment, mean-then-renormalize updates.
    Deterministic for a given seed. Centroids are cast to float32 and back so
    the fitted model is exactly what serialization preserves.
    """
    n = matrix.shape[0]
    if k > n:
        raise ValueError(f"cannot build {k} partitions from {n} vectors")
    rng = np.random.default_rng(seed)
    rows = _unit_rows(np.asarray(matrix, dtype=np.float64))

    # k-means++ (cosine distance as 1 - similarity)
    centroids = np.empty((k, rows.shape[1]), dtype=np.float64)
    centroids[0] = rows[rng.integers(n)]
    closest = rows @ centroids[0]
    for j in range(1, k):
        dist = np.clip(1.0 - closest, 0.0, None)
        weights = dist * dist
        total = float(weights.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=weights / total))
        centroids[j] = rows[idx]
        closest = np.maximum(closest, rows @ centroids[j])

    assignment = np.zeros(n, dtype=np.int64)
    for iteration in range(max_iter):
        new_assignment = np.argmax(rows @ centroids.T, axis=1)
        if iteration > 0 and np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment
        for j in range(k):
            members = rows[assignment == j]
            if len(members) == 0:
                continue  # empty cluster keeps its previous centroid
            mean = members.mean(axis=0)
            norm = np.linalg.norm(mean)
            if norm > 0.0:
                centroids[j] = mean / norm
    centroids32 = centroids.astype(np.float32)
    assignment = np.argmax(rows @ centroids32.astype(np.float64).T, axis=1)
    return centroids32, assignment


class AnnIndex:
    """Immutable cosine top-k index; construct via :func:`build` or :func:`load_index`."""

    def __init__(
        self,
        mode: AnnMode,
        ids: Sequence[str],
        vectors32: np.ndarray,
        centroids32: np.ndarray | None = None,
        partition_rows: list[np.ndarray] | None = None,
        n_probe: int = 1,
    ):
        self.mode = mode
        self.ids = list(ids)
        self.vectors32 = vectors32  # canonical storage, row i <-> ids[i], ids ascending
        self._matrix = _unit_rows(vectors32.astype(np.float64)) if len(ids) else np.zeros((0, self.dim))
        self._id_to_row = {qid: i for i, qid in enumerate(self.ids)}
        self.centroids32 = centroids32
        self._centroids = None if centroids32 is None else centroids32.astype(np.float64)
        self.partition_rows = partition_rows
        self.n_probe = n_probe

    @property
    def dim(self) -> int:
        return int(self.vectors32.shape[1]) if self.vectors32.ndim == 2 else 0

    @property
    def n_partitions(self) -> int:
        return 0 if self.partition_rows is None else len(self.partition_rows)

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, qid: str) -> bool:
        return qid in self._id_to_row


def build(
    vectors: Mapping[str, np.ndarray],
    mode: AnnMode = AnnMode.EXACT,
    n_partitions: int | None = None,
    n_probe: int | None = None,
    seed: int = 13,
) -> AnnIndex:
    """Build an index over id -> vector; rows are ordered by ascending id."""
    ids = sorted(vectors)
    if ids:
        dim = int(np.asarray(vectors[ids[0]]).shape[-1])
        matrix32 = np.empty((len(ids), dim), dtype=np.float32)
        for i, qid in enumerate(ids):
            vec = np.asarray(vectors[qid], dtype=np.float32)
            if vec.shape != (dim,):
                raise DimensionMismatchError(
                    f"vector for {qid!r} has shape {vec.shape}, expected ({dim},)"
                )
            matrix32[i] = vec
    else:
        matrix32 = np.zeros((0, 0), dtype=np.float32)

    if mode is AnnMode.EXACT:
        return AnnIndex(mode, ids, matrix32)

    k = n_partitions if n_partitions is not None else default_partitions(len(ids))
    if k < 1:
        raise ValueError(f"n_partitions must be >= 1, got {k}")
    probe = n_probe if n_probe is not None else default_probe(k)
    if not 1 <= probe <= k:
        raise ValueError(f"n_probe must be in [1, {k}], got {probe}")
    centroids32, assignment = spherical_kmeans(matrix32.astype(np.float64), k, seed)
    partition_rows = [
        np.flatnonzero(assignment == j).astype(np.int64) for j in range(k)
    ]
    sizes = [len(rows) for rows in partition_rows]
    logger.info(
        "partitioned index: %d vectors, %d partitions (min %d, max %d members), n_probe=%d",
        len(ids), k, min(sizes), max(sizes), probe,
    )
    return AnnIndex(mode, ids, matrix32, centroids32, partition_rows, probe)


def _top_k_rows(
    index: AnnIndex, rows: np.ndarray, q: np.ndarray, k: int, exclude_rows: set[int]
) -> list[tuple[str, float]]:
    scores = index._matrix[rows] @ q
    if exclude_rows:
        mask = np.fromiter((r in exclude_rows for r in rows), dtype=bool, count=len(rows))
        scores[mask] = -np.inf
    # Stable sort on descending score: equal scores keep row order, and rows
    # are ascending-id by construction, which is exactly the tie rule.
    order = np.argsort(-scores, kind="stable")[: k + len(exclude_rows)]
    out = []
    for pos in order:
        if scores[pos] == -np.inf:
            continue
        out.append((index.ids[rows[pos]], float(scores[pos])))
        if len(out) == k:
            break
    return out


def query(
    index: AnnIndex,
    q: np.ndarray,
    k: int,
    exclude: Iterable[str] = (),
) -> list[tuple[str, float]]:
    """Top-k (id, cosine) pairs, descending score, ties by ascending id."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(index) == 0:
        return []
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (index.dim,):
        raise DimensionMismatchError(
            f"query has shape {q.shape}, index dimension is {index.dim}"
        )
    norm = np.linalg.norm(q)
    if norm > 0.0:
        q = q / norm
    exclude_rows = {index._id_to_row[e] for e in exclude if e in index._id_to_row}

    if index.mode is AnnMode.EXACT:
        rows = np.arange(len(index))
        return _top_k_rows(index, rows, q, k, exclude_rows)

    centroid_scores = index._centroids @ q
    # Stable argsort keeps ascending partition number on centroid ties.
    probe_order = np.argsort(-centroid_scores, kind="stable")[: index.n_probe]
    rows = np.sort(np.concatenate([index.partition_rows[j] for j in probe_order]))
    if len(rows) == 0:
        return []
    return _top_k_rows(index, rows, q, k, exclude_rows)


def measure_recall(
    index: AnnIndex, queries: Sequence[np.ndarray], k: int
) -> float:
    """Mean fraction of the exact top-k that the approximate index returns."""
    if index.mode is not AnnMode.PARTITIONED:
        raise ValueError("recall is measured for PARTITIONED indexes only")
    exact = AnnIndex(AnnMode.EXACT, index.ids, index.vectors32)
    if not queries:
        return 1.0
    total = 0.0
    for q in queries:
        approx_ids = {qid for qid, _ in query(index, q, k)}
        exact_ids = {qid for qid, _ in query(exact, q, k)}
        total += len(approx_ids & exact_ids) / k
    return total / len(queries)


def with_added(index: AnnIndex, qid: str, vector: np.ndarray) -> AnnIndex:
    """Copy-on-write insert: new id lands in its nearest existing partition.

    No re-clustering happens; callers wanting a fresh clustering rebuild via
    :func:`build`. Returns a new index, leaving the original untouched.
    """
    if qid in index:
        raise ValueError(f"id already indexed: {qid!r}")
    vec32 = np.asarray(vector, dtype=np.float32)
    if len(index) == 0:
        return AnnIndex(AnnMode.EXACT, [qid], vec32.reshape(1, -1))
    if vec32.shape != (index.dim,):
        raise DimensionMismatchError(
            f"vector has shape {vec32.shape}, index dimension is {index.dim}"
        )
    new_ids = sorted(index.ids + [qid])
    insert_at = new_ids.index(qid)
    new_matrix = np.insert(index.vectors32, insert_at, vec32, axis=0)
    if index.mode is AnnMode.EXACT:
        return AnnIndex(AnnMode.EXACT, new_ids, new_matrix)

    shifted = [
        np.where(rows >= insert_at, rows + 1, rows) for rows in index.partition_rows
    ]
    q64 = vec32.astype(np.float64)
    norm = np.linalg.norm(q64)
    if norm > 0.0:
        q64 /= norm
    target = int(np.argmax(index._centroids @ q64))
    shifted[target] = np.sort(np.append(shifted[target], insert_at))
    return AnnIndex(
        AnnMode.PARTITIONED, new_ids, new_matrix, index.centroids32, shifted, index.n_probe
    )


def _pack_id(qid: str) -> bytes:
    raw = qid.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise ValueError(f"id too long to serialize: {qid[:40]!r}...")
    return struct.pack("<H", len(raw)) + raw


def save_index(index: AnnIndex, path: str) -> None:
    """Write the index: embedding records plus an optional partition table."""
    with open(path, "wb") as fh:
        fh.write(INDEX_MAGIC)
        fh.write(struct.pack("<HBIQ", INDEX_VERSION, 1 if index.mode is AnnMode.PARTITIONED else 0,
                             index.dim, len(index)))
        for i, qid in enumerate(index.ids):
            fh.write(_pack_id(qid))
            fh.write(np.ascontiguousarray(index.vectors32[i], dtype="<f4").tobytes())
        if index.mode is AnnMode.PARTITIONED:
            fh.write(struct.pack("<II", index.n_partitions, index.n_probe))
            for j in range(index.n_partitions):
                fh.write(np.ascontiguousarray(index.centroids32[j], dtype="<f4").tobytes())
                members = index.partition_rows[j]
                fh.write(struct.pack("<Q", len(members)))
                for row in members:
                    fh.write(_pack_id(index.ids[int(row)]))


def _read_id(data: bytes, offset: int) -> tuple[str, int]:
    if offset + 2 > len(data):
        raise EmbeddingFormatError("truncated id length", offset=offset)
    (id_len,) = struct.unpack_from("<H", data, offset)
    offset += 2
    if offset + id_len > len(data):
        raise EmbeddingFormatError("truncated id", offset=offset)
    try:
        qid = data[offset : offset + id_len].decode("utf-8")
    except UnicodeDecodeError:
        raise EmbeddingFormatError("id is not valid UTF-8", offset=offset) from None
    return qid, offset + id_len


def load_index(path: str) -> AnnIndex:
    """Read an index file; validates structure, finiteness, and partitioning."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 8 or data[:8] != INDEX_MAGIC:
        hint = " (this is an embedding file)" if data[:8] == _EMB_MAGIC else ""
        raise EmbeddingFormatError(f"bad magic, expected {INDEX_MAGIC!r}{hint}", offset=0)
    offset = 8
    if len(data) < offset + 15:
        raise EmbeddingFormatError("truncated header", offset=len(data))
    version, mode_byte, dim, count = struct.unpack_from("<HBIQ", data, offset)
    if version != INDEX_VERSION:
        raise EmbeddingFormatError(f"unsupported format version {version}", offset=offset)
    if mode_byte not in (0, 1):
        raise EmbeddingFormatError(f"unknown mode byte {mode_byte}", offset=offset + 2)
    offset += 15
    vec_bytes = 4 * dim
    ids: list[str] = []
    rows: list[np.ndarray] = []
    for _ in range(count):
        qid, offset = _read_id(data, offset)
        if offset + vec_bytes > len(data):
            raise EmbeddingFormatError("truncated vector", offset=offset)
        vec = np.frombuffer(data, dtype="<f4", count=dim, offset=offset).copy()
        if not np.all(np.isfinite(vec)):
            raise EmbeddingFormatError(f"non-finite component for id {qid!r}", offset=offset)
        offset += vec_bytes
        ids.append(qid)
        rows.append(vec)
    if ids != sorted(ids):
        raise EmbeddingFormatError("ids out of order", offset=offset)
    matrix32 = np.vstack(rows) if rows else np.zeros((0, dim), dtype=np.float32)

    if mode_byte == 0:
        if offset != len(data):
            raise EmbeddingFormatError("trailing bytes after last record", offset=offset)
        return AnnIndex(AnnMode.EXACT, ids, matrix32)

    if offset + 8 > len(data):
        raise EmbeddingFormatError("truncated partition table", offset=offset)
    n_partitions, n_probe = struct.unpack_from("<II", data, offset)
    offset += 8
    id_to_row = {qid: i for i, qid in enumerate(ids)}
    centroids = np.empty((n_partitions, dim), dtype=np.float32)
    partition_rows: list[np.ndarray] = []
    seen_rows: set[int] = set()
    for j in range(n_partitions):
        if offset + vec_bytes > len(data):
            raise EmbeddingFormatError("truncated centroid", offset=offset)
        centroids[j] = np.frombuffer(data, dtype="<f4", count=dim, offset=offset)
        offset += vec_bytes
        if offset + 8 > len(data):
            raise EmbeddingFormatError("truncated member count", offset=offset)
        (n_members,) = struct.unpack_from("<Q", data, offset)
        offset += 8
        members = np.empty(n_members, dtype=np.int64)
        for m in range(n_members):
            qid, offset = _read_id(data, offset)
            row = id_to_row.get(qid)
            if row is None:
                raise EmbeddingFormatError(f"partition member {qid!r} not in index", offset=offset)
            if row in seen_rows:
                raise EmbeddingFormatError(f"id {qid!r} in two partitions", offset=offset)
            seen_rows.add(row)
            members[m] = row
        partition_rows.append(np.sort(members))
    if offset != len(data):
        raise EmbeddingFormatError("trailing bytes after partition table", offset=offset)
    if len(seen_rows) != len(ids):
        raise EmbeddingFormatError("partition table does not cover all ids", offset=offset)
    if not 1 <= n_probe <= n_partitions:
        raise EmbeddingFormatError(f"invalid n_probe {n_probe}", offset=offset)
    return AnnIndex(AnnMode.PARTITIONED, ids, matrix32, centroids, partition_rows, n_probe)
