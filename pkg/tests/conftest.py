"""Shared fixtures: small hand-verified corpora and synthetic store builders."""

from __future__ import annotations

import random
import sys

import numpy as np
import pytest

from qdup.corpus import PipelineConfig, ProviderSet, build_store
from qdup.keyphrase import Keyphrase
from qdup.pipeline import prepare

# One candidate per elimination stage plus an exact and a near duplicate,
# all hand-checked against "Who is the CEO of Apple?":
#   qa  J = 1.0                      -> exact duplicate
#   qb  J = 1/12                     -> eliminated at JACCARD
#   qc  J = 5/7, entity google!=apple -> eliminated at ENTITY
#   qd  J = 6/8, share = 1.0          -> near duplicate
#   qe  J = 5/7, share = 1/2          -> eliminated at KEYPHRASE
#   qf  J = 6/7, negation {not} vs {} -> eliminated at NEGATION
SMALL_CORPUS = [
    {"id": "qa", "text": "Who is the CEO of Apple?", "subject": "business"},
    {"id": "qb", "text": "What is GDP growth rate in economics?", "subject": "business"},
    {"id": "qc", "text": "Who is the CEO of Google?", "subject": "business"},
    {"id": "qd", "text": "Who is the founder and CEO of Apple?", "subject": "business"},
    {"id": "qe", "text": "Who is the head of Apple?", "subject": "business"},
    {"id": "qf", "text": "Who is not the CEO of Apple?", "subject": "business"},
    {"id": "qg", "text": "What is photosynthesis?", "subject": "biology"},
    {"id": "qh", "text": "Define supply and demand", "subject": "economics"},
]

CEO_INPUT = "Who is the CEO of Apple?"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the per-criterion pass/fail lines where they cannot be missed."""
    module = sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def config():
    return PipelineConfig(embedding_dim=64)


@pytest.fixture(scope="session")
def providers(config):
    return ProviderSet.default(config)


@pytest.fixture(scope="session")
def small_store(config, providers):
    return build_store(SMALL_CORPUS, config, providers)


@pytest.fixture(scope="session")
def small_ctx(small_store, config, providers):
    return prepare(small_store, providers=providers, config=config)


def synth_records(n: int, n_subjects: int, seed: int, vocab: int = 400) -> list[dict]:
    """Random word-salad corpus records with round-robin subjects."""
    rng = random.Random(seed)
    words = [f"w{i:03d}" for i in range(vocab)]
    out = []
    for i in range(n):
        text = " ".join(rng.choice(words) for _ in range(rng.randint(4, 12)))
        out.append({"id": f"s{i:06d}", "text": text, "subject": f"subj{i % n_subjects:02d}"})
    return out


def synth_store(
    n: int,
    n_subjects: int,
    seed: int,
    dim: int = 64,
    *,
    config: PipelineConfig | None = None,
):
    """Large synthetic store built fast via precomputed sidecars.

    Random unit embeddings and token-derived keyphrases skip the per-question
    extraction work; similarity content is arbitrary but all structural
    invariants (partitioning, stage flow, report shape) are exercised.
    """
    records = synth_records(n, n_subjects, seed)
    rng = np.random.default_rng(seed)
    vectors = {}
    keyphrases = {}
    for r in records:
        v = rng.standard_normal(dim)
        vectors[r["id"]] = (v / np.linalg.norm(v)).astype(np.float32)
        toks = r["text"].split()
        keyphrases[r["id"]] = [
            Keyphrase(t, 1.0 - 0.01 * i) for i, t in enumerate(dict.fromkeys(toks[:4]))
        ]
    cfg = config or PipelineConfig(embedding_dim=dim)
    store = build_store(records, cfg, ProviderSet.default(cfg),
                        embeddings=vectors, keyphrases=keyphrases)
    return store, cfg


def clustered_vectors(
    n: int, dim: int, n_clusters: int, seed: int
) -> dict[str, np.ndarray]:
    """Unit vectors drawn from a mixture of tight Gaussian clusters."""
    rng = np.random.default_rng(seed)
    centers = rng.standard_normal((n_clusters, dim))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    out = {}
    for i in range(n):
        c = centers[rng.integers(n_clusters)]
        v = c + 0.15 * rng.standard_normal(dim)
        out[f"v{i:06d}"] = (v / np.linalg.norm(v)).astype(np.float32)
    return out
