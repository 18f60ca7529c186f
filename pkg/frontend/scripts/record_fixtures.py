"""Regenerate the recorded API fixtures and published schema copies.

Runs the real service in-process over a small fixture store and writes the
exact response bodies the UI tests replay, so the mock API can never drift
from the backend silently. Run from the repository root:

    python3 frontend/scripts/record_fixtures.py
"""

import io
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "tests"))

from fastapi.testclient import TestClient

import qdup.corpus
import qdup.pipeline
from qdup.corpus import PipelineConfig, ProviderSet, build_store
from qdup.schemas import (
    BULK_ITEM_SCHEMA,
    DUPLICATE_REPORT_SCHEMA,
    ONBOARD_RESPONSE_SCHEMA,
    STATS_SCHEMA,
)
from qdup.service import Engine, create_app

from conftest import CEO_INPUT, SMALL_CORPUS

OUT = os.path.join(os.path.dirname(__file__), "..")


def freeze():
    """Pin the nondeterministic inputs so recorded bodies are reproducible."""
    counter = iter(f"fixture{i:02d}" for i in range(100))
    qdup.corpus.new_question_id = lambda: next(counter)
    qdup.pipeline.time.perf_counter = lambda: 0.0


def write(relpath: str, payload) -> None:
    path = os.path.join(OUT, relpath)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {relpath}")


def main() -> None:
    freeze()
    cfg = PipelineConfig(embedding_dim=64)
    providers = ProviderSet.default(cfg)
    store = build_store(SMALL_CORPUS, cfg, providers)
    client = TestClient(create_app(Engine(store, providers=providers, config=cfg)))

    write("fixtures/check-duplicate.json",
          client.post("/api/v1/check", json={"text": CEO_INPUT}).json())
    write("fixtures/check-clean.json",
          client.post("/api/v1/check",
                      json={"text": "name the longest river in south america"}).json())

    rows = [
        {"id": "b1", "text": CEO_INPUT},
        {"id": "b2", "text": "name the longest river in south america"},
        {"id": "b3", "text": "how do vaccines train the immune system"},
    ]
    upload = "\n".join(json.dumps(r) for r in rows).encode()
    write("fixtures/bulk-rows.json",
          client.post("/api/v1/bulk-check",
                      files={"file": ("batch.jsonl", io.BytesIO(upload),
                                      "application/jsonl")}).json())

    blocked = client.post("/api/v1/questions", json={"text": CEO_INPUT})
    assert blocked.status_code == 409, blocked.status_code
    write("fixtures/onboard-409.json", blocked.json())

    forced = client.post("/api/v1/questions", json={"text": CEO_INPUT, "force": True})
    assert forced.status_code == 201, forced.status_code
    write("fixtures/onboard-201.json", forced.json())

    write("fixtures/related.json",
          client.get("/api/v1/questions/qa/related?n=3").json())
    write("fixtures/stats.json", client.get("/api/v1/stats").json())

    write("contracts/duplicate-report.schema.json", DUPLICATE_REPORT_SCHEMA)
    write("contracts/bulk-item.schema.json", BULK_ITEM_SCHEMA)
    write("contracts/onboard-response.schema.json", ONBOARD_RESPONSE_SCHEMA)
    write("contracts/stats.schema.json", STATS_SCHEMA)


if __name__ == "__main__":
    main()
