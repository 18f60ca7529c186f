"""Shared JSON contract: report serialization and the published schemas.

The CLI's --json output and every service response body go through
`canonical_json`, so the two surfaces are byte-identical for identical data.
The schema dicts are the contract the review UI validates against; compound
schemas embed the report schema inline so no reference resolution is needed.
"""

from __future__ import annotations

import json
from typing import Any

from .pipeline import BulkItem, DuplicateReport


def canonical_json(obj: Any) -> str:
    """Compact, non-ASCII-escaping JSON; the wire format everywhere."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def report_to_dict(report: DuplicateReport) -> dict:
    return {
        "input_id": report.input_id,
        "normalized_text": report.normalized_text,
        "tag": {
            "subject": report.tag.subject,
            "chapter": report.tag.chapter,
            "topic": report.tag.topic,
        },
        "exact_duplicates": list(report.exact_duplicates),
        "near_duplicates": list(report.near_duplicates),
        "related": [{"id": qid, "score": score} for qid, score in report.related],
        "trace": [
            {
                "candidate_id": d.candidate_id,
                "stage": d.stage.value,
                "action": d.action.value,
                "score": d.score,
            }
            for d in report.trace
        ],
        "timings": dict(report.timings),
    }


def bulk_item_to_dict(item: BulkItem, text: str | None = None) -> dict:
    return {
        "row": item.row,
        "text": text,
        "report": None if item.report is None else report_to_dict(item.report),
        "error": item.error,
    }


_TAG_SCHEMA = {
    "type": "object",
    "properties": {
        "subject": {"type": "string", "minLength": 1},
        "chapter": {"type": ["string", "null"]},
        "topic": {"type": ["string", "null"]},
    },
    "required": ["subject", "chapter", "topic"],
    "additionalProperties": False,
}

_REPORT_CORE = {
    "type": "object",
    "properties": {
        "input_id": {"type": "string", "minLength": 1},
        "normalized_text": {"type": "string", "minLength": 1},
        "tag": _TAG_SCHEMA,
        "exact_duplicates": {"type": "array", "items": {"type": "string"}},
        "near_duplicates": {"type": "array", "items": {"type": "string"}},
        "related": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string"},
                    "score": {"type": "number", "minimum": -1.0, "maximum": 1.0},
                },
                "required": ["id", "score"],
                "additionalProperties": False,
            },
        },
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "candidate_id": {"type": "string"},
                    "stage": {"enum": ["JACCARD", "ENTITY", "KEYPHRASE", "NEGATION"]},
                    "action": {"enum": ["ELIMINATED", "RETAINED", "EXACT_DUP"]},
                    "score": {"type": ["number", "null"]},
                },
                "required": ["candidate_id", "stage", "action", "score"],
                "additionalProperties": False,
            },
        },
        "timings": {
            "type": "object",
            "additionalProperties": {"type": "number", "minimum": 0.0},
        },
    },
    "required": [
        "input_id",
        "normalized_text",
        "tag",
        "exact_duplicates",
        "near_duplicates",
        "related",
        "trace",
        "timings",
    ],
    "additionalProperties": False,
}

DUPLICATE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DuplicateReport",
    **_REPORT_CORE,
}

BULK_ITEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "BulkCheckItem",
    "type": "object",
    "properties": {
        "row": {"type": "integer", "minimum": 0},
        "text": {"type": ["string", "null"]},
        "report": {"oneOf": [{"type": "null"}, _REPORT_CORE]},
        "error": {"type": ["string", "null"]},
    },
    "required": ["row", "text", "report", "error"],
    "additionalProperties": False,
}

ONBOARD_RESPONSE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "OnboardResponse",
    "type": "object",
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "report": _REPORT_CORE,
    },
    "required": ["id", "report"],
    "additionalProperties": False,
}

STATS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "StoreStats",
    "type": "object",
    "properties": {
        "questions": {"type": "integer", "minimum": 0},
        "subjects": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "index_mode": {"enum": ["EXACT", "PARTITIONED"]},
        "embedding_dim": {"type": "integer", "minimum": 1},
    },
    "required": ["questions", "subjects", "index_mode", "embedding_dim"],
    "additionalProperties": False,
}
