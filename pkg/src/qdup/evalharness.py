"""Evaluation harness: the detector, two baselines, accuracy, and kappa.

Given labeled inputs it runs three prediction methods (the full pipeline, a
keyphrase-share-only filter, and plain closest-neighbor retrieval), scores
each against gold pair labels, and computes pairwise inter-annotator
agreement. Gold labels arrive as CSV rows `input_id,candidate_id,annotator,label`.
"""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from . import ann
from .corpus import Question, QuestionStore
from .errors import IngestError, MissingGoldLabelError
from .keyphrase import keyphrase_share
from .pipeline import CheckContext, check
from .taxonomy import candidate_set

logger = logging.getLogger(__name__)


class Method(str, Enum):
    QDUP = "QDUP"
    KEYPHRASE_ONLY = "KEYPHRASE_ONLY"
    CLOSEST_NEIGHBORS = "CLOSEST_NEIGHBORS"


@dataclass
class EvalRecord:
    """One input's predictions under one method, plus any annotator labels."""

    input_id: str
    method: Method
    predicted_dups: list[str]
    annotator_labels: dict[str, dict[str, int]] = field(default_factory=dict)


def run_baseline(
    method: Method,
    q: Question,
    store: QuestionStore,
    ctx: CheckContext,
) -> list[str]:
    """Predicted duplicate ids for one annotated input under one method."""
    if method is Method.QDUP:
        report = check(q.raw_text, store, context=ctx)
        return sorted(set(report.exact_duplicates) | set(report.near_duplicates))
    if method is Method.KEYPHRASE_ONLY:
        threshold = ctx.config.keyphrase_share_threshold
        hits = [
            cid
            for cid in candidate_set(store, q.tag, exclude_id=q.id)
            if keyphrase_share(q.keyphrases, store.questions[cid].keyphrases) >= threshold
        ]
        return sorted(hits)
    if method is Method.CLOSEST_NEIGHBORS:
        if q.embedding is None:
            return []
        hits = ann.query(
            ctx.index, q.embedding, ctx.config.related_top_n, exclude={q.id}
        )
        return [qid for qid, _ in hits]
    raise ValueError(f"unknown method {method!r}")


def accuracy(
    records: Sequence[EvalRecord], gold: Mapping[tuple[str, str], int]
) -> float:
    """Fraction of predicted (input, candidate) pairs whose gold label is 1.

    Every predicted pair must be labeled; zero predictions give 0.0.
    """
    total = 0
    correct = 0
    for record in records:
        for cid in record.predicted_dups:
            label = gold.get((record.input_id, cid))
            if label is None:
                raise MissingGoldLabelError(record.input_id, cid)
            total += 1
            correct += label
    return correct / total if total else 0.0


def cohens_kappa(a: Sequence[int], b: Sequence[int]) -> float:
    """Chance-corrected agreement between two binary label vectors.

    kappa = (p_o - p_e) / (1 - p_e); when both raters are constant and equal
    (p_e = 1) agreement is complete and kappa is defined as 1.0.
    """
    if len(a) != len(b):
        raise ValueError(f"label vectors differ in length: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("label vectors must be non-empty")
    for vec in (a, b):
        bad = set(vec) - {0, 1}
        if bad:
            raise ValueError(f"labels must be 0/1, got {sorted(bad)}")
    n = len(a)
    p_o = sum(1 for x, y in zip(a, b) if x == y) / n
    p_e = 0.0
    count_a = Counter(a)
    count_b = Counter(b)
    for cls in (0, 1):
        p_e += (count_a[cls] / n) * (count_b[cls] / n)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


def load_gold_csv(path: str) -> dict[str, dict[tuple[str, str], int]]:
    """Read annotator labels: map annotator -> {(input_id, candidate_id): 0/1}."""
    out: dict[str, dict[tuple[str, str], int]] = defaultdict(dict)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"input_id", "candidate_id", "annotator", "label"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise IngestError(
                f"gold CSV needs columns {sorted(required)}", line=1
            )
        for row in reader:
            label = row["label"].strip()
            if label not in ("0", "1"):
                raise IngestError(
                    f"label must be 0 or 1, got {label!r}", line=reader.line_num, field="label"
                )
            pair = (row["input_id"], row["candidate_id"])
            out[row["annotator"]][pair] = int(label)
    return dict(out)


def resolve_gold(
    by_annotator: Mapping[str, Mapping[tuple[str, str], int]]
) -> dict[tuple[str, str], int]:
    """Majority vote per pair across annotators; ties resolve to 0."""
    votes: dict[tuple[str, str], list[int]] = defaultdict(list)
    for labels in by_annotator.values():
        for pair, label in labels.items():
            votes[pair].append(label)
    return {
        pair: 1 if sum(labels) * 2 > len(labels) else 0
        for pair, labels in votes.items()
    }


def kappa_table(
    by_annotator: Mapping[str, Mapping[tuple[str, str], int]]
) -> dict[str, float]:
    """Pairwise kappa over the pairs each two annotators both labeled."""
    table: dict[str, float] = {}
    annotators = sorted(by_annotator)
    for i, first in enumerate(annotators):
        for second in annotators[i + 1 :]:
            common = sorted(set(by_annotator[first]) & set(by_annotator[second]))
            if not common:
                continue
            a = [by_annotator[first][pair] for pair in common]
            b = [by_annotator[second][pair] for pair in common]
            table[f"{first}/{second}"] = cohens_kappa(a, b)
    return table


@dataclass
class EvalReport:
    """Accuracy per method plus the inter-annotator agreement table."""

    accuracy: dict[str, float]
    n_pairs: dict[str, int]
    kappa: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "methods": {
                name: {"accuracy": self.accuracy[name], "n_pairs": self.n_pairs[name]}
                for name in self.accuracy
            },
            "kappa": dict(self.kappa),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def evaluate(
    questions: Sequence[Question],
    store: QuestionStore,
    ctx: CheckContext,
    by_annotator: Mapping[str, Mapping[tuple[str, str], int]],
) -> EvalReport:
    """Run all three methods over the inputs and score them against gold."""
    gold = resolve_gold(by_annotator)
    accuracies: dict[str, float] = {}
    pair_counts: dict[str, int] = {}
    for method in Method:
        records = [
            EvalRecord(q.id, method, run_baseline(method, q, store, ctx))
            for q in questions
        ]
        accuracies[method.value] = accuracy(records, gold)
        pair_counts[method.value] = sum(len(r.predicted_dups) for r in records)
    return EvalReport(accuracies, pair_counts, kappa_table(by_annotator))


def render_table(report: EvalReport) -> str:
    """Aligned text table: one row per method, accuracy as a percentage."""
    name_width = max(len(name) for name in report.accuracy)
    lines = [
        f"{'Method'.ljust(name_width)}  Accuracy (%)  Pairs",
        f"{'-' * name_width}  ------------  -----",
    ]
    for name in report.accuracy:
        pct = report.accuracy[name] * 100.0
        lines.append(
            f"{name.ljust(name_width)}  {pct:12.1f}  {report.n_pairs[name]:5d}"
        )
    if report.kappa:
        lines.append("")
        lines.append("Inter-annotator agreement (Cohen's kappa)")
        for pair, value in sorted(report.kappa.items()):
            lines.append(f"  {pair}: {value:.2f}")
    return "\n".join(lines)
