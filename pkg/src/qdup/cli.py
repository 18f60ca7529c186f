"""Command-line interface: build stores, check questions, evaluate, serve.

Exit codes: 0 success (or no duplicates for `check`), 1 operational errors,
2 usage errors and sidecar id mismatches, 3 duplicates found (`check` only).
"""

from __future__ import annotations

import os
import sys

import click

from . import ann
from .corpus import (
    PipelineConfig,
    ProviderSet,
    TaxonomyTag,
    ingest_corpus,
    load_config,
    load_keyphrase_sidecar,
    load_store,
)
from .embed import load_embeddings
from .errors import QdupError, SidecarMismatchError
from .evalharness import evaluate, load_gold_csv, render_table
from .pipeline import annotate_for_store, bulk_check, check, prepare
from .schemas import bulk_item_to_dict, canonical_json, report_to_dict

INDEX_FILE = "index.qdi"


def _fail(message: str, code: int = 1) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_context(store_dir: str, config_path: str | None):
    store = load_store(store_dir)
    config = load_config(config_path) if config_path else None
    index_path = os.path.join(store_dir, INDEX_FILE)
    index = ann.load_index(index_path) if os.path.exists(index_path) else None
    return store, prepare(store, config=config, index=index)


@click.group()
@click.version_option(package_name="qdup")
def main():
    """Near-duplicate and related-question detection for question repositories."""


@main.group()
def index():
    """Build and maintain persisted question stores."""


@index.command("build")
@click.option("--corpus", "corpus_path", required=True, help="Corpus file (JSONL or CSV).")
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default=None,
              help="Corpus format; inferred from the extension when omitted.")
@click.option("--embeddings", "embeddings_path", default=None,
              help="Precomputed embedding file covering every corpus id.")
@click.option("--keyphrases", "keyphrases_path", default=None,
              help="Precomputed keyphrase JSONL sidecar.")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG",
              help="Pipeline config JSON.")
@click.option("--seeds", "seeds_path", default=None,
              help="Seed-exemplar JSON (subject -> example strings) for tagging unlabeled records.")
@click.option("--mode", type=click.Choice(["EXACT", "PARTITIONED"]), default=None,
              help="Override the configured search index mode.")
@click.option("--out", "out_dir", required=True, help="Output store directory.")
def index_build(corpus_path, fmt, embeddings_path, keyphrases_path, config_path,
                seeds_path, mode, out_dir):
    """Ingest a corpus and persist the store plus its search index."""
    try:
        config = load_config(config_path) if config_path else PipelineConfig()
        if mode:
            config.ann_mode = ann.AnnMode(mode)
        providers = ProviderSet.default(config)
        if seeds_path:
            from .taxonomy import CentroidTagger

            providers.tagger = CentroidTagger.from_file(seeds_path, providers.embedder)
        embeddings = load_embeddings(embeddings_path) if embeddings_path else None
        keyphrases = load_keyphrase_sidecar(keyphrases_path) if keyphrases_path else None
        store = ingest_corpus(corpus_path, fmt, config, providers, embeddings, keyphrases)
        built = ann.build(
            store.embeddings(), config.ann_mode,
            n_partitions=config.ann_partitions, n_probe=config.ann_probe,
            seed=config.seed,
        )
        from .corpus import save_store

        save_store(store, out_dir)
        ann.save_index(built, os.path.join(out_dir, INDEX_FILE))
    except SidecarMismatchError as exc:
        _fail(str(exc), 2)
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    click.echo(f"{len(store)} questions, {len(store.subject_index)} subjects")
    for subject in store.subjects():
        click.echo(f"  {subject}: {len(store.subject_index[subject])}")


@index.command("rebuild")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE",
              help="Existing store directory whose index should be re-clustered.")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("--mode", type=click.Choice(["EXACT", "PARTITIONED"]), default=None,
              help="Override the configured search index mode.")
def index_rebuild(store_dir, config_path, mode):
    """Re-cluster the search index over an existing store from scratch."""
    try:
        store = load_store(store_dir)
        config = load_config(config_path) if config_path else PipelineConfig()
        if mode:
            config.ann_mode = ann.AnnMode(mode)
        built = ann.build(
            store.embeddings(), config.ann_mode,
            n_partitions=config.ann_partitions, n_probe=config.ann_probe,
            seed=config.seed,
        )
        ann.save_index(built, os.path.join(store_dir, INDEX_FILE))
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    parts = built.n_partitions if built.mode is ann.AnnMode.PARTITIONED else 0
    click.echo(f"rebuilt {built.mode.value} index over {len(store)} questions"
               + (f" in {parts} partitions" if parts else ""))


@main.command("check")
@click.argument("text")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE",
              help="Store directory built by `qdup index build`.")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def check_cmd(text, store_dir, config_path, as_json):
    """Check one question; exits 3 when duplicates are found."""
    try:
        store, ctx = _load_context(store_dir, config_path)
        report = check(text, store, context=ctx)
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    if as_json:
        click.echo(canonical_json(report_to_dict(report)))
    else:
        _print_report(report, store)
    sys.exit(3 if report.has_duplicates else 0)


def _print_report(report, store) -> None:
    def text_of(qid: str) -> str:
        question = store.questions.get(qid)
        return question.raw_text if question is not None else ""

    click.echo(f"input:   {report.normalized_text}")
    click.echo(f"subject: {report.tag.subject}")
    click.echo()
    click.echo(f"EXACT DUPLICATES ({len(report.exact_duplicates)})")
    for qid in report.exact_duplicates:
        click.echo(f"  {qid}  {text_of(qid)}")
    click.echo(f"NEAR DUPLICATES ({len(report.near_duplicates)})")
    for qid in report.near_duplicates:
        click.echo(f"  {qid}  {text_of(qid)}")
    click.echo(f"RELATED ({len(report.related)})")
    for qid, score in report.related:
        click.echo(f"  {qid}  {score:.4f}  {text_of(qid)}")
    click.echo(f"TRACE ({len(report.trace)} decisions)")
    for d in report.trace:
        score = "" if d.score is None else f"  score={d.score:.4f}"
        click.echo(f"  {d.stage.value:<9} {d.action.value:<10} {d.candidate_id}{score}")
    if not report.has_duplicates:
        click.echo("no duplicates found")


@main.command("bulk")
@click.argument("input_path", metavar="FILE")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default=None)
@click.option("--out", "out_path", required=True, help="Report output, one JSON object per line.")
def bulk_cmd(input_path, store_dir, config_path, fmt, out_path):
    """Check every question in FILE against the store."""
    from .corpus import parse_records

    try:
        store, ctx = _load_context(store_dir, config_path)
        records = parse_records(input_path, fmt)
        items = bulk_check([r.text for r in records], store, context=ctx)
        with open(out_path, "w", encoding="utf-8") as fh:
            for item in items:
                fh.write(canonical_json(bulk_item_to_dict(item, records[item.row].text)))
                fh.write("\n")
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    flagged = sum(1 for i in items if i.report is not None and i.report.has_duplicates)
    errors = sum(1 for i in items if i.error is not None)
    click.echo(f"{len(items)} checked, {flagged} with duplicates, {errors} errors")


@main.command("related")
@click.argument("question_id")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("-n", "top_n", type=int, default=None, help="Number of neighbors.")
def related_cmd(question_id, store_dir, config_path, top_n):
    """Show the stored questions most similar to QUESTION_ID."""
    try:
        store, ctx = _load_context(store_dir, config_path)
        question = store.questions.get(question_id)
        if question is None:
            _fail(f"unknown question id {question_id!r}")
        n = top_n if top_n is not None else ctx.config.related_top_n
        if n < 1:
            _fail("-n must be a positive integer")
        hits = ann.query(ctx.index, question.embedding, n, exclude={question_id})
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    for qid, score in hits:
        click.echo(f"{qid}  {score:.4f}  {store.questions[qid].raw_text}")


@main.command("eval")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("--inputs", "inputs_path", required=True,
              help="Labeled input questions (corpus JSONL/CSV with ids).")
@click.option("--gold", "gold_path", required=True,
              help="Gold labels CSV: input_id,candidate_id,annotator,label.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def eval_cmd(store_dir, config_path, inputs_path, gold_path, as_json):
    """Score the detector and both baselines against gold pair labels."""
    from .corpus import parse_records

    try:
        store, ctx = _load_context(store_dir, config_path)
        records = parse_records(inputs_path)
        questions = []
        for record in records:
            question = annotate_for_store(record.text, ctx, question_id=record.id)
            if record.subject is not None:
                question.tag = TaxonomyTag(record.subject, record.chapter, record.topic)
            questions.append(question)
        report = evaluate(questions, store, ctx, load_gold_csv(gold_path))
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    click.echo(report.to_json() if as_json else render_table(report))


@main.command("serve")
@click.option("--store", "store_dir", required=True, envvar="QDUP_STORE")
@click.option("--config", "config_path", default=None, envvar="QDUP_CONFIG")
@click.option("--port", type=int, default=8000, envvar="QDUP_PORT")
@click.option("--host", default="127.0.0.1")
@click.option("--cors-origin", "cors_origins", multiple=True, default=("*",),
              help="Allowed browser origin; repeatable.")
def serve_cmd(store_dir, config_path, port, host, cors_origins):
    """Serve the HTTP API over a persisted store."""
    import uvicorn

    from .service import create_app, engine_from_dir

    try:
        engine = engine_from_dir(store_dir, config_path)
    except (QdupError, OSError, ValueError) as exc:
        _fail(str(exc))
    app = create_app(engine, cors_origins=tuple(cors_origins))
    click.echo(f"serving {len(engine.store)} questions on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
