"""Command line: exit codes, human output, and JSON parity with the service."""

import json
import os

import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from qdup.cli import main
from qdup.corpus import load_store
from qdup.embed import save_embeddings
from qdup.service import create_app, engine_from_dir
from tests.conftest import CEO_INPUT, SMALL_CORPUS


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    corpus = root / "corpus.jsonl"
    corpus.write_text("\n".join(json.dumps(r) for r in SMALL_CORPUS) + "\n")
    config = root / "config.json"
    config.write_text(json.dumps({"embedding_dim": 64}))
    return root


@pytest.fixture(scope="module")
def store_dir(runner, workspace):
    out = workspace / "store"
    result = runner.invoke(main, [
        "index", "build",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--config", str(workspace / "config.json"),
        "--out", str(out),
    ])
    assert result.exit_code == 0, result.output + result.stderr
    return str(out)


class TestIndexBuild:
    def test_summary_output(self, runner, workspace):
        out = workspace / "store2"
        result = runner.invoke(main, [
            "index", "build",
            "--corpus", str(workspace / "corpus.jsonl"),
            "--config", str(workspace / "config.json"),
            "--out", str(out),
        ])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "8 questions, 3 subjects"
        assert lines[1:] == ["  biology: 1", "  business: 6", "  economics: 1"]
        assert os.path.exists(out / "index.qdi")
        assert len(load_store(str(out))) == 8

    def test_missing_corpus(self, runner, workspace):
        result = runner.invoke(main, [
            "index", "build", "--corpus", str(workspace / "ghost.jsonl"),
            "--out", str(workspace / "never"),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")

    def test_sidecar_mismatch_exit_code(self, runner, workspace):
        vec = (np.ones(64) / 8.0).astype(np.float32)
        sidecar = workspace / "partial.qde"
        save_embeddings({"qa": vec}, str(sidecar))
        result = runner.invoke(main, [
            "index", "build",
            "--corpus", str(workspace / "corpus.jsonl"),
            "--config", str(workspace / "config.json"),
            "--embeddings", str(sidecar),
            "--out", str(workspace / "never2"),
        ])
        assert result.exit_code == 2
        assert result.stderr.startswith("error:")

    def test_missing_required_option_is_usage_error(self, runner):
        result = runner.invoke(main, ["index", "build", "--out", "x"])
        assert result.exit_code == 2


class TestIndexRebuild:
    def test_exact_rebuild(self, runner, store_dir):
        result = runner.invoke(main, ["index", "rebuild", "--store", store_dir])
        assert result.exit_code == 0
        assert result.output.strip() == "rebuilt EXACT index over 8 questions"

    def test_partitioned_rebuild(self, runner, store_dir):
        result = runner.invoke(main, [
            "index", "rebuild", "--store", store_dir, "--mode", "PARTITIONED",
        ])
        assert result.exit_code == 0
        assert result.output.strip() == (
            "rebuilt PARTITIONED index over 8 questions in 3 partitions"
        )
        # restore the exact index other tests in this module expect
        reset = runner.invoke(main, ["index", "rebuild", "--store", store_dir])
        assert reset.exit_code == 0


class TestCheck:
    def test_duplicates_exit_three(self, runner, store_dir):
        result = runner.invoke(main, ["check", CEO_INPUT, "--store", store_dir])
        assert result.exit_code == 3
        out = result.output
        assert "input:   who is the ceo of apple" in out
        assert "subject: business" in out
        assert "EXACT DUPLICATES (1)" in out
        assert "qa  Who is the CEO of Apple?" in out
        assert "NEAR DUPLICATES (1)" in out
        assert "RELATED" in out
        assert "TRACE" in out
        assert "ENTITY    ELIMINATED qc" in out

    def test_clean_exit_zero(self, runner, store_dir):
        result = runner.invoke(main, [
            "check", "name the longest river in south america", "--store", store_dir,
        ])
        assert result.exit_code == 0
        assert "no duplicates found" in result.output

    def test_store_env_var(self, runner, store_dir):
        result = runner.invoke(
            main, ["check", CEO_INPUT], env={"QDUP_STORE": store_dir}
        )
        assert result.exit_code == 3

    def test_bad_store_dir(self, runner, tmp_path):
        result = runner.invoke(main, [
            "check", "hello world", "--store", str(tmp_path / "missing"),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")

    def test_json_matches_service_body(self, runner, store_dir, monkeypatch):
        import qdup.corpus
        import qdup.pipeline

        monkeypatch.setattr(qdup.corpus, "new_question_id", lambda: "fixedid0")
        monkeypatch.setattr(qdup.pipeline.time, "perf_counter", lambda: 0.0)

        result = runner.invoke(main, [
            "check", CEO_INPUT, "--store", store_dir, "--json",
        ])
        assert result.exit_code == 3
        cli_body = result.output.strip()

        engine = engine_from_dir(store_dir, persist=False)
        client = TestClient(create_app(engine))
        resp = client.post("/api/v1/check", json={"text": CEO_INPUT})
        assert resp.status_code == 200
        assert cli_body == resp.content.decode("utf-8")
        parsed = json.loads(cli_body)
        assert parsed["input_id"] == "fixedid0"
        assert parsed["exact_duplicates"] == ["qa"]


class TestBulk:
    def test_reports_written_per_line(self, runner, store_dir, tmp_path):
        batch = tmp_path / "batch.jsonl"
        rows = [
            {"id": "b1", "text": CEO_INPUT},
            {"id": "b2", "text": "name the longest river in south america"},
            {"id": "b3", "text": "<p>!!</p>"},
        ]
        batch.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        out = tmp_path / "reports.jsonl"
        result = runner.invoke(main, [
            "bulk", str(batch), "--store", store_dir, "--out", str(out),
        ])
        assert result.exit_code == 0
        assert result.output.strip() == "3 checked, 1 with duplicates, 1 errors"
        lines = out.read_text().splitlines()
        assert len(lines) == 3
        first = json.loads(lines[0])
        assert first["row"] == 0
        assert first["text"] == CEO_INPUT
        assert first["report"]["exact_duplicates"] == ["qa"]
        second = json.loads(lines[1])
        assert second["report"]["exact_duplicates"] == []
        third = json.loads(lines[2])
        assert third["report"] is None and third["error"]

    def test_unreadable_input(self, runner, store_dir, tmp_path):
        result = runner.invoke(main, [
            "bulk", str(tmp_path / "ghost.jsonl"), "--store", store_dir,
            "--out", str(tmp_path / "o.jsonl"),
        ])
        assert result.exit_code == 1


class TestRelated:
    def test_neighbor_lines(self, runner, store_dir):
        result = runner.invoke(main, ["related", "qa", "--store", store_dir, "-n", "2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert len(lines) == 2
        for line in lines:
            qid, score, text = line.split("  ", 2)
            assert qid != "qa"
            assert -1.0 <= float(score) <= 1.0
            assert text

    def test_unknown_id(self, runner, store_dir):
        result = runner.invoke(main, ["related", "ghost", "--store", store_dir])
        assert result.exit_code == 1
        assert "ghost" in result.stderr


@pytest.fixture(scope="module")
def eval_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("eval")
    inputs = root / "inputs.jsonl"
    inputs.write_text(
        json.dumps({"id": "inp1", "text": CEO_INPUT, "subject": "business"}) + "\n"
    )
    positive = {"qa", "qd"}
    rows = ["input_id,candidate_id,annotator,label"]
    for qid in ("qa", "qb", "qc", "qd", "qe", "qf", "qg", "qh"):
        rows.append(f"inp1,{qid},a1,{1 if qid in positive else 0}")
        rows.append(f"inp1,{qid},a2,{1 if qid in positive else 0}")
    gold = root / "gold.csv"
    gold.write_text("\n".join(rows) + "\n")
    return inputs, gold


class TestEval:
    def test_table_output(self, runner, store_dir, eval_files):
        inputs, gold = eval_files
        result = runner.invoke(main, [
            "eval", "--store", store_dir,
            "--inputs", str(inputs), "--gold", str(gold),
        ])
        assert result.exit_code == 0, result.stderr
        out = result.output
        for name in ("QDUP", "KEYPHRASE_ONLY", "CLOSEST_NEIGHBORS"):
            assert name in out
        assert "Accuracy (%)" in out
        assert "Cohen's kappa" in out

    def test_json_output(self, runner, store_dir, eval_files):
        inputs, gold = eval_files
        result = runner.invoke(main, [
            "eval", "--store", store_dir,
            "--inputs", str(inputs), "--gold", str(gold), "--json",
        ])
        assert result.exit_code == 0, result.stderr
        data = json.loads(result.output)
        assert data["methods"]["QDUP"]["accuracy"] == 1.0
        assert data["kappa"]["a1/a2"] == 1.0

    def test_missing_gold_file(self, runner, store_dir, eval_files, tmp_path):
        inputs, _ = eval_files
        result = runner.invoke(main, [
            "eval", "--store", store_dir,
            "--inputs", str(inputs), "--gold", str(tmp_path / "ghost.csv"),
        ])
        assert result.exit_code == 1


class TestServe:
    def test_bad_store_fails_before_serving(self, runner, tmp_path):
        result = runner.invoke(main, ["serve", "--store", str(tmp_path / "missing")])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")


class TestTopLevel:
    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output

    def test_help_lists_commands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for cmd in ("index", "check", "bulk", "related", "eval", "serve"):
            assert cmd in result.output
