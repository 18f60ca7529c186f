"""Estimator facade: fit/predict/report/transform and sklearn integration."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from qdup import DuplicateDetector
from qdup.errors import InvalidInputError
from qdup.validation import as_corpus_records, as_text_list
from tests.conftest import CEO_INPUT, SMALL_CORPUS


@pytest.fixture(scope="module")
def fitted():
    return DuplicateDetector(embedding_dim=64).fit(SMALL_CORPUS)


class TestFitPredict:
    def test_predict_flags_duplicates(self, fitted):
        got = fitted.predict([CEO_INPUT, "name the longest river in south america"])
        assert got.dtype == bool
        assert list(got) == [True, False]

    def test_report_matches_pipeline(self, fitted):
        reports = fitted.report([CEO_INPUT])
        assert len(reports) == 1
        assert reports[0].exact_duplicates == ["qa"]
        assert reports[0].near_duplicates == ["qd"]

    def test_fit_returns_self(self):
        det = DuplicateDetector(embedding_dim=64)
        assert det.fit(SMALL_CORPUS) is det
        assert det.n_questions_ == len(SMALL_CORPUS)

    def test_refit_replaces_store(self, fitted):
        det = DuplicateDetector(embedding_dim=64).fit(SMALL_CORPUS)
        det.fit([{"id": "z", "text": "What is osmosis?", "subject": "bio"}])
        assert det.n_questions_ == 1
        assert not det.predict([CEO_INPUT])[0]

    def test_transform_shape_and_norm(self, fitted):
        mat = fitted.transform([CEO_INPUT, "What is GDP?"])
        assert mat.shape == (2, 64)
        assert mat.dtype == np.float32
        norms = np.linalg.norm(mat, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-6)

    def test_transform_empty_input(self, fitted):
        mat = fitted.transform([])
        assert mat.shape == (0, 64)

    def test_identical_text_embeds_identically(self, fitted):
        mat = fitted.transform(["What is GDP?", "what is gdp?!"])
        assert np.array_equal(mat[0], mat[1])


class TestInputForms:
    def test_fit_accepts_pairs_and_strings(self):
        det = DuplicateDetector(embedding_dim=64).fit(
            [("p1", "What is inflation?"), "Define velocity in physics"]
        )
        assert det.n_questions_ == 2
        assert det.predict([" WHAT IS INFLATION "])[0]

    def test_predict_rejects_bare_string(self, fitted):
        with pytest.raises(InvalidInputError, match="single string"):
            fitted.predict(CEO_INPUT)

    def test_fit_rejects_bad_record(self):
        with pytest.raises(InvalidInputError, match="record 0"):
            DuplicateDetector(embedding_dim=64).fit([3.14])

    def test_as_corpus_records_forms(self):
        records = as_corpus_records(
            [{"id": "a", "text": "t1"}, ("b", "t2"), "t3"]
        )
        assert records == [
            {"id": "a", "text": "t1"},
            {"id": "b", "text": "t2"},
            {"id": "q000002", "text": "t3"},
        ]

    def test_as_text_list_rejects_non_string_item(self):
        with pytest.raises(InvalidInputError, match="item 1"):
            as_text_list(["ok", 7])


class TestSklearnProtocol:
    def test_get_params_round_trip(self):
        det = DuplicateDetector(jaccard_threshold=0.5, embedding_dim=64)
        params = det.get_params()
        assert params["jaccard_threshold"] == 0.5
        assert params["embedding_dim"] == 64
        det.set_params(related_top_n=5)
        assert det.related_top_n == 5

    def test_clone_preserves_params_not_state(self, fitted):
        copy = clone(fitted)
        assert copy.get_params() == fitted.get_params()
        with pytest.raises(NotFittedError):
            copy.predict([CEO_INPUT])

    def test_unfitted_raises(self):
        det = DuplicateDetector(embedding_dim=64)
        with pytest.raises(NotFittedError):
            det.predict([CEO_INPUT])
        with pytest.raises(NotFittedError):
            det.transform([CEO_INPUT])

    def test_params_flow_into_pipeline(self):
        # threshold 1.0 means only identical token sets survive jaccard
        strict = DuplicateDetector(jaccard_threshold=1.0, embedding_dim=64)
        strict.fit(SMALL_CORPUS)
        report = strict.report([CEO_INPUT])[0]
        assert report.exact_duplicates == ["qa"]
        assert report.near_duplicates == []

    def test_partitioned_mode_param(self):
        det = DuplicateDetector(embedding_dim=64, ann_mode="PARTITIONED")
        det.fit(SMALL_CORPUS)
        assert det.context_.index.mode.value == "PARTITIONED"
        assert det.predict([CEO_INPUT])[0]

    def test_doctest_example(self):
        det = DuplicateDetector().fit([
            {"id": "q1", "text": "What is GDP?", "subject": "economics"},
            {"id": "q2", "text": "Define inflation", "subject": "economics"},
        ])
        assert bool(det.predict(["what is gdp"])[0])
