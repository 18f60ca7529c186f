"""Wire format: canonical JSON and the published response schemas."""

import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdup.pipeline import BulkItem, bulk_check, check
from qdup.schemas import (
    BULK_ITEM_SCHEMA,
    DUPLICATE_REPORT_SCHEMA,
    ONBOARD_RESPONSE_SCHEMA,
    STATS_SCHEMA,
    bulk_item_to_dict,
    canonical_json,
    report_to_dict,
)
from tests.conftest import CEO_INPUT

json_scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(min_value=-(2**53), max_value=2**53),
    st.floats(allow_nan=False, allow_infinity=False),
    st.text(max_size=20),
)
json_values = st.recursive(
    json_scalars,
    lambda children: st.one_of(
        st.lists(children, max_size=4),
        st.dictionaries(st.text(max_size=8), children, max_size=4),
    ),
    max_leaves=12,
)


class TestCanonicalJson:
    def test_compact_separators(self):
        assert canonical_json({"a": [1, 2], "b": "x"}) == '{"a":[1,2],"b":"x"}'

    def test_non_ascii_unescaped(self):
        assert canonical_json({"t": "π°"}) == '{"t":"π°"}'

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            canonical_json({"x": float("nan")})

    @settings(max_examples=80, deadline=None)
    @given(json_values)
    def test_round_trips(self, value):
        assert json.loads(canonical_json(value)) == value

    @settings(max_examples=40, deadline=None)
    @given(json_values)
    def test_deterministic(self, value):
        assert canonical_json(value) == canonical_json(value)

    def test_no_spaces_outside_strings(self):
        text = canonical_json({"k": [1, 2, 3], "m": {"n": True}})
        assert " " not in text


class TestReportSchema:
    def test_fixture_report_validates(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        data = report_to_dict(report)
        jsonschema.validate(data, DUPLICATE_REPORT_SCHEMA)

    def test_no_duplicate_report_validates(self, small_store, small_ctx):
        report = check("name the longest river in south america", small_store,
                       context=small_ctx)
        jsonschema.validate(report_to_dict(report), DUPLICATE_REPORT_SCHEMA)

    def test_field_names_lower_snake_case(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        data = report_to_dict(report)

        def walk(node):
            if isinstance(node, dict):
                for key, value in node.items():
                    assert key == key.lower() and " " not in key
                    walk(value)
            elif isinstance(node, list):
                for value in node:
                    walk(value)

        walk(data)

    def test_trace_entries_are_strings(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        data = report_to_dict(report)
        for entry in data["trace"]:
            assert isinstance(entry["stage"], str)
            assert isinstance(entry["action"], str)

    def test_extra_field_rejected_by_schema(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        data = report_to_dict(report)
        data["surprise"] = 1
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(data, DUPLICATE_REPORT_SCHEMA)

    def test_serializes_canonically(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        text = canonical_json(report_to_dict(report))
        assert json.loads(text)["input_id"] == report.input_id


class TestBulkItemSchema:
    def test_ok_and_error_rows_validate(self, small_store, small_ctx):
        items = bulk_check([CEO_INPUT, "   "], small_store, context=small_ctx)
        good = bulk_item_to_dict(items[0], text=CEO_INPUT)
        bad = bulk_item_to_dict(items[1], text="   ")
        jsonschema.validate(good, BULK_ITEM_SCHEMA)
        jsonschema.validate(bad, BULK_ITEM_SCHEMA)
        assert good["report"] is not None and good["error"] is None
        assert bad["report"] is None and isinstance(bad["error"], str)

    def test_text_defaults_to_null(self):
        item = BulkItem(row=0, report=None, error="boom")
        data = bulk_item_to_dict(item)
        assert data["text"] is None
        jsonschema.validate(data, BULK_ITEM_SCHEMA)


class TestServiceShapes:
    def test_onboard_shape_validates(self, small_store, small_ctx):
        report = check(CEO_INPUT, small_store, context=small_ctx)
        payload = {"id": "new-question", "report": report_to_dict(report)}
        jsonschema.validate(payload, ONBOARD_RESPONSE_SCHEMA)

    def test_stats_shape_validates(self):
        payload = {
            "questions": 8,
            "subjects": {"business": 6, "biology": 1, "economics": 1},
            "index_mode": "EXACT",
            "embedding_dim": 64,
        }
        jsonschema.validate(payload, STATS_SCHEMA)

    def test_stats_rejects_unknown_mode(self):
        payload = {
            "questions": 1,
            "subjects": {},
            "index_mode": "FUZZY",
            "embedding_dim": 64,
        }
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(payload, STATS_SCHEMA)
