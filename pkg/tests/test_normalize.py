"""Normalization: preprocessing, tokenization, and symbol expansion."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdup.normalize import (
    SymbolDictionary,
    default_symbol_dictionary,
    normalize_symbols,
    normalize_text,
    preprocess,
    tokenize,
)


class TestPreprocess:
    def test_strips_tags_lowercases_drops_punctuation(self):
        assert preprocess("<p>What is GDP?</p>") == "what is gdp"

    def test_collapses_whitespace(self):
        assert preprocess("A  B") == "a b"
        assert preprocess("What   is\t\nGDP ?") == "what is gdp"

    def test_decodes_standard_entities(self):
        assert preprocess("Tom &amp; Jerry &lt;3") == "tom jerry 3"

    def test_keeps_digits(self):
        assert preprocess("How many sides does a 2D hexagon have?") == (
            "how many sides does a 2d hexagon have"
        )

    def test_keeps_greek_letters_and_protected_symbols(self):
        assert preprocess("How many π bonds?") == "how many π bonds"
        assert preprocess("50% of 10°") == "50% of 10°"

    def test_keeps_intra_word_apostrophe(self):
        assert preprocess("Why isn't mercury a solid?") == "why isn't mercury a solid"

    def test_drops_boundary_apostrophes(self):
        assert preprocess("'quoted' words'") == "quoted words"

    def test_empty_and_punctuation_only(self):
        assert preprocess("") == ""
        assert preprocess("<b>?!?</b>") == ""

    @given(st.text(max_size=120))
    def test_stable_under_reapplication(self, raw):
        once = preprocess(raw)
        assert preprocess(once) == once

    @given(st.text(max_size=120))
    def test_output_shape(self, raw):
        out = preprocess(raw)
        assert "  " not in out
        assert out == out.strip()
        assert out == out.lower()


class TestTokenize:
    def test_splits_on_spaces(self):
        assert tokenize("what is gdp") == ["what", "is", "gdp"]

    def test_paper_example_count(self):
        assert len(tokenize("who is the ceo of google")) == 6

    def test_empty(self):
        assert tokenize("") == []

    @given(st.text(max_size=120))
    def test_no_whitespace_or_uppercase_tokens(self, raw):
        for tok in tokenize(preprocess(raw)):
            assert tok
            assert not any(c.isspace() for c in tok)
            assert tok == tok.lower()


class TestSymbolDictionary:
    def test_element_abbreviation_expands(self):
        assert normalize_symbols(["how", "many", "cl", "atoms"]) == [
            "how", "many", "chlorine", "atoms",
        ]

    def test_greek_symbol_expands(self):
        assert normalize_symbols(["π", "bonds"]) == ["pi", "bonds"]

    def test_multi_word_value_splices(self):
        d = SymbolDictionary({"nacl": "sodium chloride"})
        assert normalize_symbols(["dissolve", "nacl"], d) == [
            "dissolve", "sodium", "chloride",
        ]

    def test_unknown_tokens_pass_through(self):
        assert normalize_symbols(["zebra", "crossing"]) == ["zebra", "crossing"]

    def test_empty(self):
        assert normalize_symbols([]) == []

    def test_no_is_not_a_symbol(self):
        # "no" must stay a literal negation word, never an element expansion
        assert "no" not in default_symbol_dictionary()
        assert normalize_symbols(["no", "atoms"]) == ["no", "atoms"]

    def test_default_covers_elements_and_math(self):
        d = default_symbol_dictionary()
        assert d.entries["cl"] == "chlorine"
        assert d.entries["fe"] == "iron"
        assert d.entries["π"] == "pi"
        assert len(d) > 100

    def test_rejects_non_lowercase_keys(self):
        with pytest.raises(ValueError):
            SymbolDictionary({"Cl": "chlorine"})

    def test_rejects_non_idempotent_mapping(self):
        # "a" -> "b" but "b" -> "c" would make a second pass change the output
        with pytest.raises(ValueError):
            SymbolDictionary({"a": "b", "b": "c"})

    @given(
        st.lists(
            st.sampled_from(["cl", "fe", "gdp", "what", "π", "h", "o", "zebra"]),
            max_size=10,
        )
    )
    def test_idempotent(self, tokens):
        once = normalize_symbols(tokens)
        assert normalize_symbols(once) == once


class TestNormalizeText:
    def test_full_pipeline(self):
        assert normalize_text("<p>How many CL atoms?</p>") == [
            "how", "many", "chlorine", "atoms",
        ]

    def test_plain_question(self):
        assert normalize_text("What is GDP?") == ["what", "is", "gdp"]
