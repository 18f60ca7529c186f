"""Text preprocessing and symbol normalization.

The normalization pipeline is ``preprocess`` (strip markup and punctuation,
lowercase, collapse whitespace), ``tokenize`` (whitespace split), and
``normalize_symbols`` (dictionary canonicalization of domain symbols such as
chemical element abbreviations).
"""

from __future__ import annotations

import re

from .lexicons import default_symbol_entries

_TAG_RE = re.compile(r"<[^>]*>")

# The five standard XML entity references, decoded after tag removal.
_XML_ENTITIES = {
    "&amp;": "&",
    "&lt;": "<",
    "&gt;": ">",
    "&quot;": '"',
    "&apos;": "'",
}
_ENTITY_RE = re.compile("|".join(re.escape(e) for e in _XML_ENTITIES))


class SymbolDictionary:
    """Token -> canonical-token mapping used by :func:`normalize_symbols`.

    Keys and values must be lowercase, and no key may map (through another
    key) to something that would change again on a second pass: applying the
    dictionary twice must equal applying it once.
    """

    def __init__(self, entries: dict[str, str]):
        for key, value in entries.items():
            if key != key.lower() or value != value.lower():
                raise ValueError(f"symbol dictionary entry {key!r} -> {value!r} must be lowercase")
            if not key or not value.strip():
                raise ValueError("symbol dictionary entries must be non-empty")
            for word in value.split():
                if word in entries and entries[word] != word:
                    raise ValueError(
                        f"entry {key!r} -> {value!r} is not idempotent: "
                        f"{word!r} maps on to {entries[word]!r}"
                    )
        self.entries = dict(entries)
        # Characters inside keys that plain preprocessing would strip; these
        # must survive until normalize_symbols runs.
        self.protected_chars = frozenset(
            ch for key in entries for ch in key if not ch.isalnum()
        )

    @classmethod
    def default(cls) -> "SymbolDictionary":
        return cls(default_symbol_entries())

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    def to_dict(self) -> dict[str, str]:
        return dict(self.entries)


_DEFAULT_DICT: SymbolDictionary | None = None


def default_symbol_dictionary() -> SymbolDictionary:
    global _DEFAULT_DICT
    if _DEFAULT_DICT is None:
        _DEFAULT_DICT = SymbolDictionary.default()
    return _DEFAULT_DICT


def preprocess(raw: str, keep_chars: frozenset[str] | None = None) -> str:
    """Strip HTML tags, decode XML entities, lowercase, drop punctuation.

    Non-alphanumeric characters are removed except those in ``keep_chars``
    (by default the non-alphanumeric characters occurring in the default
    symbol dictionary's keys, so symbol tokens survive for
    :func:`normalize_symbols`). Apostrophes between letters are kept so
    contracted negations ("isn't") stay detectable as single tokens.
    Whitespace is collapsed to single spaces. Total function: any input maps
    to a (possibly empty) clean string.
    """
    if keep_chars is None:
        keep_chars = default_symbol_dictionary().protected_chars
    text = _TAG_RE.sub(" ", raw)
    text = _ENTITY_RE.sub(lambda m: _XML_ENTITIES[m.group(0)], text)
    text = text.lower()
    last = len(text) - 1
    kept = []
    for i, ch in enumerate(text):
        if ch.isalnum() or ch in keep_chars:
            kept.append(ch)
        elif ch == "'" and 0 < i < last and text[i - 1].isalnum() and text[i + 1].isalnum():
            kept.append(ch)
        else:
            kept.append(" ")
    return " ".join("".join(kept).split())


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization; order preserved, no empty tokens."""
    return text.split()


def normalize_symbols(tokens: list[str], dictionary: SymbolDictionary | None = None) -> list[str]:
    """Replace each token found in the dictionary by its canonical form.

    Multi-word canonical forms are spliced in as separate tokens. Idempotent
    by the dictionary's construction invariant.
    """
    if dictionary is None:
        dictionary = default_symbol_dictionary()
    entries = dictionary.entries
    out: list[str] = []
    for token in tokens:
        replacement = entries.get(token)
        if replacement is None:
            out.append(token)
        else:
            out.extend(replacement.split())
    return out


def normalize_text(raw: str, dictionary: SymbolDictionary | None = None) -> list[str]:
    """Full normalization: preprocess, tokenize, and canonicalize symbols."""
    if dictionary is None:
        dictionary = default_symbol_dictionary()
    return normalize_symbols(tokenize(preprocess(raw, dictionary.protected_chars)), dictionary)
