"""Judgment corpus and token-string formats.

Token strings are whitespace-separated ``surface:lang`` items. A corpus is
a five-field TSV: id, expected judgment, start category, token string, free
note. ``#`` lines are comments; every diagnostic carries its line number.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .trees import CATEGORY_PATTERN, LANGUAGE_TAG_PATTERN, Token


class Judgment(Enum):
    DERIVABLE = "derivable"
    UNDERIVABLE = "underivable"


class CorpusError(Exception):
    """Malformed corpus or token text."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class CorpusItem:
    id: str
    expected: Judgment
    start: str
    tokens: tuple[Token, ...]
    note: str


def parse_token_string(text: str) -> tuple[Token, ...]:
    """Parse ``surface:lang`` items; an empty string yields no tokens."""
    tokens: list[Token] = []
    for item in text.split():
        if ":" not in item:
            raise CorpusError(f"missing language tag in token {item!r}")
        surface, _, language = item.rpartition(":")
        if not surface:
            raise CorpusError(f"empty surface in token {item!r}")
        if not language:
            raise CorpusError(f"missing language tag in token {item!r}")
        if not LANGUAGE_TAG_PATTERN.fullmatch(language):
            raise CorpusError(f"bad language tag {language!r} in token {item!r}")
        tokens.append(Token(surface, language))
    return tuple(tokens)


def format_token_string(tokens: tuple[Token, ...] | list[Token]) -> str:
    return " ".join(str(token) for token in tokens)


def parse_corpus(text: str) -> tuple[CorpusItem, ...]:
    """Parse corpus TSV text, preserving item order."""
    items: list[CorpusItem] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = raw.rstrip("\n").split("\t")
        if len(fields) != 5:
            raise CorpusError(
                f"expected 5 tab-separated fields, found {len(fields)}", line_no
            )
        item_id, expected_text, start, token_text, note = fields
        if not item_id:
            raise CorpusError("empty item id", line_no)
        try:
            expected = Judgment(expected_text)
        except ValueError:
            raise CorpusError(
                f"bad expected value {expected_text!r} (want 'derivable' or "
                "'underivable')",
                line_no,
            ) from None
        if not CATEGORY_PATTERN.fullmatch(start):
            raise CorpusError(f"bad start category {start!r}", line_no)
        try:
            tokens = parse_token_string(token_text)
        except CorpusError as err:
            raise CorpusError(err.message, line_no) from None
        if not tokens:
            raise CorpusError("empty token sequence", line_no)
        items.append(CorpusItem(item_id, expected, start, tokens, note))
    return tuple(items)
