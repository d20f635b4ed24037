from __future__ import annotations

from pathlib import Path

import pytest

from treegraft import Grammar, parse_corpus, parse_grammar

REPO_ROOT = Path(__file__).resolve().parent.parent
GRAMMAR_DIR = REPO_ROOT / "grammars"
CORPUS_PATH = REPO_ROOT / "corpus" / "paper.tsv"
LANGUAGES = ("en", "hi", "es", "it", "ga", "fr")


def load_grammar(*names: str) -> Grammar:
    grammar = Grammar()
    for name in names:
        text = (GRAMMAR_DIR / f"{name}.tag").read_text(encoding="utf-8")
        grammar = grammar.union(parse_grammar(text))
    return grammar


@pytest.fixture(scope="session")
def sample_grammar() -> Grammar:
    """The shipped six-language union."""
    return load_grammar(*LANGUAGES)


@pytest.fixture(scope="session")
def en_grammar() -> Grammar:
    return load_grammar("en")


@pytest.fixture(scope="session")
def hi_grammar() -> Grammar:
    return load_grammar("hi")


@pytest.fixture(scope="session")
def en_hi_grammar() -> Grammar:
    return load_grammar("en", "hi")


@pytest.fixture(scope="session")
def paper_corpus():
    return parse_corpus(CORPUS_PATH.read_text(encoding="utf-8"))
