"""Rival grammar hypotheses for adjective placement, and corpus scoring.

Three grammars are compared on the same judgment corpus: one that
introduces adnominal adjectives through unanchored auxiliary trees, one
that packages each adjective as an anchored auxiliary (adjective-headed),
and one that gives each noun an adjective slot (noun-headed). Placement
before or after the noun follows each language's declared order class.
"""
from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace
from enum import Enum
from typing import Iterable, Mapping

from .corpus import CorpusItem, Judgment
from .grammar import Grammar, GrammarError
from .parsing import ParseConfig, ParseError, parse
from .trees import (
    LANGUAGE_TAG_PATTERN,
    ElementaryTree,
    TreeType,
    foot,
    internal,
    slot,
)

NOUN_PHRASE = "NP"
ADJECTIVE_PHRASE = "AdjP"


class VariantKind(Enum):
    MODIFIER_TREES = "modifier-trees"
    ADJECTIVE_HEADED = "adjective-headed"
    NOUN_HEADED = "noun-headed"


class AdjectiveOrder(Enum):
    ADJECTIVE_FIRST = "adj-n"
    NOUN_FIRST = "n-adj"


class EvaluationError(Exception):
    pass


def load_language_orders(text: str) -> dict[str, AdjectiveOrder]:
    """Parse the ``languages.tsv`` manifest: one ``tag<TAB>order`` per line."""
    orders: dict[str, AdjectiveOrder] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 2:
            raise EvaluationError(
                f"line {line_no}: expected 'language<TAB>order', found {len(fields)} fields"
            )
        tag, order_text = fields[0].strip(), fields[1].strip()
        if not LANGUAGE_TAG_PATTERN.fullmatch(tag):
            raise EvaluationError(f"line {line_no}: bad language tag {tag!r}")
        try:
            order = AdjectiveOrder(order_text)
        except ValueError:
            raise EvaluationError(
                f"line {line_no}: bad order {order_text!r} (want 'adj-n' or 'n-adj')"
            ) from None
        if tag in orders:
            raise EvaluationError(f"line {line_no}: duplicate language {tag!r}")
        orders[tag] = order
    return orders


def _nominal_modifier_trees(grammar: Grammar) -> list[ElementaryTree]:
    return [
        tree
        for tree in grammar.trees
        if tree.is_auxiliary
        and not tree.is_anchored
        and tree.root.category == NOUN_PHRASE
    ]


def _anchored_initials(grammar: Grammar, category: str) -> list[ElementaryTree]:
    return [
        tree
        for tree in grammar.trees
        if tree.tree_type is TreeType.INITIAL
        and tree.is_anchored
        and tree.root.category == category
    ]


def _order_for(
    tree: ElementaryTree, orders: Mapping[str, AdjectiveOrder]
) -> AdjectiveOrder:
    try:
        return orders[tree.language]
    except KeyError:
        raise EvaluationError(
            f"no adjective order declared for language '{tree.language}' "
            f"(needed by tree '{tree.id}')"
        ) from None


def build_variant(
    grammar: Grammar,
    kind: VariantKind,
    orders: Mapping[str, AdjectiveOrder],
) -> Grammar:
    """Derive one of the rival grammars from the shipped sample."""
    modifiers = _nominal_modifier_trees(grammar)
    adjective_initials = _anchored_initials(grammar, ADJECTIVE_PHRASE)
    noun_initials = _anchored_initials(grammar, NOUN_PHRASE)
    if not modifiers:
        raise EvaluationError(
            "input grammar missing required fragments: no unanchored "
            f"{NOUN_PHRASE} modifier trees"
        )

    if kind is VariantKind.MODIFIER_TREES:
        return grammar

    kept = tuple(tree for tree in grammar.trees if tree not in modifiers)

    if kind is VariantKind.ADJECTIVE_HEADED:
        if not adjective_initials:
            raise EvaluationError(
                "input grammar missing required fragments: no anchored "
                f"{ADJECTIVE_PHRASE} initial trees"
            )
        added = []
        for tree in adjective_initials:
            order = _order_for(tree, orders)
            if order is AdjectiveOrder.ADJECTIVE_FIRST:
                packaged = internal(NOUN_PHRASE, tree.root, foot(NOUN_PHRASE))
            else:
                packaged = internal(NOUN_PHRASE, foot(NOUN_PHRASE), tree.root)
            added.append(
                ElementaryTree(
                    f"{tree.id}_npmod", TreeType.AUXILIARY, tree.language, packaged
                )
            )
        return Grammar(kept + tuple(added))

    if not noun_initials:
        raise EvaluationError(
            "input grammar missing required fragments: no anchored "
            f"{NOUN_PHRASE} initial trees"
        )
    added = []
    for tree in noun_initials:
        order = _order_for(tree, orders)
        if order is AdjectiveOrder.ADJECTIVE_FIRST:
            children = (slot(ADJECTIVE_PHRASE),) + tree.root.children
        else:
            children = tree.root.children + (slot(ADJECTIVE_PHRASE),)
        added.append(
            ElementaryTree(
                f"{tree.id}_adjslot",
                TreeType.INITIAL,
                tree.language,
                dc_replace(tree.root, children=children),
            )
        )
    return Grammar(kept + tuple(added))


@dataclass(frozen=True)
class ReportRow:
    item_id: str
    expected: Judgment
    observed: Judgment
    passed: bool
    witness_count: int


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> int:
        return sum(1 for row in self.rows if row.passed)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0


def run_corpus(
    grammar: Grammar,
    items: Iterable[CorpusItem],
    config: ParseConfig = ParseConfig(),
) -> Report:
    """Judge every item; a row passes when observed matches expected."""
    rows = []
    for item in items:
        item_config = dc_replace(config, start=item.start)
        try:
            derivations = parse(grammar, item.tokens, item_config)
        except (ParseError, GrammarError) as err:
            raise EvaluationError(f"item {item.id}: {err}") from err
        observed = Judgment.DERIVABLE if derivations else Judgment.UNDERIVABLE
        rows.append(
            ReportRow(
                item.id,
                item.expected,
                observed,
                observed is item.expected,
                len(derivations),
            )
        )
    return Report(tuple(rows))


VARIANT_ORDER = (
    VariantKind.MODIFIER_TREES,
    VariantKind.ADJECTIVE_HEADED,
    VariantKind.NOUN_HEADED,
)


@dataclass(frozen=True)
class ComparisonRow:
    item_id: str
    expected: Judgment
    verdicts: tuple[tuple[VariantKind, Judgment], ...]


@dataclass(frozen=True)
class VariantComparison:
    rows: tuple[ComparisonRow, ...]
    matching_variants: tuple[VariantKind, ...]


def compare_variants(
    grammar: Grammar,
    items: Iterable[CorpusItem],
    config: ParseConfig,
    orders: Mapping[str, AdjectiveOrder],
) -> VariantComparison:
    """Judge the corpus under each rival grammar, side by side."""
    item_list = list(items)
    reports = {
        kind: run_corpus(build_variant(grammar, kind, orders), item_list, config)
        for kind in VARIANT_ORDER
    }
    rows = []
    for index, item in enumerate(item_list):
        verdicts = tuple(
            (kind, reports[kind].rows[index].observed) for kind in VARIANT_ORDER
        )
        rows.append(ComparisonRow(item.id, item.expected, verdicts))
    matching = tuple(
        kind for kind in VARIANT_ORDER if reports[kind].all_passed
    )
    return VariantComparison(tuple(rows), matching)


def report_tsv(report: Report) -> str:
    lines = ["id\texpected\tobserved\tpass\twitness_count"]
    for row in report.rows:
        lines.append(
            f"{row.item_id}\t{row.expected.value}\t{row.observed.value}\t"
            f"{'pass' if row.passed else 'fail'}\t{row.witness_count}"
        )
    return "\n".join(lines) + "\n"


def report_table(report: Report) -> str:
    headers = ("id", "expected", "observed", "result", "witnesses")
    body = [
        (
            row.item_id,
            row.expected.value,
            row.observed.value,
            "pass" if row.passed else "FAIL",
            str(row.witness_count),
        )
        for row in report.rows
    ]
    lines = _aligned(headers, body)
    lines.append(f"{report.passed}/{report.total} passed")
    return "\n".join(lines) + "\n"


def comparison_tsv(comparison: VariantComparison) -> str:
    kinds = [kind for kind, _ in comparison.rows[0].verdicts] if comparison.rows else list(VARIANT_ORDER)
    header = "id\texpected\t" + "\t".join(kind.value.replace("-", "_") for kind in kinds)
    lines = [header]
    for row in comparison.rows:
        verdicts = "\t".join(judgment.value for _, judgment in row.verdicts)
        lines.append(f"{row.item_id}\t{row.expected.value}\t{verdicts}")
    return "\n".join(lines) + "\n"


def comparison_table(comparison: VariantComparison) -> str:
    headers = ("id", "expected") + tuple(kind.value for kind in VARIANT_ORDER)
    body = [
        (row.item_id, row.expected.value)
        + tuple(judgment.value for _, judgment in row.verdicts)
        for row in comparison.rows
    ]
    lines = _aligned(headers, body)
    if comparison.matching_variants:
        names = ", ".join(kind.value for kind in comparison.matching_variants)
        lines.append(f"matches all expected judgments: {names}")
    else:
        lines.append("matches all expected judgments: none")
    return "\n".join(lines) + "\n"


def _aligned(headers: tuple[str, ...], body: list[tuple[str, ...]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in body:
        for col, cell in enumerate(row):
            widths[col] = max(widths[col], len(cell))
    def fmt(row: tuple[str, ...]) -> str:
        return "  ".join(cell.ljust(widths[col]) for col, cell in enumerate(row)).rstrip()
    return [fmt(headers)] + [fmt(row) for row in body]
