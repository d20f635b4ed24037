"""Derivability decisions: chart parsing, string enumeration, two-stage mode.

The parser enumerates complete derivations whose yield matches the input
exactly. Tables are indexed by token span; auxiliary analyses carry the
span of the hole their foot leaves open. Derivation sets are canonicalized
so they compare as plain sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .corpus import Judgment
from .grammar import Grammar, validate_grammar
from .operations import Derivation, Operation, Step, _step_sort_key, mark_canonical
from .trees import (
    Address,
    ElementaryTree,
    NodeKind,
    Token,
    TreeNode,
    TreeType,
    walk,
)


class ParseError(ValueError):
    """Bad parser input: invalid grammar, empty tokens, bad config."""


class ParseMode(Enum):
    SINGLE_STAGE = "single"
    TWO_STAGE = "two-stage"


@dataclass(frozen=True)
class ParseConfig:
    """Per-query settings; ``max_trees=None`` sizes the bound automatically."""

    start: str = "S"
    max_derivations: int = 100
    max_trees: int | None = None
    mode: ParseMode = ParseMode.SINGLE_STAGE

    def __post_init__(self) -> None:
        if self.max_derivations < 1:
            raise ParseError("max_derivations must be at least 1")
        if self.max_trees is not None and self.max_trees < 1:
            raise ParseError("max_trees must be at least 1")


@dataclass(frozen=True)
class Verdict:
    status: Judgment
    witnesses: tuple[Derivation, ...]
    search_exhausted: bool


def auto_tree_bound(grammar: Grammar, token_count: int) -> int:
    """Derivation-size cap that no derivation of the input can exceed.

    Every anchored tree contributes exactly one token and every unanchored
    tree sits on an acyclic substitution chain down to anchored material, so
    the count of elementary trees in any derivation is linear in the token
    count, with the unanchored inventory as the slope.
    """
    unanchored = sum(1 for tree in grammar.trees if not tree.is_anchored)
    return (2 * unanchored + 3) * token_count + 1


def tree_budget(grammar: Grammar, token_count: int, max_trees: int | None) -> int:
    if max_trees is not None:
        return max_trees
    return auto_tree_bound(grammar, token_count)


def _require_valid(grammar: Grammar) -> None:
    report = validate_grammar(grammar)
    if not report.ok:
        _, message = report.first_error()
        raise ParseError(f"invalid grammar: {message}")


def _min_tokens(node: TreeNode) -> int:
    """Fewest tokens any complete realization of this subtree can yield."""
    if node.kind is NodeKind.ANCHOR or node.kind is NodeKind.SLOT:
        return 1
    if node.kind is NodeKind.FOOT:
        return 0
    return sum(_min_tokens(child) for child in node.children)


class _Chart:
    """Span-indexed derivation tables for one token sequence.

    ``allowed_unanchored`` restricts which root categories unanchored trees
    may be introduced under; ``None`` means no restriction (single-stage).
    """

    def __init__(
        self,
        grammar: Grammar,
        tokens: tuple[Token, ...],
        allowed_unanchored: frozenset[str] | None = None,
    ):
        self.tokens = tokens
        self.allowed_unanchored = allowed_unanchored
        self.initials: dict[str, list[ElementaryTree]] = {}
        self.auxes: dict[str, list[ElementaryTree]] = {}
        for tree in grammar.trees:
            table = (
                self.initials if tree.tree_type is TreeType.INITIAL else self.auxes
            )
            table.setdefault(tree.root.category, []).append(tree)
        self._foot_path: dict[str, Address] = {
            tree.id: tree.foot for tree in grammar.trees if tree.foot is not None
        }
        self._min_below: dict[tuple[str, Address], int] = {}
        self._least: dict[str, int] = {}
        self._anchor_positions: dict[str, tuple[int, ...]] = {}
        for tree in grammar.trees:
            for address, node in walk(tree.root):
                self._min_below[(tree.id, address)] = _min_tokens(node)
            self._least[tree.id] = self._min_below[(tree.id, ())]
            if tree.anchors:
                node = tree.root
                for index in tree.anchors[0]:
                    node = node.children[index - 1]
                word = Token(node.surface, tree.language)
                self._anchor_positions[tree.id] = tuple(
                    position for position, token in enumerate(tokens) if token == word
                )
        self._initial_cells: dict[tuple, tuple[Derivation, ...]] = {}
        self._aux_cells: dict[tuple, tuple[Derivation, ...]] = {}
        self._node_cells: dict[tuple, list[tuple[Step, ...]]] = {}
        self._children_cells: dict[tuple, list[tuple[Step, ...]]] = {}
        self._in_progress = object()
        self._wrappable = {
            category
            for category, trees in self.auxes.items()
            if any(self._admits(tree) for tree in trees)
        }

    def _admits(self, tree: ElementaryTree) -> bool:
        if tree.is_anchored or self.allowed_unanchored is None:
            return True
        return tree.root.category in self.allowed_unanchored

    def _viable(self, tree: ElementaryTree, i: int, j: int, k: int, l: int) -> bool:
        """Cheap necessary conditions before matching a tree over a window."""
        if self._least[tree.id] > (j - i) - (l - k):
            return False
        positions = self._anchor_positions.get(tree.id)
        if positions is None:
            return True
        return any(i <= p < j and not k <= p < l for p in positions)

    def initial_derivations(self, category: str, i: int, j: int) -> tuple[Derivation, ...]:
        key = (category, i, j)
        cached = self._initial_cells.get(key)
        if cached is self._in_progress:
            raise ParseError("grammar recursion detected; validate the grammar")
        if cached is not None:
            return cached
        self._initial_cells[key] = self._in_progress  # type: ignore[assignment]
        found: list[Derivation] = []
        for tree in self.initials.get(category, ()):
            if not self._admits(tree) or not self._viable(tree, i, j, i, i):
                continue
            for steps in self._match_node(tree, tree.root, (), i, j, None):
                found.append(_assemble(tree.id, steps))
        result = _dedup(found)
        self._initial_cells[key] = result
        return result

    def aux_derivations(
        self, category: str, i: int, j: int, k: int, l: int
    ) -> tuple[Derivation, ...]:
        key = (category, i, j, k, l)
        cached = self._aux_cells.get(key)
        if cached is self._in_progress:
            raise ParseError("grammar recursion detected; validate the grammar")
        if cached is not None:
            return cached
        self._aux_cells[key] = self._in_progress  # type: ignore[assignment]
        found: list[Derivation] = []
        for tree in self.auxes.get(category, ()):
            if not self._admits(tree) or not self._viable(tree, i, j, k, l):
                continue
            for steps in self._match_node(tree, tree.root, (), i, j, (k, l)):
                found.append(_assemble(tree.id, steps))
        result = _dedup(found)
        self._aux_cells[key] = result
        return result

    def _match_node(
        self,
        tree: ElementaryTree,
        node: TreeNode,
        address: Address,
        i: int,
        j: int,
        gap: tuple[int, int] | None,
    ) -> list[tuple[Step, ...]]:
        """All step bundles realizing ``node`` over tokens[i:j].

        ``gap`` is the hole this subtree must hand down to the tree's foot;
        it is only ever passed along the foot path.
        """
        key = (tree.id, address, i, j, gap)
        cached = self._node_cells.get(key)
        if cached is not None:
            return cached
        result = self._compute_node(tree, node, address, i, j, gap)
        self._node_cells[key] = result
        return result

    def _compute_node(
        self,
        tree: ElementaryTree,
        node: TreeNode,
        address: Address,
        i: int,
        j: int,
        gap: tuple[int, int] | None,
    ) -> list[tuple[Step, ...]]:
        kind = node.kind
        if kind is NodeKind.ANCHOR:
            if gap is None and j - i == 1:
                token = self.tokens[i]
                if token.surface == node.surface and token.language == tree.language:
                    return [()]
            return []
        if kind is NodeKind.SLOT:
            if gap is not None:
                return []
            return [
                (Step(Operation.SUBSTITUTE, address, d),)
                for d in self.initial_derivations(node.category, i, j)
            ]
        if kind is NodeKind.FOOT:
            return [()] if gap == (i, j) else []

        results = list(self._match_children(tree, node, address, i, j, gap))
        if node.category not in self._wrappable:
            return results
        # One optional adjunction per node: an auxiliary analysis spans the
        # whole window and the node's own content fills its hole.
        for k2 in range(i, j + 1):
            for l2 in range(k2, j + 1):
                if (k2, l2) == (i, j):
                    continue  # the auxiliary must contribute at least one token
                if gap is not None and not (k2 <= gap[0] and gap[1] <= l2):
                    continue
                inner = self._match_children(tree, node, address, k2, l2, gap)
                if not inner:
                    continue
                for aux_d in self.aux_derivations(node.category, i, j, k2, l2):
                    step = Step(Operation.ADJOIN, address, aux_d)
                    results.extend(bundle + (step,) for bundle in inner)
        return results

    def _match_children(
        self,
        tree: ElementaryTree,
        node: TreeNode,
        address: Address,
        i: int,
        j: int,
        gap: tuple[int, int] | None,
    ) -> list[tuple[Step, ...]]:
        key = (tree.id, address, i, j, gap)
        cached = self._children_cells.get(key)
        if cached is not None:
            return cached
        result = self._compute_children(tree, node, address, i, j, gap)
        self._children_cells[key] = result
        return result

    def _compute_children(
        self,
        tree: ElementaryTree,
        node: TreeNode,
        address: Address,
        i: int,
        j: int,
        gap: tuple[int, int] | None,
    ) -> list[tuple[Step, ...]]:
        children = node.children
        foot_path = self._foot_path.get(tree.id)
        min_tail = [0] * (len(children) + 1)
        for idx in range(len(children) - 1, -1, -1):
            min_tail[idx] = min_tail[idx + 1] + self._min_below[
                (tree.id, address + (idx + 1,))
            ]

        def descend(idx: int, pos: int) -> list[tuple[Step, ...]]:
            if idx == len(children):
                return [()] if pos == j else []
            child = children[idx]
            child_address = address + (idx + 1,)
            on_foot_path = (
                gap is not None
                and foot_path is not None
                and foot_path[: len(child_address)] == child_address
            )
            child_min = self._min_below[(tree.id, child_address)]
            out: list[tuple[Step, ...]] = []
            for q in range(pos + child_min, j - min_tail[idx + 1] + 1):
                if on_foot_path:
                    if not (pos <= gap[0] and gap[1] <= q):
                        continue
                    sub = self._match_node(tree, child, child_address, pos, q, gap)
                else:
                    if gap is not None and gap[0] < gap[1] and pos < gap[1] and gap[0] < q:
                        continue  # a non-foot child cannot absorb hole tokens
                    sub = self._match_node(tree, child, child_address, pos, q, None)
                if not sub:
                    continue
                for tail in descend(idx + 1, q):
                    out.extend(bundle + tail for bundle in sub)
            return out

        # With a hole in play, the real token count is the window minus hole.
        width = j - i - ((gap[1] - gap[0]) if gap is not None else 0)
        if width < min_tail[0]:
            return []
        return descend(0, i)


def _assemble(tree_id: str, steps: tuple[Step, ...]) -> Derivation:
    # Child derivations come out of memo cells already canonical, so only
    # the top-level step order needs fixing.
    return mark_canonical(Derivation(tree_id, tuple(sorted(steps, key=_step_sort_key))))


def _dedup(derivations: Iterable[Derivation]) -> tuple[Derivation, ...]:
    unique = set(derivations)
    return tuple(sorted(unique, key=lambda d: (d.size(), d.to_sexpr())))


def _check_inputs(grammar: Grammar, tokens: tuple[Token, ...]) -> None:
    _require_valid(grammar)
    if not tokens:
        raise ParseError("empty token sequence")


def parse(
    grammar: Grammar, tokens: Iterable[Token], config: ParseConfig = ParseConfig()
) -> set[Derivation]:
    """All derivations of ``tokens`` from ``config.start``, canonicalized."""
    toks = tuple(tokens)
    if config.mode is ParseMode.TWO_STAGE:
        return two_stage_parse(grammar, toks, config)
    _check_inputs(grammar, toks)
    chart = _Chart(grammar, toks)
    budget = tree_budget(grammar, len(toks), config.max_trees)
    return {
        d
        for d in chart.initial_derivations(config.start, 0, len(toks))
        if d.size() <= budget
    }


def judge(
    grammar: Grammar, tokens: Iterable[Token], config: ParseConfig = ParseConfig()
) -> Verdict:
    """Derivability verdict with witness derivations."""
    toks = tuple(tokens)
    derivations = parse(grammar, toks, config)
    status = Judgment.DERIVABLE if derivations else Judgment.UNDERIVABLE
    witnesses = tuple(
        sorted(derivations, key=lambda d: (d.size(), d.to_sexpr()))[
            : config.max_derivations
        ]
    )
    exhausted = tree_budget(grammar, len(toks), config.max_trees) >= auto_tree_bound(
        grammar, len(toks)
    )
    return Verdict(status, witnesses, exhausted)


def two_stage_parse(
    grammar: Grammar, tokens: Iterable[Token], config: ParseConfig
) -> set[Derivation]:
    """Licensed parsing: anchored analyses first, then unanchored trees.

    Stage one charts every anchored-only analysis over every sub-span.
    Stage two reruns the full grammar but admits an unanchored tree only
    where stage one produced an item with a matching node category.
    """
    toks = tuple(tokens)
    _check_inputs(grammar, toks)
    n = len(toks)
    anchored = Grammar(tuple(t for t in grammar.trees if t.is_anchored))
    stage_one = _Chart(anchored, toks)
    items: list[Derivation] = []
    initial_categories = {
        t.root.category for t in anchored.trees if t.tree_type is TreeType.INITIAL
    }
    aux_categories = {
        t.root.category for t in anchored.trees if t.tree_type is TreeType.AUXILIARY
    }
    for category in initial_categories:
        for i in range(n):
            for j in range(i + 1, n + 1):
                items.extend(stage_one.initial_derivations(category, i, j))
    for category in aux_categories:
        for i in range(n):
            for j in range(i + 1, n + 1):
                for k in range(i, j + 1):
                    for l in range(k, j + 1):
                        items.extend(stage_one.aux_derivations(category, i, j, k, l))

    used: set[str] = set()
    for item in items:
        _collect_tree_ids(item, used)
    licensed = frozenset(
        node.category
        for tree_id in used
        for _, node in walk(grammar.tree(tree_id).root)
    )

    stage_two = _Chart(grammar, toks, allowed_unanchored=licensed)
    budget = tree_budget(grammar, n, config.max_trees)
    return {
        d
        for d in stage_two.initial_derivations(config.start, 0, n)
        if d.size() <= budget
    }


def _collect_tree_ids(derivation: Derivation, into: set[str]) -> None:
    into.add(derivation.tree_id)
    for step in derivation.steps:
        _collect_tree_ids(step.child, into)


_HOLE = object()


class _Generator:
    """Bottom-up enumeration of complete-derivation yields by length budget."""

    def __init__(self, grammar: Grammar, max_len: int):
        self.max_len = max_len
        self.initials: dict[str, list[ElementaryTree]] = {}
        self.auxes: dict[str, list[ElementaryTree]] = {}
        for tree in grammar.trees:
            table = (
                self.initials if tree.tree_type is TreeType.INITIAL else self.auxes
            )
            table.setdefault(tree.root.category, []).append(tree)
        self._initial_cells: dict[tuple, frozenset] = {}
        self._pair_cells: dict[tuple, frozenset] = {}
        self._in_progress = object()

    def strings(self, category: str, budget: int) -> frozenset:
        if budget < 1:
            return frozenset()
        key = (category, budget)
        cached = self._initial_cells.get(key)
        if cached is self._in_progress:
            raise ParseError("grammar recursion detected; validate the grammar")
        if cached is not None:
            return cached
        self._initial_cells[key] = self._in_progress  # type: ignore[assignment]
        out: set = set()
        for tree in self.initials.get(category, ()):
            out.update(self._node_strings(tree, tree.root, budget))
        result = frozenset(out)
        self._initial_cells[key] = result
        return result

    def wrap_pairs(self, category: str, budget: int) -> frozenset:
        """(left, right) yield pairs of complete auxiliary analyses."""
        if budget < 1:
            return frozenset()
        key = (category, budget)
        cached = self._pair_cells.get(key)
        if cached is self._in_progress:
            raise ParseError("grammar recursion detected; validate the grammar")
        if cached is not None:
            return cached
        self._pair_cells[key] = self._in_progress  # type: ignore[assignment]
        out: set = set()
        for tree in self.auxes.get(category, ()):
            for sequence in self._node_strings(tree, tree.root, budget):
                split = sequence.index(_HOLE)
                out.add((sequence[:split], sequence[split + 1 :]))
        result = frozenset(out)
        self._pair_cells[key] = result
        return result

    def _node_strings(self, tree: ElementaryTree, node: TreeNode, budget: int):
        kind = node.kind
        if kind is NodeKind.ANCHOR:
            if budget < 1:
                return []
            return [(Token(node.surface, tree.language),)]
        if kind is NodeKind.SLOT:
            return list(self.strings(node.category, budget))
        if kind is NodeKind.FOOT:
            return [(_HOLE,)]
        contents = self._concat(tree, node.children, budget)
        results = list(contents)
        for content in contents:
            room = budget - _real_len(content)
            if room < 1:
                continue
            for left, right in self.wrap_pairs(node.category, room):
                results.append(left + content + right)
        return results

    def _concat(self, tree: ElementaryTree, children: tuple[TreeNode, ...], budget: int):
        if not children:
            return [()]
        head, tail = children[0], children[1:]
        tail_min = sum(_min_tokens(c) for c in tail)
        out = []
        for prefix in self._node_strings(tree, head, budget - tail_min):
            for rest in self._concat(tree, tail, budget - _real_len(prefix)):
                out.append(prefix + rest)
        return out


def _real_len(sequence: tuple) -> int:
    return sum(1 for item in sequence if item is not _HOLE)


def enumerate_strings(
    grammar: Grammar, start: str, max_len: int
) -> set[tuple[Token, ...]]:
    """Exactly the complete-derivation yields of length <= ``max_len``."""
    _require_valid(grammar)
    if max_len < 0:
        raise ParseError("max_len must be at least 0")
    if max_len == 0:
        return set()
    generator = _Generator(grammar, max_len)
    return set(generator.strings(start, max_len))
