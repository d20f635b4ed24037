"""Brute-force derivation search used as an independent correctness check.

This enumerator shares no traversal code, tables or memoization with
:mod:`treegraft.parsing`. It walks elementary trees top-down, trying every
(tree, operation, address) choice against explicit slices of the target
token list, and backtracks on any mismatch. Exponential, so inputs are
capped at eight tokens.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .grammar import Grammar, validate_grammar
from .operations import Derivation, Operation, Step
from .parsing import auto_tree_bound
from .trees import ElementaryTree, NodeKind, Token, TreeNode, TreeType

MAX_ORACLE_TOKENS = 8

# Marks the position a foot node must account for inside an auxiliary target.
_FOOT_MARK = object()


class OracleError(ValueError):
    """Oracle input guard tripped."""


def _least_tokens(node: TreeNode) -> int:
    """Fewest real tokens any complete realization of ``node`` can yield."""
    if node.kind is NodeKind.ANCHOR or node.kind is NodeKind.SLOT:
        return 1
    if node.kind is NodeKind.FOOT:
        return 0
    return sum(_least_tokens(child) for child in node.children)


def _real_length(segment: tuple) -> int:
    return sum(1 for item in segment if item is not _FOOT_MARK)


class _Lexicon:
    """Static by-category tree index; holds no per-span or per-result state."""

    def __init__(self, grammar: Grammar):
        self.initials: dict[str, list[ElementaryTree]] = {}
        self.auxes: dict[str, list[ElementaryTree]] = {}
        for tree in grammar.trees:
            table = self.initials if tree.tree_type is TreeType.INITIAL else self.auxes
            table.setdefault(tree.root.category, []).append(tree)
        self.least: dict[str, int] = {
            tree.id: _least_tokens(tree.root) for tree in grammar.trees
        }
        self.anchor_token: dict[str, Token] = {}
        for tree in grammar.trees:
            if tree.anchors:
                node = tree.root
                for index in tree.anchors[0]:
                    node = node.children[index - 1]
                self.anchor_token[tree.id] = Token(node.surface, tree.language)
        # Auxiliaries that fit identically (same shape; same language when
        # anchored) are searched once and credited to every member.
        self.aux_groups: dict[str, list[list[ElementaryTree]]] = {}
        for category, trees in self.auxes.items():
            grouped: dict[tuple, list[ElementaryTree]] = {}
            for tree in trees:
                language = tree.language if tree.anchors else ""
                grouped.setdefault(
                    (_structure_key(tree.root), language), []
                ).append(tree)
            self.aux_groups[category] = list(grouped.values())


def _structure_key(node: TreeNode) -> str:
    inner = " ".join(_structure_key(child) for child in node.children)
    return f"({node.category}|{node.kind.value}|{node.surface or ''} {inner})"


def oracle_parse(
    grammar: Grammar, tokens: Iterable[Token], start: str
) -> set[Derivation]:
    """Exhaustively enumerate derivations of ``tokens`` from ``start``."""
    target = tuple(tokens)
    if len(target) > MAX_ORACLE_TOKENS:
        raise OracleError(
            f"oracle is capped at {MAX_ORACLE_TOKENS} tokens, got {len(target)}"
        )
    report = validate_grammar(grammar)
    if not report.ok:
        raise OracleError("invalid grammar: " + report.first_error()[1])
    if not target:
        raise OracleError("empty token sequence")
    budget = auto_tree_bound(grammar, len(target))
    lexicon = _Lexicon(grammar)
    found: set[Derivation] = set()
    for tree in lexicon.initials.get(start, ()):
        for steps, _ in _fit_tree(lexicon, tree, target, budget - 1):
            found.add(Derivation(tree.id, steps).canonical())
    return found


def _fit_tree(
    lexicon: _Lexicon,
    tree: ElementaryTree,
    segment: tuple,
    budget: int,
) -> Iterator[tuple[tuple[Step, ...], int]]:
    """Yield (steps, trees-used-below) fitting ``tree`` onto ``segment`` exactly.

    For auxiliary trees the segment contains one ``_FOOT_MARK`` where the
    host material will sit.
    """
    gate = lexicon.anchor_token.get(tree.id)
    if gate is not None and gate not in segment:
        return  # the tree's own anchor must surface somewhere in its span
    yield from _fit_node(lexicon, tree, tree.root, (), segment, budget)


def _fit_node(
    lexicon: _Lexicon,
    tree: ElementaryTree,
    node: TreeNode,
    address: tuple[int, ...],
    segment: tuple,
    budget: int,
) -> Iterator[tuple[tuple[Step, ...], int]]:
    kind = node.kind
    if kind is NodeKind.ANCHOR:
        if len(segment) == 1 and segment[0] == Token(node.surface, tree.language):
            yield (), 0
        return
    if kind is NodeKind.FOOT:
        if len(segment) == 1 and segment[0] is _FOOT_MARK:
            yield (), 0
        return
    if kind is NodeKind.SLOT:
        if not segment or _FOOT_MARK in segment or budget < 1:
            return
        for filler in lexicon.initials.get(node.category, ()):
            if lexicon.least[filler.id] > len(segment):
                continue
            for steps, used in _fit_tree(lexicon, filler, segment, budget - 1):
                yield (
                    Step(Operation.SUBSTITUTE, address, Derivation(filler.id, steps)),
                ), used + 1
        return

    # Internal node: children split the segment, with or without one
    # auxiliary tree wrapped around the whole of it.
    yield from _fit_children(lexicon, tree, node, address, segment, budget)
    if budget < 1:
        return
    wrapper_groups = lexicon.aux_groups.get(node.category)
    if not wrapper_groups:
        return
    content_least = sum(_least_tokens(child) for child in node.children)
    for left, middle, right in _three_way_splits(segment):
        if not left and not right:
            continue  # the auxiliary must take at least one token
        if _FOOT_MARK in left or _FOOT_MARK in right:
            continue
        if _real_length(middle) < content_least:
            continue  # the wrapped content cannot supply its own leaves
        flank = len(left) + len(right)
        aux_segment = left + (_FOOT_MARK,) + right
        # The content fits do not depend on the auxiliary choice, so they are
        # enumerated once per split and combined under the shared budget.
        inner_fits: list | None = None
        dead = False
        for group in wrapper_groups:
            if dead:
                break
            probe = group[0]
            if lexicon.least[probe.id] > flank:
                continue
            for aux_steps, aux_used in _fit_tree(lexicon, probe, aux_segment, budget - 1):
                if inner_fits is None:
                    inner_fits = list(
                        _fit_children(lexicon, tree, node, address, middle, budget - 1)
                    )
                    if not inner_fits:
                        dead = True
                        break
                for aux in group:
                    wrap = Step(
                        Operation.ADJOIN, address, Derivation(aux.id, aux_steps)
                    )
                    for inner_steps, inner_used in inner_fits:
                        if aux_used + 1 + inner_used > budget:
                            continue
                        yield inner_steps + (wrap,), aux_used + 1 + inner_used


def _fit_children(
    lexicon: _Lexicon,
    tree: ElementaryTree,
    node: TreeNode,
    address: tuple[int, ...],
    segment: tuple,
    budget: int,
) -> Iterator[tuple[tuple[Step, ...], int]]:
    if budget < 0:
        return

    def over(children: tuple[TreeNode, ...], index: int, rest: tuple, room: int):
        if not children:
            if not rest:
                yield (), 0
            return
        head, tail = children[0], children[1:]
        head_address = address + (index,)
        head_least = _least_tokens(head)
        tail_least = sum(_least_tokens(child) for child in tail)
        for cut in range(len(rest) + 1):
            piece, remainder = rest[:cut], rest[cut:]
            if _real_length(piece) < head_least or _real_length(remainder) < tail_least:
                continue
            tail_fits: list | None = None
            for head_steps, head_used in _fit_node(
                lexicon, tree, head, head_address, piece, room
            ):
                if tail_fits is None:
                    tail_fits = list(over(tail, index + 1, remainder, room))
                    if not tail_fits:
                        break
                for tail_steps, tail_used in tail_fits:
                    if head_used + tail_used > room:
                        continue
                    yield head_steps + tail_steps, head_used + tail_used

    yield from over(node.children, 1, segment, budget)


def _three_way_splits(segment: tuple) -> Iterator[tuple[tuple, tuple, tuple]]:
    for k in range(len(segment) + 1):
        for l in range(k, len(segment) + 1):
            yield segment[:k], segment[k:l], segment[l:]
