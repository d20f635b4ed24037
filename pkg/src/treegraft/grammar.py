"""Grammar container plus the line-oriented ``.tag`` text format.

One tree per line::

    tree <id> <language> <initial|auxiliary> <s-expression>

In the s-expression, ``(CAT child...)`` is an internal node, ``CAT^`` a
substitution slot, ``CAT*`` a foot node and ``#surface`` a lexical anchor
(the anchor takes its category from the parent node). Lines whose first
non-blank character is ``#`` are comments. Serialization is canonical:
trees sorted by id, single spaces, one per line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .trees import (
    CATEGORY_PATTERN,
    ElementaryTree,
    NodeKind,
    TreeNode,
    TreeType,
    Violation,
    format_address,
    validate_elementary,
    walk,
)


class GrammarError(Exception):
    """Malformed grammar text or an ill-formed grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}: " if column is None else f"line {line}, column {column}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class Grammar:
    """An id-keyed set of elementary trees, kept sorted for canonical output."""

    trees: tuple[ElementaryTree, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.trees, key=lambda t: t.id))
        seen: set[str] = set()
        for tree in ordered:
            if tree.id in seen:
                raise GrammarError(f"duplicate tree id '{tree.id}'")
            seen.add(tree.id)
        object.__setattr__(self, "trees", ordered)

    @cached_property
    def _index(self) -> dict[str, ElementaryTree]:
        return {tree.id: tree for tree in self.trees}

    def tree(self, tree_id: str) -> ElementaryTree:
        try:
            return self._index[tree_id]
        except KeyError:
            raise GrammarError(f"unknown tree id '{tree_id}'") from None

    def __contains__(self, tree_id: str) -> bool:
        return tree_id in self._index

    def __len__(self) -> int:
        return len(self.trees)

    @property
    def languages(self) -> frozenset[str]:
        return frozenset(tree.language for tree in self.trees)

    def union(self, other: "Grammar") -> "Grammar":
        overlap = self._index.keys() & other._index.keys()
        if overlap:
            raise GrammarError(
                "duplicate tree id in union: " + ", ".join(sorted(overlap))
            )
        return Grammar(self.trees + other.trees)


_TREE_LINE = re.compile(
    r"^(?P<lead>\s*)tree\s+(?P<id>\S+)\s+(?P<lang>\S+)\s+(?P<type>\S+)\s+(?P<rest>.*)$"
)
_LEAF_TOKEN = re.compile(r"[^\s()]+")


class _SexprScanner:
    """Cursor over one line of s-expression text with column tracking."""

    def __init__(self, text: str, line: int, offset: int):
        self.text = text
        self.line = line
        self.offset = offset  # 0-based index of text[0] within the raw line
        self.pos = 0

    def error(self, message: str) -> GrammarError:
        return GrammarError(message, self.line, self.offset + self.pos + 1)

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_leaf_token(self) -> str:
        match = _LEAF_TOKEN.match(self.text, self.pos)
        if not match:
            raise self.error("expected a node token")
        self.pos = match.end()
        return match.group(0)

    def parse_node(self, parent_category: str | None) -> TreeNode:
        self.skip_spaces()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            self.skip_spaces()
            start = self.pos
            category = self.take_leaf_token()
            if not CATEGORY_PATTERN.fullmatch(category):
                self.pos = start
                raise self.error(f"bad category label {category!r}")
            children: list[TreeNode] = []
            while True:
                self.skip_spaces()
                nxt = self.peek()
                if nxt == ")":
                    self.pos += 1
                    return TreeNode(category, NodeKind.INTERNAL, tuple(children))
                if not nxt:
                    raise self.error("unclosed '('")
                children.append(self.parse_node(category))
        if ch == ")":
            raise self.error("unexpected ')'")
        if not ch:
            raise self.error("expected a node")
        start = self.pos
        token = self.take_leaf_token()
        if token.startswith("#"):
            surface = token[1:]
            if not surface:
                self.pos = start
                raise self.error("empty anchor surface")
            if parent_category is None:
                self.pos = start
                raise self.error("anchor cannot be the root")
            return TreeNode(parent_category, NodeKind.ANCHOR, surface=surface)
        if token.endswith("^"):
            kind, category = NodeKind.SLOT, token[:-1]
        elif token.endswith("*"):
            kind, category = NodeKind.FOOT, token[:-1]
        else:
            # A bare category leaf parses as a childless internal node and is
            # rejected by validation, pointing at the likely missing marker.
            kind, category = NodeKind.INTERNAL, token
        if not CATEGORY_PATTERN.fullmatch(category):
            self.pos = start
            raise self.error(f"bad category label {category!r}")
        return TreeNode(category, kind)

    def expect_end(self) -> None:
        self.skip_spaces()
        if self.pos < len(self.text):
            raise self.error("trailing text after tree")


def _parse_tree_line(raw: str, line: int) -> ElementaryTree:
    match = _TREE_LINE.match(raw)
    if not match:
        column = len(raw) - len(raw.lstrip()) + 1
        raise GrammarError(
            "expected 'tree <id> <language> <initial|auxiliary> <s-expression>'",
            line,
            column,
        )
    type_text = match.group("type")
    if type_text == "initial":
        tree_type = TreeType.INITIAL
    elif type_text == "auxiliary":
        tree_type = TreeType.AUXILIARY
    else:
        raise GrammarError(
            f"bad tree type {type_text!r} (expected 'initial' or 'auxiliary')",
            line,
            match.start("type") + 1,
        )
    scanner = _SexprScanner(match.group("rest"), line, match.start("rest"))
    scanner.skip_spaces()
    if scanner.peek() != "(":
        raise scanner.error("expected '(' to open the tree")
    root = scanner.parse_node(None)
    scanner.expect_end()
    return ElementaryTree(match.group("id"), tree_type, match.group("lang"), root)


def parse_grammar(text: str) -> Grammar:
    """Parse and fully validate grammar text, raising :class:`GrammarError`."""
    trees: list[ElementaryTree] = []
    lines_by_id: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tree = _parse_tree_line(raw, line_no)
        if tree.id in lines_by_id:
            raise GrammarError(f"duplicate tree id '{tree.id}'", line_no)
        lines_by_id[tree.id] = line_no
        trees.append(tree)
    grammar = Grammar(tuple(trees))
    report = validate_grammar(grammar)
    if not report.ok:
        tree_id, message = report.first_error()
        raise GrammarError(message, lines_by_id.get(tree_id))
    return grammar


def _sexpr(node: TreeNode) -> str:
    if node.kind is NodeKind.INTERNAL:
        inner = "".join(" " + _sexpr(child) for child in node.children)
        return f"({node.category}{inner})"
    if node.kind is NodeKind.SLOT:
        return f"{node.category}^"
    if node.kind is NodeKind.FOOT:
        return f"{node.category}*"
    return f"#{node.surface}"


def serialize_tree(tree: ElementaryTree) -> str:
    return f"tree {tree.id} {tree.language} {tree.tree_type.value} {_sexpr(tree.root)}"


def serialize_grammar(grammar: Grammar) -> str:
    """Canonical text: trees sorted by id, one per line, trailing newline."""
    if not grammar.trees:
        return ""
    return "\n".join(serialize_tree(tree) for tree in grammar.trees) + "\n"


@dataclass(frozen=True)
class GrammarReport:
    """Findings from grammar-level validation; warnings do not invalidate."""

    violations: tuple[tuple[str, Violation], ...]
    cycles: tuple[tuple[str, ...], ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.cycles

    @property
    def is_empty(self) -> bool:
        return self.ok and not self.warnings

    def first_error(self) -> tuple[str, str]:
        """(tree id, message) of the first hard error; report must not be ok."""
        if self.violations:
            tree_id, violation = self.violations[0]
            return tree_id, f"tree '{tree_id}': {violation}"
        categories = self.cycles[0]
        return "", "unanchored substitution cycle: " + " -> ".join(
            categories + (categories[0],)
        )

    def lines(self) -> list[str]:
        out = [f"error: tree '{tid}': {v}" for tid, v in self.violations]
        for categories in self.cycles:
            out.append(
                "error: unanchored substitution cycle: "
                + " -> ".join(categories + (categories[0],))
            )
        out.extend(f"warning: {w}" for w in self.warnings)
        return out


def _unanchored_initial_cycles(grammar: Grammar) -> tuple[tuple[str, ...], ...]:
    """Cycles among categories that root unanchored initial trees.

    Substitution chains through unanchored initial trees consume no input of
    their own, so a cycle here would let derivations grow without bound.
    Auxiliary trees are exempt: adjunction always wraps real material.
    """
    unanchored_roots: set[str] = set()
    edges: dict[str, set[str]] = {}
    for tree in grammar.trees:
        if tree.tree_type is TreeType.INITIAL and not tree.is_anchored:
            unanchored_roots.add(tree.root.category)
    for tree in grammar.trees:
        if tree.tree_type is not TreeType.INITIAL or tree.is_anchored:
            continue
        source = tree.root.category
        for _, node in walk(tree.root):
            if node.kind is NodeKind.SLOT and node.category in unanchored_roots:
                edges.setdefault(source, set()).add(node.category)

    cycles: list[tuple[str, ...]] = []
    seen_cycles: set[frozenset[str]] = set()
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(category: str, stack: list[str]) -> None:
        state[category] = 1
        stack.append(category)
        for target in sorted(edges.get(category, ())):
            if state.get(target) == 1:
                cycle = tuple(stack[stack.index(target):])
                key = frozenset(cycle)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    cycles.append(cycle)
            elif state.get(target) is None:
                visit(target, stack)
        stack.pop()
        state[category] = 2

    for category in sorted(unanchored_roots):
        if state.get(category) is None:
            visit(category, [])
    return tuple(cycles)


def validate_grammar(grammar: Grammar) -> GrammarReport:
    """Per-tree violations, substitution cycles, and unfillable-slot warnings."""
    violations: list[tuple[str, Violation]] = []
    for tree in grammar.trees:
        for violation in validate_elementary(tree):
            violations.append((tree.id, violation))

    cycles = _unanchored_initial_cycles(grammar)

    rootable = {tree.root.category for tree in grammar.trees}
    warnings: list[str] = []
    for tree in grammar.trees:
        for address, node in walk(tree.root):
            if node.kind is NodeKind.SLOT and node.category not in rootable:
                warnings.append(
                    f"unfillable slot: no tree roots category {node.category} "
                    f"(tree '{tree.id}' at {format_address(address)})"
                )
    return GrammarReport(tuple(violations), cycles, tuple(warnings))
