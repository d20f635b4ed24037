"""Tree algebra core: nodes, addresses, tokens and elementary trees.

Elementary trees are the units of the grammar. An initial tree combines by
substitution at a marked slot; an auxiliary tree combines by adjunction,
wrapping around an internal node and re-attaching the displaced subtree at
its foot. Every value here is immutable; composition lives in
:mod:`treegraft.operations`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator

LANGUAGE_TAG_PATTERN = re.compile(r"[a-z][a-z0-9]{1,7}\Z")
CATEGORY_PATTERN = re.compile(r"[A-Z][A-Za-z0-9']*\Z")

# Gorn-style path of 1-based child indices; the empty path is the root.
Address = tuple[int, ...]
ROOT_ADDRESS: Address = ()


class AddressError(ValueError):
    """A node address does not resolve against the given tree."""


def format_address(address: Address) -> str:
    """Render an address as dotted indices, with ``r`` for the root."""
    return ".".join(str(i) for i in address) if address else "r"


def parse_address(text: str) -> Address:
    if text == "r":
        return ROOT_ADDRESS
    try:
        parts = tuple(int(p) for p in text.split("."))
    except ValueError:
        raise AddressError(f"bad address {text!r}") from None
    if any(p < 1 for p in parts):
        raise AddressError(f"bad address {text!r}: indices are 1-based")
    return parts


class NodeKind(Enum):
    INTERNAL = "internal"
    SLOT = "slot"
    FOOT = "foot"
    ANCHOR = "anchor"


@dataclass(frozen=True)
class Token:
    """A surface form tagged with the language that contributed it."""

    surface: str
    language: str

    def __str__(self) -> str:
        return f"{self.surface}:{self.language}"


@dataclass(frozen=True)
class TreeNode:
    """One node of an elementary or derived tree.

    ``surface`` is set on anchors only. ``language`` is stamped onto anchors
    when an elementary tree is instantiated for derivation. ``adjoined``
    marks a node occurrence that has already hosted an adjunction, so no
    second auxiliary can attach at the same spot.
    """

    category: str
    kind: NodeKind
    children: tuple["TreeNode", ...] = ()
    surface: str | None = None
    language: str | None = None
    adjoined: bool = False


def internal(category: str, *children: TreeNode) -> TreeNode:
    return TreeNode(category, NodeKind.INTERNAL, tuple(children))


def slot(category: str) -> TreeNode:
    return TreeNode(category, NodeKind.SLOT)


def foot(category: str) -> TreeNode:
    return TreeNode(category, NodeKind.FOOT)


def anchor(category: str, surface: str, language: str | None = None) -> TreeNode:
    return TreeNode(category, NodeKind.ANCHOR, surface=surface, language=language)


def node_at(root: TreeNode, address: Address) -> TreeNode:
    """Resolve an address or raise :class:`AddressError`."""
    node = root
    for depth, index in enumerate(address):
        if index < 1 or index > len(node.children):
            raise AddressError(
                f"address {format_address(address)} unresolvable: no child "
                f"{index} at {format_address(address[:depth])}"
            )
        node = node.children[index - 1]
    return node


def walk(root: TreeNode) -> Iterator[tuple[Address, TreeNode]]:
    """Preorder traversal yielding (address, node) pairs."""
    stack: list[tuple[Address, TreeNode]] = [(ROOT_ADDRESS, root)]
    while stack:
        address, node = stack.pop()
        yield address, node
        for i in range(len(node.children), 0, -1):
            stack.append((address + (i,), node.children[i - 1]))


def addresses_of_kind(root: TreeNode, kind: NodeKind) -> tuple[Address, ...]:
    return tuple(addr for addr, node in walk(root) if node.kind is kind)


def slot_addresses(root: TreeNode) -> tuple[Address, ...]:
    return addresses_of_kind(root, NodeKind.SLOT)


def foot_addresses(root: TreeNode) -> tuple[Address, ...]:
    return addresses_of_kind(root, NodeKind.FOOT)


def anchor_addresses(root: TreeNode) -> tuple[Address, ...]:
    return addresses_of_kind(root, NodeKind.ANCHOR)


def node_count(root: TreeNode) -> int:
    return sum(1 for _ in walk(root))


class TreeType(Enum):
    INITIAL = "initial"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class ElementaryTree:
    """A named grammar fragment with a language tag.

    Use :func:`validate_elementary` before trusting an instance built by
    hand; trees coming out of :func:`treegraft.grammar.parse_grammar` are
    already checked.
    """

    id: str
    tree_type: TreeType
    language: str
    root: TreeNode

    @cached_property
    def slots(self) -> tuple[Address, ...]:
        return slot_addresses(self.root)

    @cached_property
    def foot(self) -> Address | None:
        feet = foot_addresses(self.root)
        return feet[0] if feet else None

    @cached_property
    def anchors(self) -> tuple[Address, ...]:
        return anchor_addresses(self.root)

    @property
    def is_anchored(self) -> bool:
        return bool(self.anchors)

    @property
    def is_auxiliary(self) -> bool:
        return self.tree_type is TreeType.AUXILIARY


@dataclass(frozen=True)
class Violation:
    """One broken well-formedness rule, located by node address."""

    address: Address
    message: str

    def __str__(self) -> str:
        return f"{self.message} (at {format_address(self.address)})"


def validate_elementary(tree: ElementaryTree) -> list[Violation]:
    """Check every elementary-tree invariant; an empty list means valid."""
    violations: list[Violation] = []
    if not tree.id:
        violations.append(Violation(ROOT_ADDRESS, "empty tree id"))
    if not LANGUAGE_TAG_PATTERN.fullmatch(tree.language):
        violations.append(
            Violation(ROOT_ADDRESS, f"bad language tag {tree.language!r}")
        )
    if tree.root.kind is not NodeKind.INTERNAL:
        violations.append(
            Violation(ROOT_ADDRESS, f"root is a {tree.root.kind.value} node")
        )

    anchors: list[Address] = []
    feet: list[Address] = []
    slots: list[Address] = []
    for address, node in walk(tree.root):
        if not CATEGORY_PATTERN.fullmatch(node.category):
            violations.append(
                Violation(address, f"bad category label {node.category!r}")
            )
        if node.kind is NodeKind.INTERNAL:
            if not node.children:
                violations.append(Violation(address, "internal node without children"))
        else:
            if node.children:
                violations.append(
                    Violation(address, f"{node.kind.value} node has children")
                )
        if node.kind is NodeKind.ANCHOR:
            anchors.append(address)
            if not node.surface or re.search(r"\s", node.surface):
                violations.append(Violation(address, "bad anchor surface"))
        elif node.kind is NodeKind.FOOT:
            feet.append(address)
        elif node.kind is NodeKind.SLOT:
            slots.append(address)

    if tree.tree_type is TreeType.INITIAL:
        for address in feet:
            violations.append(Violation(address, "initial tree contains a foot node"))
    else:
        if not feet:
            violations.append(Violation(ROOT_ADDRESS, "auxiliary tree lacks foot"))
        elif len(feet) > 1:
            for address in feet[1:]:
                violations.append(Violation(address, "multiple foot nodes"))
        else:
            foot_node = node_at(tree.root, feet[0])
            if foot_node.category != tree.root.category:
                violations.append(Violation(feet[0], "foot/root mismatch"))

    if len(anchors) > 1:
        for address in anchors[1:]:
            violations.append(Violation(address, "multiple anchors"))
    if not anchors and not slots:
        violations.append(Violation(ROOT_ADDRESS, "unanchored tree without slots"))
    return violations
