"""Composition operations over derived trees, and derivation replay.

Substitution replaces a slot leaf with an initial-rooted tree; adjunction
splices an auxiliary-rooted tree around an internal node. Both are pure:
the host is never mutated. A :class:`Derivation` records which elementary
trees combined where, and :func:`replay` rebuilds the derived tree from it.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING

from .trees import (
    Address,
    ElementaryTree,
    NodeKind,
    Token,
    TreeNode,
    AddressError,
    foot_addresses,
    format_address,
    node_at,
    node_count,
    walk,
)

if TYPE_CHECKING:  # pragma: no cover
    from .grammar import Grammar


class OperationError(ValueError):
    """A substitution, adjunction or replay precondition failed."""


@dataclass(frozen=True)
class DerivedTree:
    """A phrase-structure tree built from elementary trees."""

    root: TreeNode

    @property
    def is_complete(self) -> bool:
        return not any(
            node.kind in (NodeKind.SLOT, NodeKind.FOOT) for _, node in walk(self.root)
        )

    @property
    def size(self) -> int:
        return node_count(self.root)


def instantiate(tree: ElementaryTree) -> DerivedTree:
    """Turn an elementary tree into a derived tree, stamping anchor languages."""

    def stamp(node: TreeNode) -> TreeNode:
        if node.kind is NodeKind.ANCHOR:
            return replace(node, language=tree.language)
        if node.children:
            return replace(node, children=tuple(stamp(c) for c in node.children))
        return node

    return DerivedTree(stamp(tree.root))


def _replace_at(root: TreeNode, address: Address, replacement: TreeNode) -> TreeNode:
    if not address:
        return replacement
    index = address[0]
    child = root.children[index - 1]
    rebuilt = _replace_at(child, address[1:], replacement)
    children = root.children[: index - 1] + (rebuilt,) + root.children[index:]
    return replace(root, children=children)


def _resolve(host: DerivedTree, address: Address) -> TreeNode:
    try:
        return node_at(host.root, address)
    except AddressError as err:
        raise OperationError(str(err)) from None


def substitute(host: DerivedTree, address: Address, filler: DerivedTree) -> DerivedTree:
    """Replace the slot at ``address`` with ``filler``'s root subtree."""
    target = _resolve(host, address)
    if target.kind is not NodeKind.SLOT:
        raise OperationError(
            f"substitution at {format_address(address)}: node is a "
            f"{target.kind.value}, not a substitution slot"
        )
    froot = filler.root
    if froot.kind is not NodeKind.INTERNAL:
        raise OperationError(
            f"substitution at {format_address(address)}: filler root is a "
            f"{froot.kind.value} node"
        )
    if foot_addresses(froot):
        raise OperationError(
            f"substitution at {format_address(address)}: filler contains a foot "
            "node and cannot come from an initial tree"
        )
    if froot.category != target.category:
        raise OperationError(
            f"category mismatch at {format_address(address)}: slot "
            f"{target.category} vs filler {froot.category}"
        )
    return DerivedTree(_replace_at(host.root, address, froot))


def adjoin(host: DerivedTree, address: Address, aux: DerivedTree) -> DerivedTree:
    """Wrap ``aux`` around the internal node at ``address``.

    The subtree rooted there is excised and re-attached where the auxiliary
    tree's foot was; the node occurrence is marked so a second adjunction at
    the same spot is rejected.
    """
    target = _resolve(host, address)
    if target.kind is not NodeKind.INTERNAL:
        raise OperationError(
            f"adjunction at {format_address(address)}: {target.kind.value} nodes "
            "do not admit adjunction"
        )
    if target.adjoined:
        raise OperationError(
            f"duplicate adjunction at one node ({format_address(address)})"
        )
    aroot = aux.root
    if aroot.kind is not NodeKind.INTERNAL:
        raise OperationError("adjunction: auxiliary root is not an internal node")
    feet = foot_addresses(aroot)
    if len(feet) != 1:
        raise OperationError(
            "adjunction: operand must carry exactly one foot node, found "
            f"{len(feet)}"
        )
    if aroot.category != target.category:
        raise OperationError(
            f"category mismatch at {format_address(address)}: node "
            f"{target.category} vs auxiliary root {aroot.category}"
        )
    foot_node = node_at(aroot, feet[0])
    if foot_node.category != aroot.category:
        raise OperationError("adjunction: foot/root mismatch in auxiliary operand")
    excised = replace(target, adjoined=True)
    planted = _replace_at(aroot, feet[0], excised)
    return DerivedTree(_replace_at(host.root, address, planted))


def yield_tokens(tree: DerivedTree) -> tuple[Token, ...]:
    """Left-to-right anchor tokens of a complete derived tree."""
    out: list[Token] = []
    for address, node in walk(tree.root):
        if node.kind is NodeKind.ANCHOR:
            if node.language is None:
                raise OperationError(
                    f"anchor at {format_address(address)} carries no language; "
                    "instantiate the elementary tree first"
                )
            assert node.surface is not None
            out.append(Token(node.surface, node.language))
        elif node.kind in (NodeKind.SLOT, NodeKind.FOOT):
            raise OperationError(
                f"tree incomplete: open {node.kind.value} at "
                f"{format_address(address)}"
            )
    return tuple(out)


class Operation(Enum):
    SUBSTITUTE = "subst"
    ADJOIN = "adjoin"


@dataclass(frozen=True)
class Step:
    """One composition record: a child derivation attached at an address."""

    operation: Operation
    address: Address
    child: "Derivation"


@dataclass(frozen=True)
class Derivation:
    """A tree of composition records rooted at one elementary tree.

    Step addresses always refer to node positions of the host elementary
    tree itself, never of the composed result. Instances are immutable, so
    size, rendering and hash are computed once and stashed.
    """

    tree_id: str
    steps: tuple[Step, ...] = ()

    def size(self) -> int:
        """Number of elementary-tree instances used."""
        cached = self.__dict__.get("_size")
        if cached is None:
            cached = 1 + sum(step.child.size() for step in self.steps)
            object.__setattr__(self, "_size", cached)
        return cached

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.tree_id, self.steps))
            object.__setattr__(self, "_hash", cached)
        return cached

    def canonical(self) -> "Derivation":
        """Steps sorted by (address, operation, child form), recursively."""
        if self.__dict__.get("_canonical", False):
            return self
        steps = []
        for step in self.steps:
            child = step.child.canonical()
            steps.append(step if child is step.child else replace(step, child=child))
        ordered = tuple(sorted(steps, key=_step_sort_key))
        result = Derivation(self.tree_id, ordered)
        object.__setattr__(result, "_canonical", True)
        return result

    def to_sexpr(self) -> str:
        cached = self.__dict__.get("_sexpr")
        if cached is None:
            if not self.steps:
                cached = f"({self.tree_id})"
            else:
                parts = " ".join(
                    f"({s.operation.value} {format_address(s.address)} "
                    f"{s.child.to_sexpr()})"
                    for s in self.steps
                )
                cached = f"({self.tree_id} {parts})"
            object.__setattr__(self, "_sexpr", cached)
        return cached

    def render(self) -> str:
        """Nested one-step-per-line display."""
        lines = [self.tree_id]
        self._render_steps(lines, 1)
        return "\n".join(lines)

    def _render_steps(self, lines: list[str], depth: int) -> None:
        pad = "  " * depth
        for step in self.steps:
            lines.append(
                f"{pad}{step.child.tree_id} {step.operation.value} "
                f"@{format_address(step.address)}"
            )
            step.child._render_steps(lines, depth + 1)


def _step_sort_key(step: Step) -> tuple:
    return (step.address, step.operation.value, step.child.to_sexpr())


def mark_canonical(derivation: Derivation) -> Derivation:
    """Tag a derivation whose steps are already in canonical order."""
    object.__setattr__(derivation, "_canonical", True)
    return derivation


def replay(grammar: "Grammar", derivation: Derivation) -> DerivedTree:
    """Rebuild the derived tree a derivation describes.

    Substitutions apply first (slot addresses never interfere), then
    adjunctions deepest-first so that recorded elementary-tree addresses
    stay valid while the tree grows.
    """
    tree = grammar.tree(derivation.tree_id)
    result = instantiate(tree)
    substitutions = [s for s in derivation.steps if s.operation is Operation.SUBSTITUTE]
    adjunctions = [s for s in derivation.steps if s.operation is Operation.ADJOIN]
    for step in sorted(substitutions, key=lambda s: s.address):
        result = substitute(result, step.address, replay(grammar, step.child))
    for step in sorted(adjunctions, key=lambda s: (-len(s.address), s.address)):
        result = adjoin(result, step.address, replay(grammar, step.child))
    return result
