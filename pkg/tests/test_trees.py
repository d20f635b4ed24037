from __future__ import annotations

import pytest

from treegraft import (
    AddressError,
    ElementaryTree,
    NodeKind,
    TreeType,
    anchor,
    foot,
    format_address,
    internal,
    node_at,
    parse_address,
    slot,
    validate_elementary,
)


def adjective_modifier() -> ElementaryTree:
    # (NP AdjP^ NP*), the unanchored auxiliary that places AdjP before NP
    return ElementaryTree(
        "en_adjmod",
        TreeType.AUXILIARY,
        "en",
        internal("NP", slot("AdjP"), foot("NP")),
    )


class TestAddresses:
    def test_root_renders_as_r(self):
        assert format_address(()) == "r"
        assert parse_address("r") == ()

    def test_dotted_round_trip(self):
        assert format_address((2, 3)) == "2.3"
        assert parse_address("2.3") == (2, 3)

    def test_zero_index_rejected(self):
        with pytest.raises(AddressError):
            parse_address("0.1")

    def test_resolution(self):
        tree = internal("PP", internal("P", anchor("P", "on")), slot("DP"))
        assert node_at(tree, ()).category == "PP"
        assert node_at(tree, (1,)).category == "P"
        assert node_at(tree, (1, 1)).surface == "on"
        assert node_at(tree, (2,)).kind is NodeKind.SLOT

    def test_unresolvable_address(self):
        tree = internal("NP", anchor("N", "friends"))
        with pytest.raises(AddressError, match="unresolvable"):
            node_at(tree, (2,))


class TestValidateElementary:
    def test_unanchored_modifier_tree_is_valid(self):
        assert validate_elementary(adjective_modifier()) == []

    def test_foot_root_mismatch(self):
        bad = ElementaryTree(
            "bad",
            TreeType.AUXILIARY,
            "en",
            internal("NP", slot("AdjP"), foot("VP")),
        )
        assert any("foot/root mismatch" in v.message for v in validate_elementary(bad))

    def test_unanchored_tree_without_slots(self):
        bad = ElementaryTree(
            "bad",
            TreeType.INITIAL,
            "en",
            internal("NP", internal("N", internal("X", internal("Y", slot("Z"))))),
        )
        # remove the slot to trip the rule
        bare = ElementaryTree(
            "bare", TreeType.INITIAL, "en", internal("NP", internal("N", foot("NP")))
        )
        messages = [v.message for v in validate_elementary(bare)]
        assert "unanchored tree without slots" in messages
        assert "initial tree contains a foot node" in messages
        assert validate_elementary(bad) == []

    def test_auxiliary_lacks_foot(self):
        bad = ElementaryTree(
            "bad", TreeType.AUXILIARY, "xx", internal("NP", slot("AdjP"))
        )
        assert any(
            "auxiliary tree lacks foot" in v.message for v in validate_elementary(bad)
        )

    def test_two_anchors_rejected(self):
        bad = ElementaryTree(
            "bad",
            TreeType.INITIAL,
            "en",
            internal("PP", anchor("P", "on"), anchor("P", "onto")),
        )
        assert any("multiple anchors" in v.message for v in validate_elementary(bad))

    def test_anchor_surface_must_be_solid(self):
        bad = ElementaryTree(
            "bad", TreeType.INITIAL, "en", internal("NP", anchor("N", "two words"))
        )
        assert any("bad anchor surface" in v.message for v in validate_elementary(bad))

    def test_bad_language_tag(self):
        bad = ElementaryTree(
            "bad", TreeType.INITIAL, "English", internal("NP", anchor("N", "x"))
        )
        assert any("bad language tag" in v.message for v in validate_elementary(bad))

    def test_bad_category_label(self):
        bad = ElementaryTree(
            "bad", TreeType.INITIAL, "en", internal("np", anchor("np", "x"))
        )
        assert any("bad category label" in v.message for v in validate_elementary(bad))

    def test_childless_internal_node(self):
        bad = ElementaryTree(
            "bad", TreeType.INITIAL, "en", internal("NP", internal("N"))
        )
        assert any(
            "internal node without children" in v.message
            for v in validate_elementary(bad)
        )

    def test_root_must_be_internal(self):
        bad = ElementaryTree("bad", TreeType.INITIAL, "en", slot("NP"))
        assert any("root is a slot node" in v.message for v in validate_elementary(bad))

    def test_violation_carries_address(self):
        bad = ElementaryTree(
            "bad",
            TreeType.INITIAL,
            "en",
            internal("NP", internal("N", anchor("N", "x"), internal("Q"))),
        )
        violations = validate_elementary(bad)
        assert any(v.address == (1, 2) for v in violations)
