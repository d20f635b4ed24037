"""Matplotlib renderings of corpus reports and variant comparisons.

Figures are written straight to files; the Agg backend keeps this usable
on headless machines.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .corpus import Judgment
from .evaluation import Report, VariantComparison

PASS_COLOR = "#4caf50"
FAIL_COLOR = "#e53935"
DERIVABLE_COLOR = "#81c784"
UNDERIVABLE_COLOR = "#cfd8dc"


def save_report_figure(report: Report, path: str) -> None:
    """One row per corpus item: observed judgment, pass/fail, witness count."""
    rows = list(report.rows)
    height = max(1.8, 0.45 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(7.2, height))
    ax.set_xlim(0, 1)
    ax.set_ylim(0, max(len(rows), 1))
    ax.axis("off")
    for i, row in enumerate(rows):
        y = len(rows) - 1 - i
        color = PASS_COLOR if row.passed else FAIL_COLOR
        ax.add_patch(Rectangle((0.0, y + 0.08), 0.96, 0.84, color=color, alpha=0.35))
        ax.text(0.02, y + 0.5, row.item_id, va="center", fontweight="bold")
        ax.text(0.22, y + 0.5, f"expected {row.expected.value}", va="center")
        ax.text(0.52, y + 0.5, f"observed {row.observed.value}", va="center")
        ax.text(
            0.84,
            y + 0.5,
            f"{row.witness_count} witness{'es' if row.witness_count != 1 else ''}",
            va="center",
        )
    ax.set_title(f"corpus judgments: {report.passed}/{report.total} passed")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_comparison_figure(comparison: VariantComparison, path: str) -> None:
    """Item-by-variant judgment matrix; frames mark agreement with expectation."""
    rows = list(comparison.rows)
    kinds = [kind for kind, _ in rows[0].verdicts] if rows else []
    width = max(6.0, 2.1 * len(kinds) + 2.0)
    height = max(2.0, 0.5 * len(rows) + 1.4)
    fig, ax = plt.subplots(figsize=(width, height))
    ax.set_xlim(0, len(kinds))
    ax.set_ylim(0, max(len(rows), 1))
    ax.axis("off")
    for col, kind in enumerate(kinds):
        ax.text(
            col + 0.5,
            len(rows) + 0.15,
            kind.value,
            ha="center",
            va="bottom",
            fontweight="bold",
        )
    for i, row in enumerate(rows):
        y = len(rows) - 1 - i
        ax.text(-0.08, y + 0.5, f"{row.item_id} ({row.expected.value})",
                ha="right", va="center")
        for col, (_, judgment) in enumerate(row.verdicts):
            color = (
                DERIVABLE_COLOR
                if judgment is Judgment.DERIVABLE
                else UNDERIVABLE_COLOR
            )
            agrees = judgment is row.expected
            ax.add_patch(
                Rectangle(
                    (col + 0.04, y + 0.06),
                    0.92,
                    0.88,
                    facecolor=color,
                    edgecolor="black" if agrees else FAIL_COLOR,
                    linewidth=1.6 if agrees else 2.2,
                )
            )
            ax.text(col + 0.5, y + 0.5, judgment.value, ha="center", va="center")
    names = ", ".join(kind.value for kind in comparison.matching_variants) or "none"
    ax.set_title(f"variant comparison (matches all expected: {names})")
    fig.tight_layout()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
