from __future__ import annotations

from treegraft import ParseConfig, compare_variants, load_language_orders, run_corpus
from treegraft.figures import save_comparison_figure, save_report_figure

from conftest import GRAMMAR_DIR


def test_report_figure_written(sample_grammar, paper_corpus, tmp_path):
    report = run_corpus(sample_grammar, paper_corpus, ParseConfig())
    target = tmp_path / "report.png"
    save_report_figure(report, str(target))
    assert target.stat().st_size > 1000


def test_comparison_figure_written(sample_grammar, paper_corpus, tmp_path):
    orders = load_language_orders(
        (GRAMMAR_DIR / "languages.tsv").read_text(encoding="utf-8")
    )
    comparison = compare_variants(sample_grammar, paper_corpus, ParseConfig(), orders)
    target = tmp_path / "comparison.svg"
    save_comparison_figure(comparison, str(target))
    assert target.stat().st_size > 1000
