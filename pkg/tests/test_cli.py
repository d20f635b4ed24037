from __future__ import annotations

import pytest

from treegraft.cli import main

from conftest import CORPUS_PATH, GRAMMAR_DIR

EN = str(GRAMMAR_DIR / "en.tag")
HI = str(GRAMMAR_DIR / "hi.tag")
ALL_GRAMMARS: list[str] = []
for name in ("en", "hi", "es", "it", "ga", "fr"):
    ALL_GRAMMARS += ["-g", str(GRAMMAR_DIR / f"{name}.tag")]

EX3B = "he:en always:en comes:en to:en the:en office:en time:en par:hi"
EX7 = "he:en always:en office:en to:en time:en on:en comes:en"


class TestJudgeCommand:
    def test_derivable_exits_zero(self, capsys):
        code = main(["judge", "-g", EN, "-g", HI, "-s", "S", "-t", EX3B])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == "DERIVABLE"
        assert "en_comes" in out

    def test_underivable_exits_one(self, capsys):
        code = main(["judge", "-g", EN, "-s", "S", "-t", EX7])
        out = capsys.readouterr().out
        assert code == 1
        assert out.splitlines()[0] == "UNDERIVABLE"

    def test_empty_tokens_usage_error(self, capsys):
        code = main(["judge", "-g", EN, "-t", ""])
        captured = capsys.readouterr()
        assert code == 2
        assert "error:" in captured.err
        assert captured.out == ""

    def test_sexpr_output(self, capsys):
        code = main(
            ["judge", "-g", EN, "-g", HI, "-s", "S", "-t", EX3B, "--sexpr"]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "(en_comes (subst 1 (en_he))" in out

    def test_tsv_output(self, capsys):
        code = main(["judge", "-g", EN, "-g", HI, "-s", "S", "-t", EX3B, "--tsv"])
        out = capsys.readouterr().out
        assert code == 0
        assert out == "derivable\t1\n"

    def test_nested_display_format(self, capsys):
        main(
            [
                "judge",
                *ALL_GRAMMARS,
                "-s",
                "NP",
                "-t",
                "blanquito:es friends:en",
            ]
        )
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == "DERIVABLE"
        assert lines[2] == "en_friends"
        assert lines[3] == "  en_adjmod adjoin @r"
        assert lines[4] == "    es_blanquito subst @1"

    def test_two_stage_mode_flag(self, capsys):
        code = main(
            ["judge", "-g", EN, "-g", HI, "-s", "S", "-t", EX3B, "--mode", "two-stage"]
        )
        assert code == 0
        assert capsys.readouterr().out.splitlines()[0] == "DERIVABLE"

    def test_grammar_id_collision_is_an_error(self, capsys):
        code = main(["judge", "-g", EN, "-g", EN, "-t", "x:en"])
        captured = capsys.readouterr()
        assert code == 2
        assert "duplicate tree id" in captured.err

    def test_missing_grammar_file(self, capsys):
        code = main(["judge", "-g", "/nonexistent.tag", "-t", "x:en"])
        assert code == 2

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main(["judge", "-g", EN, "-t", "x:en", "--frobnicate"])
        assert err.value.code == 2


class TestParseCommand:
    def test_lists_derivations(self, capsys):
        code = main(
            ["parse", *ALL_GRAMMARS, "-s", "NP", "-t", "carr:ga light:en green:en"]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == "derivations: 20"

    def test_no_derivations_still_exits_zero(self, capsys):
        code = main(["parse", "-g", EN, "-s", "S", "-t", EX7])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == "derivations: 0"

    def test_tsv_rows(self, capsys):
        code = main(
            ["parse", *ALL_GRAMMARS, "-s", "NP", "-t", "blanquito:es friends:en", "--tsv"]
        )
        out = capsys.readouterr().out
        assert code == 0
        rows = out.splitlines()
        assert len(rows) == 1
        index, size, sexpr = rows[0].split("\t")
        assert index == "1" and size == "3"
        assert sexpr.startswith("(en_friends")


class TestEnumerateCommand:
    def test_sorted_strings(self, capsys):
        code = main(["enumerate", "-g", EN, "-g", HI, "-s", "PP", "-n", "2"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.splitlines()
        assert "on:en samay:hi" in lines
        assert "samay:hi par:hi" in lines
        assert lines == sorted(lines, key=lambda l: (len(l.split()), l))

    def test_tsv_lengths(self, capsys):
        main(["enumerate", "-g", EN, "-s", "PP", "-n", "2", "--tsv"])
        out = capsys.readouterr().out
        for line in out.splitlines():
            length, string = line.split("\t")
            assert int(length) == len(string.split())


class TestCorpusCommand:
    def test_all_pass_exits_zero(self, capsys):
        code = main(["corpus", *ALL_GRAMMARS, "-c", str(CORPUS_PATH)])
        out = capsys.readouterr().out
        assert code == 0
        assert "9/9 passed" in out

    def test_tsv_output(self, capsys):
        code = main(["corpus", *ALL_GRAMMARS, "-c", str(CORPUS_PATH), "--tsv"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "id\texpected\tobserved\tpass\twitness_count"
        assert len(lines) == 10

    def test_failure_exits_one(self, capsys, tmp_path):
        wrong = tmp_path / "wrong.tsv"
        wrong.write_text("w1\tderivable\tS\tpar:hi\tnote\n", encoding="utf-8")
        code = main(["corpus", *ALL_GRAMMARS, "-c", str(wrong)])
        assert code == 1

    def test_plot_writes_figure(self, capsys, tmp_path):
        figure = tmp_path / "report.png"
        code = main(
            ["corpus", *ALL_GRAMMARS, "-c", str(CORPUS_PATH), "--plot", str(figure)]
        )
        assert code == 0
        assert figure.exists() and figure.stat().st_size > 0


class TestVariantsCommand:
    def test_table_output(self, capsys):
        code = main(["variants", *ALL_GRAMMARS, "-c", str(CORPUS_PATH)])
        out = capsys.readouterr().out
        assert code == 0
        assert "matches all expected judgments: modifier-trees" in out

    def test_tsv_matrix(self, capsys):
        code = main(["variants", *ALL_GRAMMARS, "-c", str(CORPUS_PATH), "--tsv"])
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == "id\texpected\tmodifier_trees\tadjective_headed\tnoun_headed"
        by_id = {line.split("\t")[0]: line.split("\t") for line in lines[1:]}
        assert by_id["ex8a"][2:] == ["derivable", "underivable", "derivable"]
        assert by_id["ex8b"][2:] == ["derivable", "derivable", "underivable"]

    def test_plot_writes_figure(self, capsys, tmp_path):
        figure = tmp_path / "variants.png"
        code = main(
            ["variants", *ALL_GRAMMARS, "-c", str(CORPUS_PATH), "--plot", str(figure)]
        )
        assert code == 0
        assert figure.exists() and figure.stat().st_size > 0

    def test_missing_orders_manifest(self, capsys, tmp_path):
        grammar = tmp_path / "solo.tag"
        grammar.write_text(
            "tree a en initial (NP (N #x))\ntree m en auxiliary (NP AdjP^ NP*)\n"
            "tree s en initial (AdjP (Adj #smart))\n",
            encoding="utf-8",
        )
        corpus = tmp_path / "c.tsv"
        corpus.write_text("i\tderivable\tNP\tx:en\tn\n", encoding="utf-8")
        code = main(["variants", "-g", str(grammar), "-c", str(corpus)])
        captured = capsys.readouterr()
        assert code == 2
        assert "languages.tsv" in captured.err


class TestValidateCommand:
    def test_shipped_grammars_ok(self, capsys):
        code = main(["validate", *ALL_GRAMMARS])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count(": ok") == 7  # six files plus their union

    def test_union_cycle_detected(self, capsys, tmp_path):
        left = tmp_path / "left.tag"
        left.write_text("tree ux xx initial (X Y^)\ntree ax xx initial (Y (N #y))\n")
        right = tmp_path / "right.tag"
        right.write_text("tree uy xx initial (Y X^)\ntree ay xx initial (X (N #x))\n")
        code = main(["validate", "-g", str(left), "-g", str(right)])
        out = capsys.readouterr().out
        assert code == 1
        assert "union: invalid" in out
        assert "cycle" in out

    def test_invalid_grammar_exits_one(self, capsys, tmp_path):
        bad = tmp_path / "bad.tag"
        bad.write_text("tree bad xx auxiliary (NP AdjP^)\n", encoding="utf-8")
        code = main(["validate", "-g", str(bad)])
        out = capsys.readouterr().out
        assert code == 1
        assert "auxiliary tree lacks foot" in out

    def test_warnings_do_not_fail(self, capsys, tmp_path):
        warned = tmp_path / "warned.tag"
        warned.write_text("tree a en initial (NP (N #x) QP^)\n", encoding="utf-8")
        code = main(["validate", "-g", str(warned)])
        out = capsys.readouterr().out
        assert code == 0
        assert "unfillable slot" in out


def test_byte_deterministic_output(capsys):
    args = ["parse", *ALL_GRAMMARS, "-s", "NP", "-t", "carr:ga light:en green:en", "--sexpr"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
