"""Command-line front end.

Commands: judge, parse, enumerate, corpus, variants, validate. Results go
to stdout, diagnostics to stderr. ``--tsv`` switches to machine-readable
output; ``--plot`` additionally renders a figure for report commands.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import CorpusError, Judgment, parse_corpus, parse_token_string
from .evaluation import (
    EvaluationError,
    compare_variants,
    comparison_table,
    comparison_tsv,
    load_language_orders,
    report_table,
    report_tsv,
    run_corpus,
)
from .grammar import Grammar, GrammarError, parse_grammar, validate_grammar
from .parsing import (
    ParseConfig,
    ParseError,
    ParseMode,
    enumerate_strings,
    judge,
    parse,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _add_grammar_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-g",
        "--grammar",
        dest="grammars",
        metavar="FILE",
        action="append",
        required=True,
        help="grammar file; repeat to union lexicons (ids must not collide)",
    )


def _add_mode_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[mode.value for mode in ParseMode],
        default=ParseMode.SINGLE_STAGE.value,
        help="parsing mode (default: single)",
    )
    parser.add_argument(
        "--max-derivations",
        type=int,
        default=100,
        metavar="N",
        help="cap on reported witness derivations (default: 100)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treegraft",
        description="Judge mixed-language token sequences against tree lexicons.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("judge", "decide derivability of one token sequence"),
        ("parse", "list every derivation of one token sequence"),
    ):
        sub = commands.add_parser(name, help=help_text)
        _add_grammar_flag(sub)
        sub.add_argument("-s", "--start", default="S", metavar="CAT",
                         help="start category (default: S)")
        sub.add_argument("-t", "--tokens", required=True, metavar="TOKENS",
                         help="space-separated surface:lang tokens")
        _add_mode_flags(sub)
        sub.add_argument("--sexpr", action="store_true",
                         help="print derivations as canonical s-expressions")
        sub.add_argument("--tsv", action="store_true",
                         help="machine-readable tab-separated output")
        sub.set_defaults(func=_cmd_judge if name == "judge" else _cmd_parse)

    sub = commands.add_parser("enumerate", help="list derivable strings up to a length")
    _add_grammar_flag(sub)
    sub.add_argument("-s", "--start", default="S", metavar="CAT")
    sub.add_argument("-n", "--max-len", type=int, required=True, metavar="MAXLEN",
                     help="maximum string length in tokens")
    sub.add_argument("--tsv", action="store_true")
    sub.set_defaults(func=_cmd_enumerate)

    sub = commands.add_parser("corpus", help="judge a corpus file, report pass/fail")
    _add_grammar_flag(sub)
    sub.add_argument("-c", "--corpus", required=True, metavar="FILE")
    _add_mode_flags(sub)
    sub.add_argument("--tsv", action="store_true")
    sub.add_argument("--plot", metavar="FILE",
                     help="also render the report as a figure (png/pdf/svg)")
    sub.set_defaults(func=_cmd_corpus)

    sub = commands.add_parser(
        "variants", help="compare rival adjective-placement grammars on a corpus"
    )
    _add_grammar_flag(sub)
    sub.add_argument("-c", "--corpus", required=True, metavar="FILE")
    sub.add_argument("--orders", metavar="FILE",
                     help="language order manifest (default: languages.tsv next "
                          "to the first grammar file)")
    sub.add_argument("--tsv", action="store_true")
    sub.add_argument("--plot", metavar="FILE",
                     help="also render the comparison as a figure")
    sub.set_defaults(func=_cmd_variants)

    sub = commands.add_parser("validate", help="validate grammar files")
    _add_grammar_flag(sub)
    sub.set_defaults(func=_cmd_validate)

    return parser


def _load_grammars(paths: list[str]) -> Grammar:
    grammar = Grammar()
    for path in paths:
        text = Path(path).read_text(encoding="utf-8")
        try:
            grammar = grammar.union(parse_grammar(text))
        except GrammarError as err:
            raise GrammarError(f"{path}: {err}") from None
    return grammar


def _load_tokens(text: str):
    tokens = parse_token_string(text)
    if not tokens:
        raise CorpusError("empty token sequence")
    return tokens


def _config(args: argparse.Namespace, start: str | None = None) -> ParseConfig:
    return ParseConfig(
        start=start if start is not None else args.start,
        max_derivations=args.max_derivations,
        mode=ParseMode(args.mode),
    )


def _cmd_judge(args: argparse.Namespace) -> int:
    grammar = _load_grammars(args.grammars)
    tokens = _load_tokens(args.tokens)
    verdict = judge(grammar, tokens, _config(args))
    derivable = verdict.status is Judgment.DERIVABLE
    if args.tsv:
        print(f"{verdict.status.value}\t{len(verdict.witnesses)}")
    else:
        print(verdict.status.value.upper())
        for derivation in verdict.witnesses:
            print()
            print(derivation.to_sexpr() if args.sexpr else derivation.render())
    return EXIT_OK if derivable else EXIT_NEGATIVE


def _cmd_parse(args: argparse.Namespace) -> int:
    grammar = _load_grammars(args.grammars)
    tokens = _load_tokens(args.tokens)
    derivations = sorted(
        parse(grammar, tokens, _config(args)),
        key=lambda d: (d.size(), d.to_sexpr()),
    )[: args.max_derivations]
    if args.tsv:
        for index, derivation in enumerate(derivations, start=1):
            print(f"{index}\t{derivation.size()}\t{derivation.to_sexpr()}")
    else:
        print(f"derivations: {len(derivations)}")
        for derivation in derivations:
            print()
            print(derivation.to_sexpr() if args.sexpr else derivation.render())
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    grammar = _load_grammars(args.grammars)
    strings = sorted(
        enumerate_strings(grammar, args.start, args.max_len),
        key=lambda s: (len(s), tuple(str(t) for t in s)),
    )
    for string in strings:
        rendered = " ".join(str(token) for token in string)
        if args.tsv:
            print(f"{len(string)}\t{rendered}")
        else:
            print(rendered)
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    grammar = _load_grammars(args.grammars)
    items = parse_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    report = run_corpus(grammar, items, _config(args, start="S"))
    sys.stdout.write(report_tsv(report) if args.tsv else report_table(report))
    if args.plot:
        from . import figures

        figures.save_report_figure(report, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_NEGATIVE


def _default_orders_path(grammar_paths: list[str]) -> Path:
    return Path(grammar_paths[0]).parent / "languages.tsv"


def _cmd_variants(args: argparse.Namespace) -> int:
    grammar = _load_grammars(args.grammars)
    items = parse_corpus(Path(args.corpus).read_text(encoding="utf-8"))
    orders_path = Path(args.orders) if args.orders else _default_orders_path(args.grammars)
    if not orders_path.exists():
        raise EvaluationError(
            f"no language order manifest at {orders_path}; pass --orders FILE"
        )
    orders = load_language_orders(orders_path.read_text(encoding="utf-8"))
    comparison = compare_variants(grammar, items, ParseConfig(), orders)
    sys.stdout.write(
        comparison_tsv(comparison) if args.tsv else comparison_table(comparison)
    )
    if args.plot:
        from . import figures

        figures.save_comparison_figure(comparison, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    failures = 0
    parsed: list[Grammar] = []
    for path in args.grammars:
        text = Path(path).read_text(encoding="utf-8")
        try:
            grammar = parse_grammar(text)
        except GrammarError as err:
            print(f"{path}: invalid")
            print(f"  error: {err}")
            failures += 1
            continue
        parsed.append(grammar)
        report = validate_grammar(grammar)
        status = "ok" if report.ok else "invalid"
        print(f"{path}: {status} ({len(grammar)} trees)")
        for line in report.lines():
            print(f"  {line}")
        if not report.ok:
            failures += 1
    if failures == 0 and len(parsed) > 1:
        union = Grammar()
        try:
            for grammar in parsed:
                union = union.union(grammar)
        except GrammarError as err:
            print(f"union: invalid\n  error: {err}")
            return EXIT_NEGATIVE
        report = validate_grammar(union)
        status = "ok" if report.ok else "invalid"
        print(f"union: {status} ({len(union)} trees)")
        for line in report.lines():
            print(f"  {line}")
        if not report.ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GrammarError, CorpusError, ParseError, EvaluationError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
