"""Command line entry point: ``dialectdist validate|compare|classify``.

Exit status: 0 success, 1 analysis or validation error, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .classification import build_matrix, format_matrix_csv, read_matrix_csv, to_newick, upgma
from .comparison import DenominatorMode, VariantPolicy, all_pairs
from .exceptions import AnalysisError, DuplicateFormWarning, InputError, ValidationError
from .metrics import METRICS
from .report import FORMATS, ReportBundle, RunConfig, render_tables
from .wordlist import (
    NormalizationOptions,
    load_concept_list,
    read_wide_wordlists,
    read_wordlists,
    validate_wordlists,
)

EXIT_OK, EXIT_ANALYSIS, EXIT_INPUT = 0, 1, 2


class _Failure(Exception):
    def __init__(self, status, message):
        self.status = status
        super().__init__(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="wordlist files (long-format TSV unless --columns is given)")
    common.add_argument("--concepts", metavar="PATH", help="concept list TSV (default: bundled 207-entry list)")
    common.add_argument("--metric", default="jaro", choices=sorted(METRICS))
    common.add_argument("--policy", default="max", choices=[p.value for p in VariantPolicy])
    common.add_argument("--denominator", default="full", choices=[d.value for d in DenominatorMode])
    common.add_argument("--format", default="markdown", choices=FORMATS)
    common.add_argument("--round", type=int, default=2, metavar="N", dest="round_digits")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument(
        "--columns",
        metavar="MAPPING",
        help="read wide files through a 1-based column mapping, e.g. id=1,gloss=2,Zaza=3,Hawrami=4",
    )
    common.add_argument("--no-case-fold", action="store_true")
    common.add_argument("--keep-punctuation", action="store_true")

    parser = argparse.ArgumentParser(
        prog="dialectdist",
        description="Jaro similarity tables and UPGMA classification for Swadesh-style wordlists.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check coverage, variants and scripts")
    sub.add_parser("compare", parents=[common], help="pairwise similarity/distance tables")
    classify = sub.add_parser("classify", parents=[common], help="distance matrix and UPGMA tree (Newick)")
    classify.add_argument(
        "--matrix-file",
        metavar="PATH",
        help="precomputed distance matrix CSV (header row plus labelled rows) instead of wordlists",
    )
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        inputs=tuple(args.inputs),
        concepts=args.concepts,
        metric=args.metric,
        policy=args.policy,
        denominator=args.denominator,
        normalization=NormalizationOptions(
            case_fold=not args.no_case_fold,
            strip_punctuation=not args.keep_punctuation,
        ),
        format=args.format,
        round_digits=args.round_digits,
        out=args.out,
        matrix_file=getattr(args, "matrix_file", None),
        columns=args.columns,
    )


def _load(config: RunConfig):
    """Concept list, wordlists in input order, and parse warnings."""
    if not config.inputs:
        raise _Failure(EXIT_INPUT, "no input files given")
    concept_list = load_concept_list(config.concepts)
    wordlists = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DuplicateFormWarning)
        for path in config.inputs:
            if config.columns:
                wordlists += read_wide_wordlists(path, concept_list, config.columns, config.normalization)
            else:
                wordlists += read_wordlists(path, concept_list, config.normalization)
    notes = [str(w.message) for w in caught if issubclass(w.category, DuplicateFormWarning)]
    return concept_list, wordlists, notes


def _compare(config: RunConfig):
    concept_list, wordlists, notes = _load(config)
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    if len(wordlists) < 2:
        raise _Failure(EXIT_ANALYSIS, f"need at least two varieties, found {len(wordlists)}")
    report = validate_wordlists(wordlists, concept_list)
    if not report.ok:
        raise _Failure(EXIT_ANALYSIS, "; ".join(i.message for i in report.errors))
    try:
        comparisons = all_pairs(wordlists, concept_list, config.metric, config.policy, config.denominator)
    except ValueError as exc:
        raise _Failure(EXIT_ANALYSIS, str(exc)) from None
    return comparisons, report


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(config: RunConfig) -> int:
    concept_list, wordlists, notes = _load(config)
    if not wordlists:
        raise _Failure(EXIT_ANALYSIS, "no wordlist rows found")
    report = validate_wordlists(wordlists, concept_list)
    if config.format == "json":
        import json

        doc = {"metadata": ReportBundle(config).metadata, "validation": report.to_dict(), "parse_warnings": notes}
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        text = report.to_text() + "".join(f"warning: {n}\n" for n in notes)
    _emit(text, config.out)
    return EXIT_OK if report.ok else EXIT_ANALYSIS


def cmd_compare(config: RunConfig) -> int:
    comparisons, report = _compare(config)
    bundle = ReportBundle(config, comparisons, validation=report.to_dict())
    _emit(render_tables(bundle, config.format), config.out)
    return EXIT_OK


def cmd_classify(config: RunConfig) -> int:
    comparisons = []
    validation = None
    if config.matrix_file:
        if config.inputs:
            raise _Failure(EXIT_INPUT, "give either wordlist inputs or --matrix-file, not both")
        matrix = read_matrix_csv(config.matrix_file)
    else:
        comparisons, report = _compare(config)
        validation = report.to_dict()
        matrix = build_matrix(comparisons)
    if len(matrix) < 2:
        raise _Failure(EXIT_ANALYSIS, "need at least two varieties to classify")
    newick = to_newick(upgma(matrix))
    bundle = ReportBundle(config, comparisons, matrix=matrix, validation=validation)
    if config.out:
        Path(config.out).write_text(newick + "\n", encoding="utf-8")
    else:
        bundle.tree = newick
    if config.format == "csv":
        text = format_matrix_csv(matrix)
        if bundle.tree is not None:
            text += "\n" + newick + "\n"
    else:
        text = render_tables(bundle, config.format)
    sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "compare": cmd_compare, "classify": cmd_classify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        return COMMANDS[args.command](config)
    except _Failure as exc:
        status, message = exc.status, str(exc)
    except InputError as exc:
        status, message = EXIT_INPUT, str(exc)
    except (ValidationError, AnalysisError) as exc:
        status, message = EXIT_ANALYSIS, str(exc)
    print(f"dialectdist: error: {message}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
