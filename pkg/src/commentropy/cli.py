"""Command-line interface.

    commentropy analyze --input corpus.jsonl --scheme blocs --scheme eu15
    commentropy cube --input corpus.jsonl --scheme blocs --out cube.json
    commentropy delineate --matrix jcr.csv --seed "BIOTECHNOL BIOENG"

Exit status: 0 success, 1 input error, 2 degenerate data.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .pipeline import EXIT_INPUT, EXIT_OK, RunConfig, StageError, cmd_analyze, cmd_cube, cmd_delineate
from .report import FORMATS, render


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commentropy", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_args(p):
        p.add_argument("--input", required=True, help="JSONL corpus")
        p.add_argument("--scheme", action="append", required=True, dest="schemes",
                       help="grouping scheme file (CODE<TAB>GROUP) or bundled name: blocs, eu15")
        p.add_argument("--stopwords", help="stopword file (default: bundled English list)")
        p.add_argument("--top-words", type=_positive_int, default=250)
        p.add_argument("--top-refs", type=_positive_int, default=250)
        p.add_argument("--min-len", type=_positive_int, default=2, help="minimum title token length")
        p.add_argument("--unmatched", choices=("drop", "error", "other"), default="drop",
                       help="countries missing from the scheme")

    p = sub.add_parser("analyze", help="entropy decomposition and transmissions per grouping level")
    corpus_args(p)
    p.add_argument("--format", choices=FORMATS, default="table")

    p = sub.add_parser("cube", help="write the serialized co-occurrence cube")
    corpus_args(p)
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")

    p = sub.add_parser("delineate", help="journal environment and factor structure around a seed")
    p.add_argument("--matrix", required=True, help="citing x cited CSV with journal headers")
    p.add_argument("--seed", required=True)
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--criterion", type=float, default=1.0, help="eigenvalue floor for retained factors")
    p.add_argument("--varimax", action="store_true", help="varimax-rotate factors before assignment")
    p.add_argument("--similarity", choices=("cosine", "pearson"), default="cosine",
                   help="profile similarity to factor (default: cosine)")
    p.add_argument("--impacts", help="journal,impact CSV for central-tendency tie breaks")
    p.add_argument("--format", choices=("json",), default="json")
    return parser


def _config(args) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in keys})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _config(args)
    try:
        if args.command == "analyze":
            sys.stdout.write(render(cmd_analyze(config), args.format))
        elif args.command == "cube":
            text = cmd_cube(config).to_json()
            if args.out == "-":
                sys.stdout.write(text)
            else:
                try:
                    with open(args.out, "w", encoding="utf-8") as fh:
                        fh.write(text)
                except OSError as exc:
                    print(f"commentropy: error in output: {exc}", file=sys.stderr)
                    return EXIT_INPUT
        else:
            result = cmd_delineate(config)
            sys.stdout.write(json.dumps(result.to_dict(), indent=2, ensure_ascii=False) + "\n")
    except StageError as exc:
        print(f"commentropy: error in {exc.stage}: {exc.cause}", file=sys.stderr)
        return exc.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
