"""Command-line entry point: ``timexlink <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from typing import Optional, Sequence

from . import maxent
from .corpus import CorpusError, Document, parse_date, parse_document, serialize
from .evaluate import report_json_ready, report_table, score_documents
from .normalizer import NormalizerConfig
from .pipeline import annotate_document, normalize_document, recognize_document
from .recognizer import RecognizerConfig, Ruleset, RulesetError, default_ruleset, load_ruleset
from .relations import Task, apply_labels, label_relations, schema_for, train_model
from .signals import LexiconError, default_lexicon, load_lexicon

log = logging.getLogger("timexlink")


class CliError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write(path: str, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _document(path: str) -> Document:
    return parse_document(_read(path))


def _ruleset(args) -> Ruleset:
    if args.ruleset is None:
        return default_ruleset()
    with open(args.ruleset, encoding="utf-8") as f:
        return load_ruleset(f)


def _lexicon(args):
    if args.lexicon is None:
        return default_lexicon()
    with open(args.lexicon, encoding="utf-8") as f:
        return load_lexicon(f)


def cmd_recognize(args):
    doc = recognize_document(_document(args.input), _ruleset(args), RecognizerConfig(args.max_n))
    _write(args.output, serialize(doc))


def cmd_normalize(args):
    doc = normalize_document(_document(args.input), _ruleset(args), NormalizerConfig(args.f_days), args.dct)
    _write(args.output, serialize(doc))


def cmd_annotate(args):
    doc = annotate_document(_document(args.input), _ruleset(args), RecognizerConfig(args.max_n),
                            NormalizerConfig(args.f_days), args.dct)
    _write(args.output, serialize(doc))


def cmd_train(args):
    docs = [_document(p) for p in args.input]
    config = maxent.TrainingConfig(args.max_iterations, args.tol, args.sigma2)
    model = train_model(docs, Task(args.task), _lexicon(args), config,
                        use_signals=not args.no_signals)
    _write(args.model, maxent.save_model(model))


def cmd_label(args):
    doc = _document(args.input)
    task = Task(args.task)
    with open(args.model, "rb") as f:
        model = maxent.load_model(f.read(), schema_version=schema_for(task))
    labels = dict(label_relations([doc], task, model, _lexicon(args),
                                  use_signals=not args.no_signals))
    _write(args.output, serialize(apply_labels(doc, labels)))


def cmd_score(args):
    if len(args.gold) != len(args.pred):
        raise CliError("--gold and --pred need the same number of files")
    report = score_documents([_document(p) for p in args.gold], [_document(p) for p in args.pred])
    if args.json:
        text = json.dumps(report_json_ready(report), indent=1, sort_keys=True) + "\n"
    else:
        text = report_table(report)
    _write(args.output, text.encode("utf-8"))


def _f_days(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("--f-days must be >= 0")
    return value


def _dct(text):
    try:
        return parse_date(text)
    except CorpusError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="timexlink", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p):
        p.add_argument("--input", default="-", help="canonical JSON document (default stdin)")
        p.add_argument("--output", default="-", help="output path (default stdout)")

    def rule_args(p):
        p.add_argument("--ruleset", help="name<TAB>pattern rules (default: shipped rules)")

    def norm_args(p):
        p.add_argument("--f-days", type=_f_days, default=14,
                       help="max days ahead for a year-less date to stay in the future")
        p.add_argument("--dct", type=_dct, help="override the document creation date")

    p = sub.add_parser("recognize", help="find timex spans")
    io_args(p); rule_args(p)
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("normalize", help="type and anchor existing timex spans")
    io_args(p); rule_args(p); norm_args(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("annotate", help="recognize + normalize")
    io_args(p); rule_args(p); norm_args(p)
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_annotate)

    def rel_args(p):
        p.add_argument("--task", required=True, choices=[t.value for t in Task])
        p.add_argument("--lexicon", help="phrase<TAB>hint signal list (default: shipped list)")
        p.add_argument("--no-signals", action="store_true", help="blank out signal features")

    p = sub.add_parser("train", help="train a relation model from gold documents")
    rel_args(p)
    p.add_argument("--input", nargs="+", required=True)
    p.add_argument("--model", required=True, help="output model path")
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--max-iterations", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("label", help="label relations with a trained model")
    rel_args(p); io_args(p)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("score", help="compare predictions with gold")
    p.add_argument("--gold", nargs="+", required=True)
    p.add_argument("--pred", nargs="+", required=True)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_score)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except (CorpusError, RulesetError, LexiconError, maxent.ModelFormatError,
            CliError, ValueError, OSError) as e:
        print(f"timexlink {args.command}: {e}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
