"""Command-line front end: ``intentarg <subcommand> ...``.

Exit codes: 0 success, 1 validation violations found, 2 usage error,
3 I/O or format error.  All randomness comes from ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from . import augment, corpus, scoring
from .classifier import classify
from .errors import (
    AnalyzerUnavailable,
    IntentArgError,
    InvalidArgument,
    NothingToPlan,
    ParseError,
    VariantExhausted,
)
from .extractor import ExtractionConfig, extract, notation, render
from .rules import load_rules
from .textnorm import AnalyzerSpec, normalize, tokenize, surfaces
from .types import CorpusRecord, HeadPosition, Topic, parse_label

DEFAULT_SEED = 0
DEFAULT_RULES = "en-demo"

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _lines(path) -> List[str]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [line.rstrip("\r\n") for line in fh]


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    keys = ("command", "rules", "analyzer", "head", "labels", "seed", "format")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _table(rows: Sequence[Sequence], header: Optional[Sequence] = None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows.insert(0, [str(c) for c in header])
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    out = []
    for r in rows:
        out.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)).rstrip())
    return "\n".join(out) + "\n"


def _report(args, payload: dict, table: str) -> str:
    if args.format == "report":
        return json.dumps({"config": _config(args), **payload}, indent=2, ensure_ascii=False) + "\n"
    header = "".join(f"# {k}: {v}\n" for k, v in _config(args).items())
    return header + table


def _echo_config(args) -> None:
    sys.stderr.write("# " + json.dumps(_config(args), ensure_ascii=False) + "\n")


def _ctx(args):
    rules = load_rules(args.rules)
    analyzer = AnalyzerSpec.parse(args.analyzer)
    head = HeadPosition(args.head) if args.head else rules.head_position
    return rules, analyzer, head


def _words(text: str, analyzer: AnalyzerSpec) -> List[str]:
    return surfaces(tokenize(normalize(text), analyzer))


def _sentences(path) -> Iterable[str]:
    return (line for line in _lines(path) if line.strip())


def _label_text(label, labels: str) -> str:
    if label is None:
        return "-"
    return corpus.format_label(label, labels)


# -- subcommands -------------------------------------------------------------

def cmd_classify(args) -> int:
    rules, analyzer, _ = _ctx(args)
    _echo_config(args)
    out = []
    for raw in _sentences(args.input):
        toks = _words(raw, analyzer)
        label = classify(toks, rules).label if toks else None
        out.append(f"{_label_text(label, args.labels)}\t{' '.join(toks)}\n")
    _emit(args, "".join(out))
    return EXIT_OK


def cmd_extract(args) -> int:
    rules, analyzer, head = _ctx(args)
    _echo_config(args)
    cfg = ExtractionConfig(rules, head, keep_notation=args.notation)
    records = []
    skipped = 0
    for raw in _sentences(args.input):
        toks = _words(raw, analyzer)
        label = classify(toks, rules).label if toks else None
        if label is None:
            skipped += 1
            continue
        arg = extract(toks, label, cfg)
        note = notation(arg, rules) if cfg.keep_notation else None
        records.append(CorpusRecord(label, " ".join(toks), render(arg, cfg), note))
    if skipped:
        sys.stderr.write(f"# skipped {skipped} non-directive line(s)\n")
    _emit(args, corpus.format_corpus(records, args.labels))
    return EXIT_OK


def cmd_validate(args) -> int:
    rules, _, head = _ctx(args)
    found = []
    for i, rec in enumerate(corpus.read_corpus(args.corpus, header=args.header)):
        for v in corpus.validate(rec, rules, head):
            found.append((i + 1, v))
    table = "".join(f"record {n}: {v}\n" for n, v in found) or "no violations\n"
    payload = {
        "violations": [{"record": n, "code": v.code, "message": v.message} for n, v in found],
        "count": len(found),
    }
    _emit(args, _report(args, payload, table))
    return EXIT_VIOLATIONS if found else EXIT_OK


def cmd_stats(args) -> int:
    st = corpus.stats(corpus.read_corpus(args.corpus, header=args.header))
    d = st.as_dict()
    rows = [(tag, n) for tag, n in d["counts"].items()] + [("total", st.total)]
    table = _table(rows, ("label", "count"))
    if st.topics is not None:
        table += "\n" + _table(list(d["topics"].items()), ("topic", "count"))
    _emit(args, _report(args, d, table))
    return EXIT_OK


def cmd_split(args) -> int:
    try:
        spec = corpus.SplitSpec(corpus.parse_fraction(args.fraction), args.seed)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --fraction {args.fraction!r}: {exc}") from None
    records = corpus.read_corpus(args.corpus, header=args.header)
    train, test = corpus.split(records, spec)
    base = Path(args.out) if args.out else Path(args.corpus).with_suffix("")
    train_path = base.parent / (base.name + ".train.tsv")
    test_path = base.parent / (base.name + ".test.tsv")
    corpus.write_corpus(train, train_path, args.labels)
    corpus.write_corpus(test, test_path, args.labels)
    _echo_config(args)
    sys.stdout.write(f"train\t{len(train)}\t{train_path}\ntest\t{len(test)}\t{test_path}\n")
    return EXIT_OK


def _parse_quotas(items: Sequence[str]) -> dict:
    quotas = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"quota {item!r} is not LABEL=N")
        try:
            quotas[parse_label(key)] = int(value)
        except ValueError as exc:
            raise UsageError(f"bad quota {item!r}: {exc}") from None
    return quotas


def cmd_augment_plan(args) -> int:
    current = corpus.stats(corpus.read_corpus(args.corpus, header=args.header)) if args.corpus else None
    plan = augment.plan_augmentation(current, _parse_quotas(args.quota), variants_per_argument=args.variants)
    d = plan.as_dict()
    rows = [
        [label] + [d["allocation"][label][t.value] for t in Topic] + [d["quotas"][label]]
        for label in d["quotas"]
    ]
    table = _table(rows, ["label"] + [t.value for t in Topic] + ["quota"])
    table += f"\narguments {plan.total_arguments}  variants/argument {plan.variants_per_argument}  pairs {plan.total_pairs}\n"
    _emit(args, _report(args, d, table))
    return EXIT_OK


def cmd_augment_apply(args) -> int:
    """Arguments file rows: ``label TAB argument [TAB topic]``."""
    rules, _, head = _ctx(args)
    _echo_config(args)
    records = []
    for lineno, raw in enumerate(_lines(args.arguments), start=1):
        if not raw.strip():
            continue
        cols = raw.split("\t")
        if len(cols) not in (2, 3):
            raise ParseError("expected label TAB argument [TAB topic]", lineno)
        try:
            label = parse_label(cols[0])
            topic = Topic(cols[2]) if len(cols) == 3 and cols[2] else None
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        arg = augment.parse_argument(cols[1], rules, head)
        seed = args.seed + lineno  # independent stream per argument
        for sentence in augment.generate_variants(arg, args.n, rules, seed):
            records.append(CorpusRecord(label, sentence, normalize(cols[1]), None, topic))
    _emit(args, corpus.format_corpus(records, args.labels))
    return EXIT_OK


def cmd_score(args) -> int:
    _, analyzer, _ = _ctx(args)
    preds = _lines(args.predictions)
    while preds and preds[-1] == "":
        preds.pop()
    gold = corpus.read_corpus(args.gold, header=args.header)
    emb = scoring.load_embeddings(args.embeddings)
    report = scoring.score_corpus(preds, gold, emb, analyzer)
    means = report.means or {}
    rows = [(f, "absent" if not means else f"{means[f]:.6f}") for f in scoring.FIELDS]
    table = _table(rows, ("metric", "mean")) + f"count {report.count}\n"
    _emit(args, _report(args, report.as_dict(with_pairs=args.pairs), table))
    return EXIT_OK


def cmd_baseline(args) -> int:
    _, analyzer, _ = _ctx(args)
    _echo_config(args)
    model = scoring.NearestNeighbourBaseline(corpus.read_corpus(args.train, header=args.header), analyzer)
    _emit(args, "".join(model.predict(s) + "\n" for s in _lines(args.input)))
    return EXIT_OK


def cmd_kappa(args) -> int:
    rows = []
    for lineno, raw in enumerate(_lines(args.matrix), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            rows.append([int(x) for x in raw.replace(",", " ").split()])
        except ValueError:
            raise ParseError("matrix cells must be integers", lineno) from None
    kappa = corpus.fleiss_kappa(corpus.AgreementMatrix.from_rows(rows, args.raters))
    payload = {"kappa": float(kappa), "kappa_exact": str(kappa), "items": len(rows)}
    _emit(args, _report(args, payload, f"kappa {float(kappa):.6f}\n"))
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules", default=DEFAULT_RULES, help="builtin rule set (en-demo, ko) or JSON path")
    common.add_argument("--analyzer", default="whitespace", help="whitespace or a registered adapter name")
    common.add_argument("--head", choices=[p.value for p in HeadPosition], help="head position (default: from rules)")
    common.add_argument("--labels", choices=("int", "str"), default="int", help="label column format on output")
    common.add_argument("--header", action="store_true", help="input corpus files start with a header line")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("table", "report"), default="table")

    parser = argparse.ArgumentParser(prog="intentarg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "label each input line").add_argument("input")
    p = add("extract", cmd_extract, "emit label/sentence/argument rows")
    p.add_argument("input")
    p.add_argument("--notation", action="store_true", help="append the speaker/addressee notation column")
    add("validate", cmd_validate, "check a corpus file").add_argument("corpus")
    add("stats", cmd_stats, "per-type counts").add_argument("corpus")
    p = add("split", cmd_split, "seeded train/test split")
    p.add_argument("corpus")
    p.add_argument("--fraction", default="9:1", help="train share: 9:1, 0.7 or 7/10")
    p = add("augment-plan", cmd_augment_plan, "plan argument quotas per topic")
    p.add_argument("corpus", nargs="?")
    p.add_argument("--quota", action="append", metavar="LABEL=N")
    p.add_argument("--variants", type=int, default=10)
    p = add("augment-apply", cmd_augment_apply, "generate variant sentences for arguments")
    p.add_argument("arguments")
    p.add_argument("-n", type=int, default=10)
    p = add("score", cmd_score, "ROUGE-1, semantic and total scores")
    p.add_argument("predictions")
    p.add_argument("gold")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--pairs", action="store_true", help="include per-pair scores in the report")
    p = add("baseline", cmd_baseline, "nearest-neighbour argument predictions")
    p.add_argument("train")
    p.add_argument("input")
    p = add("kappa", cmd_kappa, "Fleiss' kappa of an items x categories count matrix")
    p.add_argument("matrix")
    p.add_argument("--raters", type=int)
    return parser


_USAGE_ERRORS = (UsageError, NothingToPlan, VariantExhausted, InvalidArgument, AnalyzerUnavailable)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"intentarg: {exc}\n")
        return EXIT_USAGE
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, IntentArgError, ValueError) as exc:
        sys.stderr.write(f"intentarg: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
