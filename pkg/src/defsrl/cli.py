"""Command-line front end: label, stats, eval, and lint over corpus files.

Exit codes follow one contract everywhere: 0 success, 1 fatal error,
2 partial success (per-record diagnostics were emitted but the batch ran).
All commands are deterministic: identical inputs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .corpus import (
    AlignmentError,
    CorpusError,
    DefinitionRecord,
    distribution,
    evaluate,
    format_eval_report,
    read_corpus,
    write_corpus,
)
from .defaults import default_config
from .labeler import EmptyDefinitionError, LabelerConfig, label
from .lexicon import LOCATION, TIME, load_gazetteer, load_wordlist
from .patterns import render
from .rolemodel import ERROR, validate
from .syntree import parse_bracketed

OK = 0
FATAL = 1
PARTIAL = 2

_LEMMA_DETACH = (("ches", "ch"), ("shes", "sh"), ("ses", "s"), ("xes", "x"),
                 ("zes", "z"), ("ies", "y"), ("men", "man"), ("s", ""))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return FATAL


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_config(args: argparse.Namespace) -> LabelerConfig:
    config = default_config()
    if args.noun_lexicon:
        config = replace(config, noun_lexicon=load_wordlist(_read_text(args.noun_lexicon), "noun"))
    if args.verb_lexicon:
        config = replace(config, verb_lexicon=load_wordlist(_read_text(args.verb_lexicon), "verb"))
    if args.loc_gazetteer:
        config = replace(config, location_gazetteer=load_gazetteer(_read_text(args.loc_gazetteer), LOCATION))
    if args.time_gazetteer:
        config = replace(config, time_gazetteer=load_gazetteer(_read_text(args.time_gazetteer), TIME))
    if args.config:
        payload = json.loads(_read_text(args.config))
        phrases = payload.get("accessory_determiner_phrases")
        words = payload.get("accessory_quality_words")
        if phrases is not None:
            config = replace(config, accessory_determiner_phrases=tuple(phrases))
        if words is not None:
            config = replace(config, accessory_quality_words=frozenset(words))
    return config


def _config_threshold(args: argparse.Namespace) -> float:
    if args.threshold is not None:
        return args.threshold
    if args.config:
        payload = json.loads(_read_text(args.config))
        if "supertype_accuracy_threshold" in payload:
            return float(payload["supertype_accuracy_threshold"])
    return 1.0


def _read_records(path: str) -> tuple[list[DefinitionRecord], list]:
    return read_corpus(_read_text(path))


def run_label(args: argparse.Namespace) -> int:
    try:
        records, diagnostics = _read_records(args.input)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except CorpusError as exc:
        return _fail(str(exc))
    try:
        config = _load_config(args)
    except (FileNotFoundError, ValueError) as exc:
        return _fail(f"cannot load knowledge files: {exc}")

    for diagnostic in diagnostics:
        print(f"{args.input}:{diagnostic.line_no}: {diagnostic.message}", file=sys.stderr)

    out_records = []
    traces = []
    failures = len(diagnostics)
    for record in records:
        if record.tree is None:
            print(f"{record.id}: no parse tree; record passed through", file=sys.stderr)
            failures += 1
            out_records.append(record)
            continue
        record_config = (
            replace(config, instance_mode=record.instance)
            if record.instance != config.instance_mode
            else config
        )
        try:
            outcome = label(
                parse_bracketed(record.tree), record.pos, record_config, record.id
            )
        except EmptyDefinitionError as exc:
            print(f"{record.id}: {exc}", file=sys.stderr)
            failures += 1
            out_records.append(record)
            continue
        out_records.append(replace(record, predicted=outcome.annotation))
        if args.trace:
            traces.append(
                {
                    "id": record.id,
                    "trace": [
                        {"rule": t.rule, "start": t.start, "end": t.end, "reason": t.reason}
                        for t in outcome.rule_trace
                    ],
                }
            )

    Path(args.output).write_text(write_corpus(out_records), encoding="utf-8")
    if args.trace:
        trace_path = args.output + ".trace"
        Path(trace_path).write_text(
            "".join(json.dumps(t, ensure_ascii=False) + "\n" for t in traces),
            encoding="utf-8",
        )
    return PARTIAL if failures else OK


def run_stats(args: argparse.Namespace) -> int:
    try:
        records, diagnostics = _read_records(args.input)
    except (FileNotFoundError, CorpusError) as exc:
        return _fail(str(exc))
    for diagnostic in diagnostics:
        print(f"{args.input}:{diagnostic.line_no}: {diagnostic.message}", file=sys.stderr)
    annotations = [r.gold or r.predicted for r in records if r.gold or r.predicted]
    if not annotations:
        return _fail("no annotations in corpus")
    report = distribution(annotations)

    def name(pattern) -> str:
        rendered = render(pattern)
        return rendered if rendered else "(none)"

    rows = [(name(p), count) for p, count in report.rows]
    rows.append(("Other", report.other))
    rows.append(("Total", report.total))
    width = max(len(text) for text, _ in rows + [("Pattern", 0)])
    print(f"{'Pattern':<{width}}  {'Count':>5}  {'%':>6}")
    for text, count in rows:
        print(f"{text:<{width}}  {count:>5}  {100.0 * count / report.total:>6.1f}")
    return OK


def run_eval(args: argparse.Namespace) -> int:
    paths = args.input
    try:
        if len(paths) == 1:
            records, _ = _read_records(paths[0])
            pairs = [
                (r.gold, r.predicted) for r in records
            ]
            missing = [
                r.id for r, (g, p) in zip(records, pairs) if g is None or p is None
            ]
            if missing:
                return _fail(
                    "records missing gold or predicted annotations: "
                    + ", ".join(missing)
                )
            gold = [g for g, _ in pairs]
            predicted = [p for _, p in pairs]
        elif len(paths) == 2:
            gold_records, _ = _read_records(paths[0])
            predicted_records, _ = _read_records(paths[1])
            gold_by_id = {r.id: r for r in gold_records}
            predicted_by_id = {r.id: r for r in predicted_records}
            if set(gold_by_id) != set(predicted_by_id):
                odd = sorted(set(gold_by_id) ^ set(predicted_by_id))
                return _fail("ids not aligned across files: " + ", ".join(odd))
            gold, predicted, missing = [], [], []
            for record in gold_records:
                g = record.gold or record.predicted
                other = predicted_by_id[record.id]
                p = other.predicted or other.gold
                if g is None or p is None:
                    missing.append(record.id)
                else:
                    gold.append(g)
                    predicted.append(p)
            if missing:
                return _fail("records missing annotations: " + ", ".join(missing))
        else:
            return _fail("eval takes one annotated corpus or two corpora")
    except (FileNotFoundError, CorpusError) as exc:
        return _fail(str(exc))

    try:
        report = evaluate(gold, predicted)
    except AlignmentError as exc:
        return _fail(str(exc))
    print(format_eval_report(report))
    if args.output:
        Path(args.output).write_text(
            json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
    if args.strict and report.supertype_accuracy < _config_threshold(args):
        print(
            f"supertype accuracy {report.supertype_accuracy:.6f} below threshold "
            f"{_config_threshold(args):.6f}",
            file=sys.stderr,
        )
        return FATAL
    return OK


def _lemma_words(definition_id: str) -> list[str]:
    return definition_id.lower().replace("_", " ").split()


def _word_matches(lemma: str, token: str) -> bool:
    token = token.lower()
    if token == lemma:
        return True
    for suffix, replacement in _LEMMA_DETACH:
        if token.endswith(suffix) and len(token) > len(suffix):
            if token[: -len(suffix)] + replacement == lemma:
                return True
    return False


def _is_circular(definition_id: str, tokens: list[str]) -> bool:
    """The full definiendum lemma occurs in its own gloss.

    Multiword lemmas must appear as a contiguous phrase; single-word lemmas
    match any token up to plural detachment.
    """
    words = _lemma_words(definition_id)
    if not words:
        return False
    if len(words) == 1:
        return any(_word_matches(words[0], token) for token in tokens)
    lowered = [t.lower() for t in tokens]
    span = len(words)
    return any(lowered[i : i + span] == words for i in range(len(lowered) - span + 1))


def run_lint(args: argparse.Namespace) -> int:
    try:
        records, diagnostics = _read_records(args.input)
    except (FileNotFoundError, CorpusError) as exc:
        return _fail(str(exc))
    try:
        config = _load_config(args)
    except (FileNotFoundError, ValueError) as exc:
        return _fail(f"cannot load knowledge files: {exc}")

    findings = 0

    def report(record_id: str, message: str) -> None:
        nonlocal findings
        findings += 1
        print(f"{record_id}: {message}")

    for diagnostic in diagnostics:
        report(f"{args.input}:{diagnostic.line_no}", diagnostic.message)

    for record in records:
        annotation = record.gold or record.predicted
        residue = []
        if annotation is None and record.tree is not None:
            record_config = replace(config, instance_mode=record.instance)
            outcome = label(
                parse_bracketed(record.tree), record.pos, record_config, record.id
            )
            annotation = outcome.annotation
            residue = [t for t in outcome.rule_trace if t.rule == "unlabeled"]
        if annotation is None:
            report(record.id, "nothing to lint: no annotation and no tree")
            continue
        if annotation.ill_formed:
            report(record.id, "ill-formed definition: no supertype")
        for violation in validate(annotation):
            if violation.severity == ERROR or args.strict:
                report(
                    record.id,
                    f"validation {violation.severity}: {violation.kind}"
                    f" ({violation.message})",
                )
        tokens = list(annotation.tokens) if annotation.tokens else record.gloss.split()
        if _is_circular(record.id, tokens):
            report(record.id, "circular definition: definiendum occurs in its gloss")
        for entry in residue:
            report(
                record.id,
                f"unlabeled residue [{entry.start}, {entry.end}): {entry.reason}",
            )

    if findings:
        print(f"{findings} finding(s)")
        return PARTIAL
    print("clean")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defsrl",
        description="Entity-centered semantic role labeling for dictionary definitions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    knowledge = argparse.ArgumentParser(add_help=False)
    knowledge.add_argument("--noun-lexicon", help="noun wordlist path")
    knowledge.add_argument("--verb-lexicon", help="verb wordlist path")
    knowledge.add_argument("--loc-gazetteer", help="location gazetteer path")
    knowledge.add_argument("--time-gazetteer", help="time gazetteer path")
    knowledge.add_argument("--config", help="JSON config (accessory lists, thresholds)")

    p_label = sub.add_parser("label", parents=[knowledge], help="label a corpus")
    p_label.add_argument("--input", required=True)
    p_label.add_argument("--output", required=True)
    p_label.add_argument("--trace", action="store_true", help="write a trace sidecar")
    p_label.set_defaults(func=run_label)

    p_stats = sub.add_parser("stats", help="print the pattern distribution")
    p_stats.add_argument("--input", required=True)
    p_stats.set_defaults(func=run_stats)

    p_eval = sub.add_parser("eval", parents=[knowledge], help="score predictions")
    p_eval.add_argument(
        "--input", required=True, nargs="+",
        help="one corpus with gold+predicted, or gold file then predictions file",
    )
    p_eval.add_argument("--output", help="also write the report as JSON")
    p_eval.add_argument("--strict", action="store_true")
    p_eval.add_argument("--threshold", type=float, default=None)
    p_eval.set_defaults(func=run_eval)

    p_lint = sub.add_parser("lint", parents=[knowledge], help="sanity-check a corpus")
    p_lint.add_argument("--input", required=True)
    p_lint.add_argument("--strict", action="store_true",
                        help="treat validation warnings as findings")
    p_lint.set_defaults(func=run_lint)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
