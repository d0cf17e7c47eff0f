from __future__ import annotations

import json
from pathlib import Path

import pytest

from defsrl.cli import main
from defsrl.corpus import DefinitionRecord, read_corpus, write_corpus
from defsrl.defaults import BUNDLED_CORPUS, packaged_data_text
from defsrl.rolemodel import parse_gold


@pytest.fixture()
def corpus_path(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text(packaged_data_text(BUNDLED_CORPUS), encoding="utf-8")
    return path


# --- label -------------------------------------------------------------------------


def test_label_bundled_corpus(corpus_path, tmp_path):
    out = tmp_path / "labeled.jsonl"
    assert main(["label", "--input", str(corpus_path), "--output", str(out)]) == 0
    records, diagnostics = read_corpus(out.read_text(encoding="utf-8"))
    assert diagnostics == []
    assert len(records) == 15
    assert all(r.predicted is not None for r in records)
    tertiary = next(r for r in records if r.id == "Tertiary_period")
    assert tertiary.predicted.ill_formed


def test_label_is_byte_deterministic(corpus_path, tmp_path):
    out1 = tmp_path / "one.jsonl"
    out2 = tmp_path / "two.jsonl"
    main(["label", "--input", str(corpus_path), "--output", str(out1)])
    main(["label", "--input", str(corpus_path), "--output", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_label_empty_input_is_fatal(tmp_path, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    out = tmp_path / "out.jsonl"
    assert main(["label", "--input", str(empty), "--output", str(out)]) == 1
    assert "zero records" in capsys.readouterr().err


def test_label_missing_input_is_fatal(tmp_path):
    out = tmp_path / "out.jsonl"
    assert main(["label", "--input", str(tmp_path / "nope.jsonl"), "--output", str(out)]) == 1


def test_label_record_without_tree_is_partial(tmp_path, capsys):
    path = tmp_path / "corpus.jsonl"
    path.write_text(
        '{"id": "a", "pos": "noun", "gloss": "a coach", '
        '"tree": "(NP (DT a) (NN coach))"}\n'
        '{"id": "b", "pos": "noun", "gloss": "no tree here"}\n',
        encoding="utf-8",
    )
    out = tmp_path / "out.jsonl"
    assert main(["label", "--input", str(path), "--output", str(out)]) == 2
    assert "no parse tree" in capsys.readouterr().err
    records, _ = read_corpus(out.read_text(encoding="utf-8"))
    assert records[0].predicted is not None
    assert records[1].predicted is None


def test_label_trace_sidecar(corpus_path, tmp_path):
    out = tmp_path / "labeled.jsonl"
    assert (
        main(["label", "--input", str(corpus_path), "--output", str(out), "--trace"])
        == 0
    )
    trace_path = Path(str(out) + ".trace")
    lines = trace_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 15
    payload = json.loads(lines[0])
    assert payload["id"] == "footwear"
    assert all({"rule", "start", "end", "reason"} <= set(t) for t in payload["trace"])


def test_label_custom_lexicon_flag(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text(
        '{"id": "a", "pos": "noun", "gloss": "a gadget", '
        '"tree": "(NP (DT a) (NN gadget))"}\n',
        encoding="utf-8",
    )
    lexicon = tmp_path / "nouns.txt"
    lexicon.write_text("gadget\n", encoding="utf-8")
    out = tmp_path / "out.jsonl"
    assert (
        main(
            [
                "label",
                "--input", str(path),
                "--output", str(out),
                "--noun-lexicon", str(lexicon),
            ]
        )
        == 0
    )
    records, _ = read_corpus(out.read_text(encoding="utf-8"))
    assert not records[0].predicted.ill_formed


# --- stats -------------------------------------------------------------------------


def test_stats_bundled_corpus(corpus_path, capsys):
    assert main(["stats", "--input", str(corpus_path)]) == 0
    output = capsys.readouterr().out
    assert "(supertype) (differentia quality)" in output
    assert "Other" in output
    assert "Total" in output
    # Percentages in the table sum to ~100.
    rows = [line for line in output.splitlines()[1:] if line.strip()]
    total_row = [line for line in rows if line.startswith("Total")][0]
    assert total_row.split()[-1] == "100.0"


def test_stats_single_annotation(tmp_path, capsys):
    path = tmp_path / "one.jsonl"
    path.write_text(
        '{"id": "a", "pos": "noun", "gloss": "a coach", "gold": "a {supertype|coach}"}\n',
        encoding="utf-8",
    )
    assert main(["stats", "--input", str(path)]) == 0
    output = capsys.readouterr().out
    assert "Total" in output and "  1  " in output


def test_stats_without_annotations_is_fatal(tmp_path, capsys):
    path = tmp_path / "bare.jsonl"
    path.write_text('{"id": "a", "pos": "noun", "gloss": "a coach"}\n', encoding="utf-8")
    assert main(["stats", "--input", str(path)]) == 1
    assert "no annotations" in capsys.readouterr().err


# --- eval --------------------------------------------------------------------------


def test_eval_identical_files_scores_one(corpus_path, capsys):
    assert main(["eval", "--input", str(corpus_path), str(corpus_path)]) == 0
    output = capsys.readouterr().out
    assert "supertype accuracy: 1.000000" in output
    assert "ill-formed agreement: 1.000000" in output


def test_eval_single_file_with_both_fields(corpus_path, tmp_path, capsys):
    labeled = tmp_path / "labeled.jsonl"
    main(["label", "--input", str(corpus_path), "--output", str(labeled)])
    assert main(["eval", "--input", str(labeled)]) == 0
    output = capsys.readouterr().out
    assert "supertype accuracy: 1.000000" in output


def test_eval_strict_threshold(tmp_path, capsys):
    # Five definitions, one supertype wrong: accuracy 0.8 under threshold 0.9.
    gold_records = []
    predicted_records = []
    for i in range(5):
        gold = parse_gold("a {supertype|coach} {differentia_quality|of players}", f"d{i}")
        if i == 0:
            predicted = parse_gold(
                "a coach {differentia_quality|of players}".replace(
                    "a coach", "{supertype|a} coach"
                ),
                f"d{i}",
            )
        else:
            predicted = gold
        gold_records.append(
            DefinitionRecord(f"d{i}", "noun", "a coach of players", gold=gold)
        )
        predicted_records.append(
            DefinitionRecord(f"d{i}", "noun", "a coach of players", gold=predicted)
        )
    gold_path = tmp_path / "gold.jsonl"
    predicted_path = tmp_path / "pred.jsonl"
    gold_path.write_text(write_corpus(gold_records), encoding="utf-8")
    predicted_path.write_text(write_corpus(predicted_records), encoding="utf-8")

    assert (
        main(["eval", "--input", str(gold_path), str(predicted_path)]) == 0
    )
    assert (
        main(
            [
                "eval",
                "--input", str(gold_path), str(predicted_path),
                "--strict", "--threshold", "0.9",
            ]
        )
        == 1
    )
    assert "below threshold" in capsys.readouterr().err


def test_eval_report_json_output(corpus_path, tmp_path):
    report_path = tmp_path / "report.json"
    assert (
        main(
            [
                "eval",
                "--input", str(corpus_path), str(corpus_path),
                "--output", str(report_path),
            ]
        )
        == 0
    )
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    assert payload["supertype_accuracy"] == 1.0
    assert payload["roles"]["supertype"]["exact"]["f1"] == 1.0


def test_eval_alignment_error_names_ids(tmp_path, capsys):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    a.write_text(
        '{"id": "x", "pos": "noun", "gloss": "g", "gold": "{supertype|coach}"}\n',
        encoding="utf-8",
    )
    b.write_text(
        '{"id": "y", "pos": "noun", "gloss": "g", "gold": "{supertype|coach}"}\n',
        encoding="utf-8",
    )
    assert main(["eval", "--input", str(a), str(b)]) == 1
    err = capsys.readouterr().err
    assert "x" in err and "y" in err


# --- lint --------------------------------------------------------------------------


def test_lint_flags_ill_formed_and_circular(corpus_path, capsys):
    assert main(["lint", "--input", str(corpus_path)]) == 2
    output = capsys.readouterr().out
    assert "Tertiary_period: ill-formed definition" in output
    # The Mohorovicic gloss genuinely repeats its definiendum.
    assert "Mohorovicic: circular definition" in output


def test_lint_clean_corpus(tmp_path, capsys):
    path = tmp_path / "clean.jsonl"
    path.write_text(
        '{"id": "trainer", "pos": "noun", "gloss": "a coach of players", '
        '"gold": "a {supertype|coach} {differentia_quality|of players}"}\n',
        encoding="utf-8",
    )
    assert main(["lint", "--input", str(path)]) == 0
    assert "clean" in capsys.readouterr().out


def test_lint_circularity_via_headword(tmp_path, capsys):
    path = tmp_path / "circular.jsonl"
    path.write_text(
        '{"id": "coach", "pos": "noun", "gloss": "a coach of a team", '
        '"gold": "a {supertype|coach} {differentia_quality|of a team}"}\n',
        encoding="utf-8",
    )
    assert main(["lint", "--input", str(path)]) == 2
    assert "circular definition" in capsys.readouterr().out


def test_lint_labels_when_no_annotation_present(tmp_path, capsys):
    path = tmp_path / "unlabeled.jsonl"
    path.write_text(
        '{"id": "widget", "pos": "noun", "gloss": "from then on", '
        '"tree": "(ADVP (IN from) (RB then) (RB on))"}\n',
        encoding="utf-8",
    )
    assert main(["lint", "--input", str(path)]) == 2
    assert "ill-formed" in capsys.readouterr().out


def test_lint_strict_reports_warnings(tmp_path, capsys):
    path = tmp_path / "warn.jsonl"
    path.write_text(
        '{"id": "gadget", "pos": "noun", "gloss": "a thing to see", '
        '"gold": "a {supertype|thing} {purpose|to see}"}\n',
        encoding="utf-8",
    )
    assert main(["lint", "--input", str(path)]) == 0
    assert main(["lint", "--input", str(path), "--strict"]) == 2
    assert "floating_complement" in capsys.readouterr().out
