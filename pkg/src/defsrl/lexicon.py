"""Lexical entry sets and location/time gazetteers backing the labeling rules.

A Lexicon answers "is this token sequence a dictionary entry?" with a
plural-to-singular fallback for nouns; a Gazetteer answers "does this token
sequence mention a known location / time expression?" with a few built-in
closed-class time patterns (years, Nth century, month names).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "NOUN",
    "VERB",
    "LOCATION",
    "TIME",
    "Lexicon",
    "Gazetteer",
    "LexiconFormatError",
    "load_wordlist",
    "load_wndb_index",
    "load_gazetteer",
    "longest_rightmost_entry",
    "gazetteer_match",
]

NOUN = "noun"
VERB = "verb"
LOCATION = "location"
TIME = "time"

_YEAR = re.compile(r"^\d{4}$")
_ORDINAL = re.compile(r"^\d+(st|nd|rd|th)$")
MONTHS = frozenset(
    [
        "january",
        "february",
        "march",
        "april",
        "may",
        "june",
        "july",
        "august",
        "september",
        "october",
        "november",
        "december",
    ]
)

# Suffix detachments for noun lookups, applied longest-first to the final word.
_NOUN_DETACHMENTS = (
    ("ches", "ch"),
    ("shes", "sh"),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ies", "y"),
    ("men", "man"),
    ("s", ""),
)


class LexiconFormatError(ValueError):
    """A source line violated the entry format. ``line_no`` is 1-based."""

    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _normalize_entry(text: str, joiner: str) -> str:
    entry = joiner.join(text.split()).lower()
    if joiner == "_":
        # WNDB lemmas arrive pre-joined; validate rather than re-join.
        if not entry:
            raise ValueError("empty entry")
        if entry.startswith("_") or entry.endswith("_") or "__" in entry:
            raise ValueError(f"bad underscore placement in {entry!r}")
    elif not entry:
        raise ValueError("empty entry")
    return entry


def _noun_variants(word: str) -> list[str]:
    variants = [word]
    for suffix, replacement in _NOUN_DETACHMENTS:
        if word.endswith(suffix):
            variant = word[: -len(suffix)] + replacement
            if variant and variant != word and variant not in variants:
                variants.append(variant)
    return variants


@dataclass(frozen=True)
class Lexicon:
    """An immutable set of lowercase, underscore-joined lemma entries."""

    pos: str
    entries: frozenset[str]
    max_words: int

    @classmethod
    def from_entries(cls, pos: str, entries: Iterable[str]) -> "Lexicon":
        if pos not in (NOUN, VERB):
            raise ValueError(f"pos must be {NOUN!r} or {VERB!r}, got {pos!r}")
        normalized = frozenset(_normalize_entry(e, "_") for e in entries)
        max_words = max((e.count("_") + 1 for e in normalized), default=0)
        return cls(pos, normalized, max_words)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, phrase: str) -> bool:
        return self.lookup_tokens(phrase.replace("_", " ").split()) is not None

    def lookup_tokens(self, tokens: Sequence[str]) -> str | None:
        """The entry matching ``tokens``, or None.

        Matching is case-insensitive; for noun lexicons a missing exact form
        falls back to singular variants of the last word.
        """
        if not tokens:
            return None
        lowered = [t.lower() for t in tokens]
        joined = "_".join(lowered)
        if joined in self.entries:
            return joined
        if self.pos == NOUN:
            prefix = lowered[:-1]
            for variant in _noun_variants(lowered[-1])[1:]:
                candidate = "_".join(prefix + [variant])
                if candidate in self.entries:
                    return candidate
        return None


def load_wordlist(text: str, pos: str = NOUN) -> Lexicon:
    """Build a Lexicon from line-oriented text (blank lines and # comments skipped)."""
    entries = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            entries.append(_normalize_entry(stripped, "_"))
        except ValueError as exc:
            raise LexiconFormatError(str(exc), line_no) from exc
    return Lexicon.from_entries(pos, entries)


def load_wndb_index(text: str, pos: str) -> Lexicon:
    """Build a Lexicon from a WNDB-style index file.

    Header lines begin with two spaces; each data line is whitespace
    separated with the (already underscore-joined) lemma as first field.
    """
    entries = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.startswith("  "):
            continue
        fields = line.split()
        if not fields:
            raise LexiconFormatError("blank data line", line_no)
        try:
            entries.append(_normalize_entry(fields[0], "_"))
        except ValueError as exc:
            raise LexiconFormatError(str(exc), line_no) from exc
    return Lexicon.from_entries(pos, entries)


@dataclass(frozen=True)
class Gazetteer:
    """Normalized surface phrases naming locations or time expressions."""

    kind: str
    entries: frozenset[str]
    max_words: int
    single_words: frozenset[str]

    @classmethod
    def from_entries(cls, kind: str, entries: Iterable[str]) -> "Gazetteer":
        if kind not in (LOCATION, TIME):
            raise ValueError(f"kind must be {LOCATION!r} or {TIME!r}, got {kind!r}")
        normalized = frozenset(_normalize_entry(e, " ") for e in entries)
        max_words = max((e.count(" ") + 1 for e in normalized), default=0)
        single = frozenset(e for e in normalized if " " not in e)
        return cls(kind, normalized, max_words, single)

    def __len__(self) -> int:
        return len(self.entries)


def load_gazetteer(text: str, kind: str) -> Gazetteer:
    entries = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            entries.append(_normalize_entry(stripped, " "))
        except ValueError as exc:
            raise LexiconFormatError(str(exc), line_no) from exc
    return Gazetteer.from_entries(kind, entries)


def longest_rightmost_entry(
    lexicon: Lexicon, tokens: Sequence[str]
) -> tuple[int, str] | None:
    """The longest suffix of ``tokens`` present in the lexicon.

    Returns (start offset of the suffix, matched entry); offset 0 means the
    whole sequence matched. None when no suffix is an entry.
    """
    if not tokens:
        raise ValueError("tokens must be non-empty")
    n = len(tokens)
    first = 0 if lexicon.max_words <= 0 else max(0, n - lexicon.max_words)
    for i in range(first, n):
        entry = lexicon.lookup_tokens(tokens[i:])
        if entry is not None:
            return (i, entry)
    return None


def gazetteer_match(gazetteer: Gazetteer, tokens: Sequence[str]) -> bool:
    """True when the tokens mention a gazetteer entry.

    Checks every contiguous subsequence against the entry set; time
    gazetteers additionally apply the built-in year / Nth-century / month
    patterns, and location gazetteers accept a capitalized non-initial token
    matching a single-word entry.
    """
    if not tokens:
        raise ValueError("tokens must be non-empty")
    lowered = [t.lower() for t in tokens]
    n = len(lowered)
    if gazetteer.max_words > 0:
        for i in range(n):
            limit = min(n, i + gazetteer.max_words)
            for j in range(i + 1, limit + 1):
                if " ".join(lowered[i:j]) in gazetteer.entries:
                    return True
    if gazetteer.kind == TIME:
        for i, word in enumerate(lowered):
            if _YEAR.match(word):
                return True
            if _ORDINAL.match(word) and i + 1 < n and lowered[i + 1] == "century":
                return True
            if word in MONTHS:
                return True
    else:
        for i in range(1, n):
            if tokens[i][:1].isupper() and lowered[i] in gazetteer.single_words:
                return True
    return False
