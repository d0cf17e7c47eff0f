"""The twelve-role taxonomy for definition glosses, plus annotation plumbing.

An Annotation segments a tokenized definition into role spans. Four roles
are sub-roles and must point at a parent span: a quality modifier narrows a
differentia quality, event time/location attach to a differentia event, and
a particle completes any role it is split from. ``validate`` checks those
structural constraints; ``parse_gold``/``serialize_gold`` implement the flat
inline text format used in corpus files:

    a {supertype|coach} {differentia_quality|of baseball players}

Parent links are written ``{event_time@1|...}`` where 1 is the 0-based index
of the parent tagged segment. Untagged tokens are allowed and preserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Role",
    "RoleSpan",
    "Annotation",
    "Violation",
    "GoldParseError",
    "ERROR",
    "WARNING",
    "PARENT_REQUIRED_ROLES",
    "validate",
    "parse_gold",
    "serialize_gold",
]


class Role(str, Enum):
    SUPERTYPE = "supertype"
    DIFFERENTIA_QUALITY = "differentia_quality"
    DIFFERENTIA_EVENT = "differentia_event"
    EVENT_LOCATION = "event_location"
    EVENT_TIME = "event_time"
    ORIGIN_LOCATION = "origin_location"
    QUALITY_MODIFIER = "quality_modifier"
    PURPOSE = "purpose"
    ASSOCIATED_FACT = "associated_fact"
    ACCESSORY_DETERMINER = "accessory_determiner"
    ACCESSORY_QUALITY = "accessory_quality"
    PARTICLE = "particle"

    def display_name(self) -> str:
        return self.value.replace("_", " ")


_ROLE_BY_NAME = {role.value: role for role in Role}

# Sub-role -> allowed parent roles; None means any role may host.
_PARENT_TARGETS: dict[Role, tuple[Role, ...] | None] = {
    Role.QUALITY_MODIFIER: (Role.DIFFERENTIA_QUALITY,),
    Role.EVENT_TIME: (Role.DIFFERENTIA_EVENT,),
    Role.EVENT_LOCATION: (Role.DIFFERENTIA_EVENT,),
    Role.PARTICLE: None,
}
PARENT_REQUIRED_ROLES = frozenset(_PARENT_TARGETS)

ERROR = "error"
WARNING = "warning"

KIND_MISSING_SUPERTYPE = "missing_supertype"
KIND_ORPHAN_SUBROLE = "orphan_subrole"
KIND_UNEXPECTED_PARENT = "unexpected_parent"
KIND_PARENT_OUT_OF_RANGE = "parent_out_of_range"
KIND_PARENT_ROLE_MISMATCH = "parent_role_mismatch"
KIND_OVERLAPPING_SPANS = "overlapping_spans"
KIND_SPAN_OUT_OF_RANGE = "span_out_of_range"
KIND_SPANS_UNSORTED = "spans_unsorted"
KIND_ILL_FORMED_FLAG = "ill_formed_flag_mismatch"
KIND_FLOATING_COMPLEMENT = "floating_complement"

_TOKEN_UNSAFE = re.compile(r"[{}|\s]")


@dataclass(frozen=True)
class RoleSpan:
    """A role over the half-open token interval [start, end).

    ``parent`` is the index of the parent span within the same annotation;
    it is required exactly for the sub-roles listed in PARENT_REQUIRED_ROLES.
    """

    role: Role
    start: int
    end: int
    parent: int | None = None


@dataclass(frozen=True)
class Annotation:
    """An ordered set of disjoint role spans over a definition's tokens.

    ``ill_formed`` marks a gloss with no supertype; a well-formed annotation
    must contain at least one supertype span. ``tokens`` and ``spans`` are
    tuples so annotations hash and compare structurally.
    """

    definition_id: str
    tokens: tuple[str, ...]
    spans: tuple[RoleSpan, ...]
    ill_formed: bool = False

    def covered(self) -> set[int]:
        out: set[int] = set()
        for span in self.spans:
            out.update(range(span.start, span.end))
        return out

    def spans_of(self, role: Role) -> list[RoleSpan]:
        return [span for span in self.spans if span.role == role]


@dataclass(frozen=True)
class Violation:
    kind: str
    severity: str
    span_index: int | None
    message: str


class GoldParseError(ValueError):
    pass


def validate(annotation: Annotation) -> list[Violation]:
    """All constraint breaches in the annotation; empty means valid.

    Violations are data, not exceptions: errors break structural
    invariants, warnings flag suspicious but representable content
    (a purpose or associated fact with no identifying differentia).
    """
    violations: list[Violation] = []
    n = len(annotation.tokens)
    spans = annotation.spans

    for idx, span in enumerate(spans):
        if not (0 <= span.start < span.end <= n):
            violations.append(
                Violation(
                    KIND_SPAN_OUT_OF_RANGE,
                    ERROR,
                    idx,
                    f"span [{span.start}, {span.end}) outside tokens [0, {n})",
                )
            )
    for idx in range(1, len(spans)):
        if spans[idx].start < spans[idx - 1].start:
            violations.append(
                Violation(KIND_SPANS_UNSORTED, ERROR, idx, "spans not sorted by start")
            )
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if spans[i].start < spans[j].end and spans[j].start < spans[i].end:
                violations.append(
                    Violation(
                        KIND_OVERLAPPING_SPANS,
                        ERROR,
                        j,
                        f"span {j} overlaps span {i}",
                    )
                )

    for idx, span in enumerate(spans):
        requires_parent = span.role in PARENT_REQUIRED_ROLES
        if requires_parent and span.parent is None:
            violations.append(
                Violation(
                    KIND_ORPHAN_SUBROLE,
                    ERROR,
                    idx,
                    f"{span.role.value} requires a parent span",
                )
            )
        elif not requires_parent and span.parent is not None:
            violations.append(
                Violation(
                    KIND_UNEXPECTED_PARENT,
                    ERROR,
                    idx,
                    f"{span.role.value} does not take a parent",
                )
            )
        elif span.parent is not None:
            if not 0 <= span.parent < len(spans) or span.parent == idx:
                violations.append(
                    Violation(
                        KIND_PARENT_OUT_OF_RANGE,
                        ERROR,
                        idx,
                        f"parent index {span.parent} out of range",
                    )
                )
            else:
                allowed = _PARENT_TARGETS[span.role]
                target = spans[span.parent].role
                if allowed is not None and target not in allowed:
                    expected = " or ".join(role.value for role in allowed)
                    violations.append(
                        Violation(
                            KIND_PARENT_ROLE_MISMATCH,
                            ERROR,
                            idx,
                            f"{span.role.value} must attach to {expected}, "
                            f"not {target.value}",
                        )
                    )

    has_supertype = any(span.role is Role.SUPERTYPE for span in spans)
    if not annotation.ill_formed and not has_supertype:
        violations.append(
            Violation(
                KIND_MISSING_SUPERTYPE,
                ERROR,
                None,
                "well-formed annotation lacks a supertype span",
            )
        )
    if annotation.ill_formed and has_supertype:
        violations.append(
            Violation(
                KIND_ILL_FORMED_FLAG,
                ERROR,
                None,
                "annotation flagged ill-formed but contains a supertype",
            )
        )

    has_differentia = any(
        span.role in (Role.DIFFERENTIA_QUALITY, Role.DIFFERENTIA_EVENT)
        for span in spans
    )
    if not has_differentia:
        for idx, span in enumerate(spans):
            if span.role in (Role.PURPOSE, Role.ASSOCIATED_FACT):
                violations.append(
                    Violation(
                        KIND_FLOATING_COMPLEMENT,
                        WARNING,
                        idx,
                        f"{span.role.value} with no differentia quality/event present",
                    )
                )
    return violations


def parse_gold(text: str, definition_id: str = "") -> Annotation:
    """Parse the inline annotation format into an Annotation.

    The ill-formed flag is derived: an annotation without a supertype
    segment is ill-formed by definition. Structural problems beyond the
    format itself (orphan sub-roles, overlaps) are left for ``validate``.
    """
    tokens: list[str] = []
    segments: list[tuple[Role, int | None, int, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "}":
            raise GoldParseError(f"unmatched '}}' at offset {i}")
        if ch == "{":
            close = text.find("}", i + 1)
            if close < 0:
                raise GoldParseError(f"unclosed '{{' at offset {i}")
            segment = text[i + 1 : close]
            if "{" in segment:
                raise GoldParseError(f"nested '{{' at offset {i}")
            head, bar, body = segment.partition("|")
            if not bar:
                raise GoldParseError(f"segment missing '|' at offset {i}")
            name, at, parent_text = head.partition("@")
            role = _ROLE_BY_NAME.get(name.strip())
            if role is None:
                raise GoldParseError(f"unknown role {name.strip()!r}")
            parent: int | None = None
            if at:
                try:
                    parent = int(parent_text)
                except ValueError:
                    raise GoldParseError(
                        f"bad parent reference {parent_text!r}"
                    ) from None
            words = body.split()
            if not words:
                raise GoldParseError(f"empty segment at offset {i}")
            start = len(tokens)
            tokens.extend(words)
            segments.append((role, parent, start, len(tokens)))
            i = close + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "{}":
                j += 1
            tokens.append(text[i:j])
            i = j

    spans = []
    for index, (role, parent, start, end) in enumerate(segments):
        if parent is not None:
            if role not in PARENT_REQUIRED_ROLES:
                raise GoldParseError(
                    f"role {role.value!r} does not take a parent reference"
                )
            if not 0 <= parent < len(segments) or parent == index:
                raise GoldParseError(f"parent index {parent} out of range")
            allowed = _PARENT_TARGETS[role]
            target = segments[parent][0]
            if allowed is not None and target not in allowed:
                raise GoldParseError(
                    f"{role.value} cannot attach to {target.value}"
                )
        spans.append(RoleSpan(role, start, end, parent))

    ill_formed = not any(span.role is Role.SUPERTYPE for span in spans)
    return Annotation(definition_id, tuple(tokens), tuple(spans), ill_formed)


def serialize_gold(annotation: Annotation) -> str:
    """Canonical single-line inline form of a validate-clean annotation."""
    errors = [v for v in validate(annotation) if v.severity == ERROR]
    if errors:
        details = "; ".join(f"{v.kind}: {v.message}" for v in errors)
        raise ValueError(f"cannot serialize invalid annotation: {details}")
    for token in annotation.tokens:
        if not token or _TOKEN_UNSAFE.search(token):
            raise ValueError(f"token {token!r} cannot be represented inline")

    parts: list[str] = []
    position = 0
    for span in annotation.spans:
        parts.extend(annotation.tokens[position : span.start])
        head = span.role.value if span.parent is None else f"{span.role.value}@{span.parent}"
        body = " ".join(annotation.tokens[span.start : span.end])
        parts.append(f"{{{head}|{body}}}")
        position = span.end
    parts.extend(annotation.tokens[position:])
    return " ".join(parts)
