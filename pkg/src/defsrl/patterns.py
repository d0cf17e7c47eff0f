"""Role-sequence patterns with (role)+ / OR(role)+ collapsing.

A pattern is the ordered sequence of role labels in an annotation, with
runs of two or more consecutive same-role spans collapsed to ``(role)+``,
or to ``OR(role)+`` when the instances are connected by "or". Particles and
quality modifiers never appear as pattern elements; event time/location do.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .rolemodel import Annotation, Role

__all__ = [
    "Repetition",
    "PatternElement",
    "Pattern",
    "PatternParseError",
    "pattern_of",
    "parse_pattern",
    "render",
]


class Repetition(str, Enum):
    SINGLE = "single"
    PLUS = "plus"
    OR_PLUS = "or_plus"


@dataclass(frozen=True)
class PatternElement:
    role: Role
    repetition: Repetition = Repetition.SINGLE

    def render(self) -> str:
        name = self.role.display_name()
        if self.repetition is Repetition.OR_PLUS:
            return f"OR({name})+"
        if self.repetition is Repetition.PLUS:
            return f"({name})+"
        return f"({name})"


@dataclass(frozen=True)
class Pattern:
    elements: tuple[PatternElement, ...]

    def __post_init__(self) -> None:
        for left, right in zip(self.elements, self.elements[1:]):
            if left.role is right.role:
                raise ValueError(
                    f"adjacent pattern elements share role {left.role.value!r}; "
                    "runs must be collapsed"
                )

    def render(self) -> str:
        return " ".join(element.render() for element in self.elements)


class PatternParseError(ValueError):
    pass


_EXCLUDED = frozenset((Role.PARTICLE, Role.QUALITY_MODIFIER))

_ELEMENT = re.compile(
    r"OR\((?P<orname>[a-z][a-z ]*)\)\+|\((?P<name>[a-z][a-z ]*)\)(?P<plus>\+)?"
)
_ROLE_BY_DISPLAY = {role.display_name(): role for role in Role}


def render(pattern: Pattern) -> str:
    return pattern.render()


def pattern_of(annotation: Annotation) -> Pattern:
    """The canonical pattern of an annotation.

    Spans contribute elements in surface order; a run of same-role spans
    collapses to one plus element, marked OR when any of the tokens between
    consecutive run members is "or".
    """
    items = sorted(
        (span for span in annotation.spans if span.role not in _EXCLUDED),
        key=lambda span: span.start,
    )
    elements: list[PatternElement] = []
    i = 0
    while i < len(items):
        j = i + 1
        or_joined = False
        while j < len(items) and items[j].role is items[i].role:
            gap = annotation.tokens[items[j - 1].end : items[j].start]
            if any(token.lower() == "or" for token in gap):
                or_joined = True
            j += 1
        if j - i == 1:
            repetition = Repetition.SINGLE
        elif or_joined:
            repetition = Repetition.OR_PLUS
        else:
            repetition = Repetition.PLUS
        elements.append(PatternElement(items[i].role, repetition))
        i = j
    return Pattern(tuple(elements))


def parse_pattern(text: str) -> Pattern:
    """Parse a rendered pattern string; inverse of ``render`` on canonical text."""
    elements: list[PatternElement] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        match = _ELEMENT.match(text, pos)
        if not match:
            raise PatternParseError(f"malformed pattern element at offset {pos}")
        name = match.group("orname") or match.group("name")
        role = _ROLE_BY_DISPLAY.get(name)
        if role is None:
            raise PatternParseError(f"unknown role {name!r}")
        if match.group("orname"):
            repetition = Repetition.OR_PLUS
        elif match.group("plus"):
            repetition = Repetition.PLUS
        else:
            repetition = Repetition.SINGLE
        if elements and elements[-1].role is role:
            raise PatternParseError(
                f"adjacent elements share role {role.value!r} at offset {pos}"
            )
        elements.append(PatternElement(role, repetition))
        pos = match.end()
    if not elements:
        raise PatternParseError("empty pattern")
    return Pattern(tuple(elements))
