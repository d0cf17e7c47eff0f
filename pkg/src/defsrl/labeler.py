"""The rule engine: assign definition roles from a constituency parse.

The engine is entirely syntactic and deterministic. A noun gloss is anchored
on the innermost, leftmost NP containing a noun: the longest rightmost
lexicon entry inside it becomes the supertype, anything left of it inside
the NP becomes a pre-supertype differentia quality, and the constituents
after the supertype are classified left to right by a fixed rule priority:

    1. PRT                        -> particle (hosted by the supertype)
    2. VP led by TO, or "for" PP
       with a VP directly inside  -> purpose
    3. SBAR / clause, or other PP
       with a VP directly inside  -> associated fact when a differentia
                                     already exists and a non-restrictive
                                     cue opens the clause; else
                                     differentia event
    4. VP (noun glosses)          -> differentia event
    5. PP outside SBAR/VP with a
       location-gazetteer hit     -> origin location
    6. PP / NP / ADJP / ADVP      -> differentia quality (split on CC)

Gazetteer-matched PPs inside a differentia event are carved out as event
location / event time; a leading adverb or adjective directly before the
head of an ADJP/ADVP quality is carved out as its quality modifier. Two
decisions are genuinely semantic and therefore flagged in the rule trace as
documented divergences rather than guessed at: purpose vs. differentia
event for "for"+VP phrases, and accessory vs. differentia quality for
word-list matches.

Verb glosses take the leftmost VB (plus "or"/"and"-conjoined VBs in the
same VP) as supertypes; a verb gloss with no VB leaf falls back to the noun
rules before being declared ill-formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lexicon import (
    Gazetteer,
    Lexicon,
    NOUN,
    VERB,
    gazetteer_match,
    longest_rightmost_entry,
)
from .rolemodel import (
    Annotation,
    ERROR,
    Role,
    RoleSpan,
    validate,
)
from .syntree import SynTree, constituents_after, dominated_by

__all__ = [
    "LabelerConfig",
    "LabelOutcome",
    "TraceEntry",
    "EmptyDefinitionError",
    "DIVERGENCE_PURPOSE_EVENT",
    "DIVERGENCE_ACCESSORY_QUALITY",
    "DEFAULT_ACCESSORY_DETERMINER_PHRASES",
    "DEFAULT_ACCESSORY_QUALITY_WORDS",
    "preprocess_gloss",
    "detect_supertype_noun",
    "detect_supertype_verb",
    "detect_accessory_determiner",
    "detect_instance_origin",
    "detect_quality_modifier",
    "detect_accessory_quality",
    "classify_post_supertype",
    "label",
]

ARTICLES = frozenset(("a", "an", "the"))
_COORDINATORS = frozenset(("or", "and"))

# Lexical cues opening a non-restrictive clause (an associated fact rather
# than an identifying differentia event).
_FACT_CUES = (("for", "whom"), ("which", "was"), ("whose",))

DEFAULT_ACCESSORY_DETERMINER_PHRASES = (
    "any of several",
    "a type of",
    "a form of",
    "any of a class of",
    "any of various",
    "any of numerous",
)
DEFAULT_ACCESSORY_QUALITY_WORDS = ("large",)

DIVERGENCE_PURPOSE_EVENT = (
    "documented divergence: purpose vs differentia event for 'for'+VP "
    "is semantic; labeled purpose by syntax"
)
DIVERGENCE_ACCESSORY_QUALITY = (
    "documented divergence: accessory vs differentia quality is semantic; "
    "decided by word list and co-present differentia"
)


class EmptyDefinitionError(ValueError):
    """The gloss is empty (or empty after cleaning)."""


@dataclass(frozen=True)
class LabelerConfig:
    """Knowledge inputs for the rule engine.

    ``instance_mode`` marks glosses whose definiendum denotes an instance
    (a named individual), enabling the pre-supertype origin-location rule.
    """

    noun_lexicon: Lexicon
    verb_lexicon: Lexicon
    location_gazetteer: Gazetteer
    time_gazetteer: Gazetteer
    accessory_determiner_phrases: tuple[str, ...] = DEFAULT_ACCESSORY_DETERMINER_PHRASES
    accessory_quality_words: frozenset[str] = frozenset(DEFAULT_ACCESSORY_QUALITY_WORDS)
    instance_mode: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "accessory_determiner_phrases",
            tuple(" ".join(p.lower().split()) for p in self.accessory_determiner_phrases),
        )
        object.__setattr__(
            self,
            "accessory_quality_words",
            frozenset(w.lower() for w in self.accessory_quality_words),
        )


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    start: int
    end: int
    reason: str


@dataclass(frozen=True)
class LabelOutcome:
    annotation: Annotation
    rule_trace: tuple[TraceEntry, ...]


def preprocess_gloss(gloss: str) -> str:
    """Strip parentheticals and example sentences from a raw gloss.

    Parenthesized substrings (nesting included) are removed, the gloss is
    split on ";", segments opening with a quote (example sentences) are
    dropped, and the first surviving segment is returned with whitespace
    normalized. Raises EmptyDefinitionError when nothing survives.
    """
    depth = 0
    kept: list[str] = []
    for ch in gloss:
        if ch == "(":
            depth += 1
        elif ch == ")":
            if depth > 0:
                depth -= 1
        elif depth == 0:
            kept.append(ch)
    for segment in "".join(kept).split(";"):
        stripped = segment.strip()
        if not stripped:
            continue
        if stripped[0] in "\"“`":
            continue
        return " ".join(stripped.split())
    raise EmptyDefinitionError("gloss is empty after cleaning")


# ---------------------------------------------------------------------------
# Internal working representation: spans under construction reference their
# parents by object so indices can be resolved once, after final ordering.


@dataclass
class _Span:
    role: Role
    start: int
    end: int
    parent: "_Span | None" = None


@dataclass
class _NounDetection:
    np: SynTree
    hits: list[tuple[tuple[int, int], tuple[int, int] | None]]
    dropped_determiners: list[tuple[int, int]] = field(default_factory=list)


def _split_on_cc(node: SynTree) -> list[list[SynTree]]:
    """Child groups of ``node`` split at child-level CC leaves."""
    if not any(child.label == "CC" for child in node.children):
        return [list(node.children)] if node.children else []
    groups: list[list[SynTree]] = []
    current: list[SynTree] = []
    for child in node.children:
        if child.label == "CC":
            if current:
                groups.append(current)
            current = []
        else:
            current.append(child)
    if current:
        groups.append(current)
    return groups


def _detect_noun_supertypes(
    tree: SynTree, config: LabelerConfig, min_start: int = 0
) -> _NounDetection | None:
    from .syntree import _innermost_leftmost_np_from

    np = _innermost_leftmost_np_from(tree, min_start)
    if np is None:
        return None
    detection = _NounDetection(np, [])
    for group in _split_on_cc(np):
        leaves = [leaf for node in group for leaf in node.leaves()]
        k = 0
        while k < len(leaves) and leaves[k].label == "DT":
            detection.dropped_determiners.append((leaves[k].start, leaves[k].end))
            k += 1
        core = leaves[k:]
        if not core:
            continue
        hit = longest_rightmost_entry(config.noun_lexicon, [l.token for l in core])
        if hit is None:
            continue
        offset, _ = hit
        supertype = (core[offset].start, core[-1].end)
        leftover = (core[0].start, core[offset].start) if offset > 0 else None
        detection.hits.append((supertype, leftover))
    if not detection.hits:
        return None
    return detection


def detect_supertype_noun(
    tree: SynTree, config: LabelerConfig
) -> list[tuple[tuple[int, int], tuple[int, int] | None]] | None:
    """Supertype spans for a noun gloss, each with an optional leftover span.

    The leftover covers tokens left of the matched entry inside the anchor
    NP; it is labeled differentia quality downstream. None when no NP
    qualifies or no lexicon entry matches inside it.
    """
    detection = _detect_noun_supertypes(tree, config)
    return detection.hits if detection else None


def _leaf_path(root: SynTree, leaf: SynTree) -> list[SynTree] | None:
    if root is leaf:
        return [root]
    for child in root.children:
        path = _leaf_path(child, leaf)
        if path is not None:
            return [root] + path
    return None


def _conjoined_in_vp(tree: SynTree, first: SynTree, candidate: SynTree) -> bool:
    path_a = _leaf_path(tree, first)
    path_b = _leaf_path(tree, candidate)
    if path_a is None or path_b is None:
        return False
    lca = None
    for a, b in zip(path_a, path_b):
        if a is b:
            lca = a
        else:
            break
    if lca is None or lca.label != "VP":
        return False
    below = path_b[path_b.index(lca) + 1 : -1]
    return all(node.label == "VP" for node in below)


def detect_supertype_verb(
    tree: SynTree, config: LabelerConfig
) -> list[tuple[int, int]] | None:
    """Supertype spans for a verb gloss: the leftmost VB plus conjoined VBs.

    A later VB joins only when the nearest preceding non-supertype leaf is
    an "or"/"and" CC and the VB sits in the same VP chain as the first.
    None when the tree has no VB leaf at all.
    """
    leaves = tree.leaves()
    verb_indices = [i for i, leaf in enumerate(leaves) if leaf.label.startswith("VB")]
    if not verb_indices:
        return None
    chosen = [verb_indices[0]]
    chosen_set = {verb_indices[0]}
    first_leaf = leaves[verb_indices[0]]
    for i in verb_indices[1:]:
        j = i - 1
        while j >= 0 and j in chosen_set:
            j -= 1
        if j < 0:
            continue
        prev = leaves[j]
        if (
            prev.label == "CC"
            and prev.token is not None
            and prev.token.lower() in _COORDINATORS
            and _conjoined_in_vp(tree, first_leaf, leaves[i])
        ):
            chosen.append(i)
            chosen_set.add(i)
    return [(i, i + 1) for i in chosen]


@dataclass(frozen=True)
class _DeterminerHit:
    span: tuple[int, int]
    redetect_from: int | None


def _detect_determiner(
    tree: SynTree,
    supertype_start: int,
    np: SynTree,
    config: LabelerConfig,
) -> _DeterminerHit | None:
    leaves = tree.leaves()
    if supertype_start == 0:
        return None
    prefix = leaves[:supertype_start]

    # Noun-free material reaching back before the anchor NP is the whole
    # determiner expression; leftovers inside it are absorbed.
    if np.start > 0 and not any(l.label.startswith("NN") for l in prefix):
        start = 0
        if (
            prefix[0].label == "DT"
            and prefix[0].token is not None
            and prefix[0].token.lower() in ARTICLES
            and supertype_start > 1
        ):
            start = 1
        if start < supertype_start:
            return _DeterminerHit((start, supertype_start), None)

    # Otherwise a configured phrase may reveal that the anchor NP itself is
    # a determiner expression ("a type of X"); the supertype is then
    # re-detected after the phrase. Matching ignores a leading article on
    # either side.
    tokens = [l.token.lower() if l.token else "" for l in leaves]
    gloss_offset = 1 if tokens and tokens[0] in ARTICLES else 0
    for phrase in config.accessory_determiner_phrases:
        words = phrase.split()
        core = words[1:] if words and words[0] in ARTICLES else words
        if not core:
            continue
        end = gloss_offset + len(core)
        if end <= supertype_start or end >= len(tokens):
            continue
        if tokens[gloss_offset:end] == core:
            return _DeterminerHit((0, end), end)
    return None


def detect_accessory_determiner(
    tree: SynTree, supertype_start: int, config: LabelerConfig
) -> tuple[int, int] | None:
    """The accessory-determiner span preceding the supertype, if any."""
    detection = _detect_noun_supertypes(tree, config)
    if detection is None:
        return None
    hit = _detect_determiner(tree, supertype_start, detection.np, config)
    return hit.span if hit else None


def detect_instance_origin(
    tree: SynTree, supertype_start: int, config: LabelerConfig
) -> tuple[int, int] | None:
    """Pre-supertype origin location for instance definienda.

    Fires only in instance mode, when the tokens before the supertype are an
    NP (or NP prefix) with a location-gazetteer hit. Takes precedence over
    the pre-supertype differentia-quality leftover.
    """
    if not config.instance_mode or supertype_start <= 0:
        return None
    leaves = tree.leaves()
    prefix = leaves[:supertype_start]
    covers_prefix = any(
        node.label == "NP" and node.start == 0 and node.end >= supertype_start
        for node in tree.subtrees()
    )
    if not covers_prefix:
        return None
    if gazetteer_match(config.location_gazetteer, [l.token for l in prefix]):
        return (0, supertype_start)
    return None


def detect_quality_modifier(
    constituent: SynTree, quality: tuple[int, int]
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Carve a leading RB/JJ premodifier out of an ADJP/ADVP quality span.

    Returns (modifier span, shrunk quality span), or None when the
    constituent is not an ADJP/ADVP or no premodifier precedes the head.
    """
    if constituent.label not in ("ADJP", "ADVP"):
        return None
    start, end = quality
    leaves = [l for l in constituent.leaves() if start <= l.start and l.end <= end]
    if len(leaves) < 2:
        return None
    head, following = leaves[0], leaves[1]
    if head.label in ("RB", "JJ") and following.label in ("RB", "JJ"):
        return ((head.start, head.end), (head.end, end))
    return None


def detect_accessory_quality(
    annotation: Annotation, span_index: int, tree: SynTree, config: LabelerConfig
) -> bool:
    """Whether a single-token JJ differentia quality is merely accessory.

    True only when the word is a configured accessory-quality word and the
    annotation keeps at least one other differentia quality or event.
    """
    span = annotation.spans[span_index]
    if span.role is not Role.DIFFERENTIA_QUALITY or span.end - span.start != 1:
        return False
    leaf = tree.leaves()[span.start]
    if leaf.label != "JJ" or leaf.token is None:
        return False
    if leaf.token.lower() not in config.accessory_quality_words:
        return False
    return any(
        other is not span
        and other.role in (Role.DIFFERENTIA_QUALITY, Role.DIFFERENTIA_EVENT)
        for other in annotation.spans
    )


def _unwrap_clause(node: SynTree) -> SynTree:
    # "under a simple clause or not": a bare S wrapping one constituent is
    # transparent to the rules.
    while node.label == "S" and len(node.children) == 1:
        node = node.children[0]
    return node


def _pp_inner_phrase(pp: SynTree) -> SynTree | None:
    for child in pp.children:
        if child.is_leaf() and child.label in ("IN", "TO"):
            continue
        return _unwrap_clause(child)
    return None


def _pp_head_token(pp: SynTree) -> str:
    for leaf in pp.leaves():
        return (leaf.token or "").lower()
    return ""


def _leading_cue_match(tokens: Sequence[str]) -> bool:
    lowered = [t.lower() for t in tokens]
    return any(tuple(lowered[: len(cue)]) == cue for cue in _FACT_CUES)


def _carve_event_subroles(
    event_node: SynTree, config: LabelerConfig
) -> list[tuple[SynTree, Role]]:
    """Maximal PPs inside an event matched by the location/time gazetteers."""
    matches: list[tuple[SynTree, Role]] = []

    def scan(node: SynTree) -> None:
        whole = node.start == event_node.start and node.end == event_node.end
        if node is not event_node and node.label == "PP" and not whole:
            tokens = node.tokens()
            if gazetteer_match(config.location_gazetteer, tokens):
                matches.append((node, Role.EVENT_LOCATION))
                return
            if gazetteer_match(config.time_gazetteer, tokens):
                matches.append((node, Role.EVENT_TIME))
                return
        for child in node.children:
            scan(child)

    scan(event_node)
    return matches


class _Engine:
    def __init__(self, tree: SynTree, pos: str, config: LabelerConfig) -> None:
        self.tree = tree
        self.pos = pos
        self.config = config
        self.leaves = tree.leaves()
        self.tokens = tuple(l.token or "" for l in self.leaves)
        self.work: list[_Span] = []
        self.trace: list[TraceEntry] = []

    # -- helpers ----------------------------------------------------------

    def _note(self, rule: str, start: int, end: int, reason: str) -> None:
        self.trace.append(TraceEntry(rule, start, end, reason))

    def _text(self, start: int, end: int) -> str:
        return " ".join(self.tokens[start:end])

    def _add(self, role: Role, start: int, end: int, rule: str, reason: str,
             parent: _Span | None = None) -> _Span:
        span = _Span(role, start, end, parent)
        self.work.append(span)
        self._note(rule, start, end, reason)
        return span

    def _has_differentia(self) -> bool:
        return any(
            s.role in (Role.DIFFERENTIA_QUALITY, Role.DIFFERENTIA_EVENT)
            for s in self.work
        )

    # -- supertype anchoring ----------------------------------------------

    def detect_supertypes(self) -> tuple[list[_Span], _NounDetection | None]:
        supertypes: list[_Span] = []
        noun_info: _NounDetection | None = None
        effective_pos = self.pos
        if self.pos == VERB:
            verb_spans = detect_supertype_verb(self.tree, self.config)
            if verb_spans:
                for start, end in verb_spans:
                    supertypes.append(
                        self._add(
                            Role.SUPERTYPE, start, end, "supertype",
                            f"leftmost/conjoined VB {self._text(start, end)!r}",
                        )
                    )
                return supertypes, None
            self._note("fallback", 0, 0, "no VB leaf; retrying with noun rules")
            effective_pos = NOUN
        if effective_pos == NOUN:
            noun_info = _detect_noun_supertypes(self.tree, self.config)
            if noun_info:
                supertypes = self._apply_noun_hits(noun_info)
        return supertypes, noun_info

    def _apply_noun_hits(self, detection: _NounDetection) -> list[_Span]:
        supertypes = []
        for (start, end), _ in detection.hits:
            supertypes.append(
                self._add(
                    Role.SUPERTYPE, start, end, "supertype",
                    f"lexicon entry in anchor NP: {self._text(start, end)!r}",
                )
            )
        for start, end in detection.dropped_determiners:
            self._note("leading-dt", start, end, "leading determiner discarded")
        return supertypes

    def handle_prefix(
        self, supertypes: list[_Span], noun_info: _NounDetection
    ) -> tuple[list[_Span], _NounDetection]:
        """Accessory determiner, instance origin, and leftover qualities."""
        consumed: list[tuple[int, int]] = []
        hit = _detect_determiner(
            self.tree, supertypes[0].start, noun_info.np, self.config
        )
        if hit and hit.redetect_from is not None:
            redo = _detect_noun_supertypes(
                self.tree, self.config, min_start=hit.redetect_from
            )
            if redo:
                for span in supertypes:
                    self.work.remove(span)
                self._note(
                    "accessory-determiner", hit.span[0], hit.span[1],
                    "determiner phrase absorbs the first NP; supertype re-detected",
                )
                start, end = hit.span
                self.work.append(_Span(Role.ACCESSORY_DETERMINER, start, end))
                consumed.append(hit.span)
                supertypes = self._apply_noun_hits(redo)
                noun_info = redo
            else:
                self._note(
                    "accessory-determiner", hit.span[0], hit.span[1],
                    "determiner phrase matched but no supertype follows; kept as is",
                )
        elif hit:
            start, end = hit.span
            self._add(
                Role.ACCESSORY_DETERMINER, start, end, "accessory-determiner",
                f"noun-free expression before the supertype: {self._text(start, end)!r}",
            )
            consumed.append(hit.span)
        else:
            origin = detect_instance_origin(
                self.tree, supertypes[0].start, self.config
            )
            if origin:
                start, end = origin
                self._add(
                    Role.ORIGIN_LOCATION, start, end, "instance-origin",
                    "pre-supertype NP with a location entity (instance definiendum)",
                )
                consumed.append(origin)
        for _, leftover in noun_info.hits:
            if leftover is None:
                continue
            if any(s < leftover[1] and leftover[0] < e for s, e in consumed):
                continue
            self._add(
                Role.DIFFERENTIA_QUALITY, leftover[0], leftover[1],
                "pre-supertype-quality",
                "tokens left of the supertype entry inside the anchor NP",
            )
        return supertypes, noun_info

    # -- post-supertype classification --------------------------------------

    def classify(self, constituent: SynTree, supertypes: list[_Span]) -> None:
        node = _unwrap_clause(constituent)
        tokens = node.tokens()
        start, end = node.start, node.end

        if node.label == "PRT":
            self._add(
                Role.PARTICLE, start, end, "particle",
                "PRT completes the supertype", parent=supertypes[0],
            )
            return

        if node.label == "VP" and node.leaves()[0].label == "TO":
            self._add(
                Role.PURPOSE, start, end, "purpose", "VP opened by TO",
            )
            return

        inner = _pp_inner_phrase(node) if node.label == "PP" else None
        if node.label == "PP" and inner is not None and inner.label == "VP":
            if _pp_head_token(node) == "for":
                self._add(
                    Role.PURPOSE, start, end, "purpose",
                    f"'for' PP with a VP inside; {DIVERGENCE_PURPOSE_EVENT}",
                )
                return
            self._fact_or_event(node, start, end, "PP with a VP directly inside")
            return

        if node.label in ("SBAR", "S"):
            self._fact_or_event(node, start, end, f"{node.label} after the supertype")
            return

        if node.label == "VP":
            if self.pos == NOUN:
                self._event(node, start, end, "VP after the supertype")
                return
            self._note(
                "unlabeled", start, end,
                "VP after a verb supertype matches no rule",
            )
            return

        if (
            node.label == "PP"
            and not dominated_by(constituent, "SBAR", self.tree)
            and not dominated_by(constituent, "VP", self.tree)
            and gazetteer_match(self.config.location_gazetteer, tokens)
        ):
            self._add(
                Role.ORIGIN_LOCATION, start, end, "origin-location",
                "PP outside SBAR/VP with a location entity",
            )
            return

        if node.label in ("PP", "NP", "ADJP", "ADVP"):
            self._qualities(node)
            return

        self._note(
            "unlabeled", start, end,
            f"constituent {node.label} matches no rule",
        )

    def _fact_or_event(self, node: SynTree, start: int, end: int, shape: str) -> None:
        if self._has_differentia() and _leading_cue_match(node.tokens()):
            self._add(
                Role.ASSOCIATED_FACT, start, end, "associated-fact",
                f"{shape}; non-restrictive cue with a differentia already present",
            )
            return
        self._event(node, start, end, shape)

    def _event(self, node: SynTree, start: int, end: int, shape: str) -> None:
        carved = _carve_event_subroles(node, self.config)
        if not carved:
            self._add(Role.DIFFERENTIA_EVENT, start, end, "differentia-event", shape)
            return
        pieces: list[tuple[int, int]] = []
        position = start
        for sub, _ in carved:
            if sub.start > position:
                pieces.append((position, sub.start))
            position = sub.end
        if position < end:
            pieces.append((position, end))
        if not pieces:
            self._add(Role.DIFFERENTIA_EVENT, start, end, "differentia-event", shape)
            return
        primary = self._add(
            Role.DIFFERENTIA_EVENT, pieces[0][0], pieces[0][1],
            "differentia-event", f"{shape}; gazetteer PPs carved out",
        )
        for extra_start, extra_end in pieces[1:]:
            self._add(
                Role.DIFFERENTIA_EVENT, extra_start, extra_end,
                "differentia-event", "event continues past a carved PP",
            )
        for sub, role in carved:
            rule = "event-location" if role is Role.EVENT_LOCATION else "event-time"
            kind = "location" if role is Role.EVENT_LOCATION else "time"
            self._add(
                role, sub.start, sub.end, rule,
                f"PP inside the event with a {kind} entity", parent=primary,
            )
        self.work.sort(key=lambda s: (s.start, s.end))

    def _qualities(self, node: SynTree) -> None:
        groups = _split_on_cc(node)
        if not groups:  # bare preterminal
            groups = [[node]]
        split = len(groups) > 1
        for group in groups:
            start, end = group[0].start, group[-1].end
            carve = detect_quality_modifier(node, (start, end))
            if carve:
                (mod_start, mod_end), (rest_start, rest_end) = carve
                quality = _Span(Role.DIFFERENTIA_QUALITY, rest_start, rest_end)
                modifier = _Span(
                    Role.QUALITY_MODIFIER, mod_start, mod_end, parent=quality
                )
                self.work.append(modifier)
                self.work.append(quality)
                self._note(
                    "quality-modifier", mod_start, mod_end,
                    "premodifier before the quality head",
                )
                self._note(
                    "differentia-quality", rest_start, rest_end,
                    f"{node.label} after the supertype",
                )
            else:
                reason = f"{node.label} after the supertype"
                if split:
                    reason += " (CC-separated)"
                self._add(Role.DIFFERENTIA_QUALITY, start, end,
                          "differentia-quality", reason)

    def reclassify_accessory_qualities(self) -> None:
        ordered = sorted(self.work, key=lambda s: (s.start, s.end))
        for span in ordered:
            if span.role is not Role.DIFFERENTIA_QUALITY:
                continue
            if span.end - span.start != 1:
                continue
            leaf = self.leaves[span.start]
            if leaf.label != "JJ" or (leaf.token or "").lower() not in (
                self.config.accessory_quality_words
            ):
                continue
            others = any(
                other is not span
                and other.role in (Role.DIFFERENTIA_QUALITY, Role.DIFFERENTIA_EVENT)
                for other in self.work
            )
            if others:
                span.role = Role.ACCESSORY_QUALITY
                self._note(
                    "accessory-quality", span.start, span.end,
                    f"accessory word {leaf.token!r}; {DIVERGENCE_ACCESSORY_QUALITY}",
                )
            else:
                self._note(
                    "accessory-quality", span.start, span.end,
                    f"accessory word {leaf.token!r} kept as differentia quality "
                    f"(only identifying span); {DIVERGENCE_ACCESSORY_QUALITY}",
                )

    # -- assembly -----------------------------------------------------------

    def build(self, definition_id: str, ill_formed: bool) -> Annotation:
        self.work.sort(key=lambda s: (s.start, s.end))
        index = {id(span): i for i, span in enumerate(self.work)}
        spans = tuple(
            RoleSpan(
                span.role,
                span.start,
                span.end,
                index[id(span.parent)] if span.parent is not None else None,
            )
            for span in self.work
        )
        return Annotation(definition_id, self.tokens, spans, ill_formed)

    def enforce_valid(self, annotation: Annotation) -> Annotation:
        """Demote structurally-broken sub-roles so the outcome validates."""
        problems = [v for v in validate(annotation) if v.severity == ERROR]
        if not problems:
            return annotation
        demote = {
            Role.EVENT_TIME: Role.DIFFERENTIA_EVENT,
            Role.EVENT_LOCATION: Role.DIFFERENTIA_EVENT,
            Role.QUALITY_MODIFIER: Role.DIFFERENTIA_QUALITY,
        }
        ordered = sorted(
            (v for v in problems if v.span_index is not None),
            key=lambda v: v.span_index,
            reverse=True,
        )
        for violation in ordered:
            span = self.work[violation.span_index]
            if span.role is Role.PARTICLE:
                self.work.remove(span)
                self._note(
                    "demoted", span.start, span.end,
                    "particle without a host removed",
                )
            elif span.role in demote:
                self._note(
                    "demoted", span.start, span.end,
                    f"{span.role.value} without a valid parent demoted",
                )
                span.role = demote[span.role]
                span.parent = None
        rebuilt = self.build(annotation.definition_id, annotation.ill_formed)
        remaining = [v for v in validate(rebuilt) if v.severity == ERROR]
        if remaining:
            raise RuntimeError(
                f"labeling produced an invalid annotation: {remaining}"
            )
        return rebuilt

    def fill_uncovered(self, annotation: Annotation) -> None:
        accounted = annotation.covered()
        for entry in self.trace:
            accounted.update(range(entry.start, entry.end))
        gap_start: int | None = None
        for i in range(len(self.tokens) + 1):
            if i < len(self.tokens) and i not in accounted:
                if gap_start is None:
                    gap_start = i
            elif gap_start is not None:
                self._note(
                    "uncovered", gap_start, i,
                    f"no rule covers {self._text(gap_start, i)!r}",
                )
                gap_start = None


def classify_post_supertype(
    tree: SynTree,
    constituent: SynTree,
    context: Annotation,
    config: LabelerConfig,
    pos: str = NOUN,
) -> list[RoleSpan]:
    """Classify one post-supertype constituent against a partial annotation.

    Returned spans extend ``context.spans`` in order; parent indices point
    into that extended list. Unmatchable constituents yield no spans (the
    full pipeline records them in the rule trace instead).
    """
    engine = _Engine(tree, pos, config)
    placeholders = [_Span(s.role, s.start, s.end) for s in context.spans]
    engine.work.extend(placeholders)
    anchor = next(
        (p for p in placeholders if p.role is Role.SUPERTYPE),
        _Span(Role.SUPERTYPE, 0, 0),
    )
    engine.classify(constituent, [anchor])
    placeholder_ids = {id(p) for p in placeholders}
    new_spans = sorted(
        (s for s in engine.work if id(s) not in placeholder_ids),
        key=lambda s: (s.start, s.end),
    )
    index = {id(p): i for i, p in enumerate(placeholders)}
    for offset, span in enumerate(new_spans):
        index[id(span)] = len(placeholders) + offset
    return [
        RoleSpan(
            s.role,
            s.start,
            s.end,
            index[id(s.parent)] if s.parent is not None else None,
        )
        for s in new_spans
    ]


def label(
    tree: SynTree,
    pos: str,
    config: LabelerConfig,
    definition_id: str = "",
) -> LabelOutcome:
    """Produce a validated annotation plus a full rule trace for one gloss.

    Every token ends up either inside a role span or inside a trace entry;
    glosses with no detectable supertype come back flagged ill-formed with
    no spans.
    """
    if pos not in (NOUN, VERB):
        raise ValueError(f"pos must be {NOUN!r} or {VERB!r}, got {pos!r}")
    engine = _Engine(tree, pos, config)
    if not engine.leaves:
        raise EmptyDefinitionError("tree has no tokens")

    supertypes, noun_info = engine.detect_supertypes()
    if not supertypes:
        engine._note(
            "ill-formed", 0, len(engine.tokens),
            "no supertype found; definition lacks the supertype-differentia shape",
        )
        annotation = Annotation(definition_id, engine.tokens, (), True)
        return LabelOutcome(annotation, tuple(engine.trace))

    if noun_info is not None:
        supertypes, noun_info = engine.handle_prefix(supertypes, noun_info)

    last_end = max(span.end for span in supertypes)
    for constituent in constituents_after(tree, last_end):
        engine.classify(constituent, supertypes)

    engine.reclassify_accessory_qualities()
    annotation = engine.build(definition_id, False)
    annotation = engine.enforce_valid(annotation)
    engine.fill_uncovered(annotation)
    return LabelOutcome(annotation, tuple(engine.trace))
