"""Shared random generators and independent oracles for the test suite.

The oracles here deliberately use different algorithms from the library
(flat enumeration with nested loops instead of single-pass recursion) so
agreement between the two is meaningful.
"""

from __future__ import annotations

import random

from defsrl.rolemodel import (
    Annotation,
    PARENT_REQUIRED_ROLES,
    Role,
    RoleSpan,
)
from defsrl.syntree import SynTree

INTERNAL_LABELS = ["NP", "VP", "PP", "S", "SBAR", "ADJP", "ADVP", "X", "PRT"]
LEAF_TAGS = ["NN", "NNS", "NNP", "DT", "JJ", "VB", "VBZ", "IN", "RB", "CC", "TO"]
WORDS = [
    "coach", "dog", "large", "runs", "of", "the", "quickly", "fine",
    "player", "frontier", "very", "or", "and", "on", "stone", "blue",
]


def random_tree(rng: random.Random, max_depth: int = 4, max_children: int = 4):
    """A random well-formed tree; leaf spans assigned by position."""

    counter = [0]

    def build(depth: int) -> SynTree:
        if depth >= max_depth or rng.random() < 0.35:
            index = counter[0]
            counter[0] += 1
            return SynTree(
                rng.choice(LEAF_TAGS), (), rng.choice(WORDS), index, index + 1
            )
        children = tuple(
            build(depth + 1) for _ in range(rng.randint(1, max_children))
        )
        return SynTree(
            rng.choice(INTERNAL_LABELS),
            children,
            None,
            children[0].start,
            children[-1].end,
        )

    return build(0)


def messy_render(rng: random.Random, tree: SynTree) -> str:
    """Serialize with random extra whitespace, exercising tolerant parsing."""
    pad = lambda: rng.choice(["", " ", "  ", "\n", "\t"])
    if tree.is_leaf():
        return f"({pad()}{tree.label} {pad()}{tree.token}{pad()})"
    inner = " ".join(messy_render(rng, child) for child in tree.children)
    return f"({pad()}{tree.label} {inner}{pad()})"


# --- brute-force oracles ----------------------------------------------------


def oracle_innermost_leftmost_np(tree: SynTree) -> SynTree | None:
    """Flat-enumeration oracle: all NPs with a noun leaf, minus those that
    contain another qualifying NP, then min start / min length / max depth."""

    nodes: list[tuple[SynTree, int]] = []

    def collect(node: SynTree, depth: int) -> None:
        nodes.append((node, depth))
        for child in node.children:
            collect(child, depth + 1)

    collect(tree, 0)

    def has_noun(node: SynTree) -> bool:
        return any(
            leaf.label.startswith("NN") for leaf in node.leaves()
        )

    qualifying = [
        (node, depth)
        for node, depth in nodes
        if node.label == "NP" and not node.is_leaf() and has_noun(node)
    ]
    innermost = []
    for node, depth in qualifying:
        contains_other = any(
            other is not node and _is_descendant(other, node)
            for other, _ in qualifying
        )
        if not contains_other:
            innermost.append((node, depth))
    if not innermost:
        return None
    return min(
        innermost, key=lambda item: (item[0].start, item[0].end - item[0].start, -item[1])
    )[0]


def _is_descendant(node: SynTree, ancestor: SynTree) -> bool:
    if node is ancestor:
        return False
    return any(
        node is candidate or _is_descendant(node, candidate)
        for candidate in ancestor.children
    )


def oracle_longest_rightmost(lexicon, tokens) -> tuple[int, str] | None:
    """Plain all-suffixes scan, longest first, no word-count shortcut."""
    for i in range(len(tokens)):
        entry = lexicon.lookup_tokens(tokens[i:])
        if entry is not None:
            return (i, entry)
    return None


def oracle_ancestor_path(tree: SynTree, node: SynTree) -> list[SynTree] | None:
    """Root-to-parent path of ``node``; None when node is not in the tree."""
    if tree is node:
        return []
    for child in tree.children:
        path = oracle_ancestor_path(child, node)
        if path is not None:
            return [tree] + path
    return None


# --- random annotations -------------------------------------------------------


_SAFE_WORDS = ["alpha", "beta", "gamma", "delta", "omega", "or", "and", "kappa"]

_TOP_ROLES = [
    Role.SUPERTYPE,
    Role.DIFFERENTIA_QUALITY,
    Role.DIFFERENTIA_EVENT,
    Role.ORIGIN_LOCATION,
    Role.PURPOSE,
    Role.ASSOCIATED_FACT,
    Role.ACCESSORY_DETERMINER,
    Role.ACCESSORY_QUALITY,
]


def random_annotation(rng: random.Random, definition_id: str = "") -> Annotation:
    """A random annotation that passes validation with no errors."""
    spans: list[RoleSpan] = []
    tokens: list[str] = []
    parent_candidates: dict[Role, list[int]] = {
        Role.DIFFERENTIA_QUALITY: [],
        Role.DIFFERENTIA_EVENT: [],
    }

    def add_tokens(count: int) -> tuple[int, int]:
        start = len(tokens)
        for _ in range(count):
            tokens.append(rng.choice(_SAFE_WORDS))
        return start, len(tokens)

    n_spans = rng.randint(1, 6)
    roles = [Role.SUPERTYPE] + [rng.choice(_TOP_ROLES) for _ in range(n_spans - 1)]
    rng.shuffle(roles)
    for role in roles:
        if rng.random() < 0.3:
            add_tokens(rng.randint(1, 2))  # uncovered gap
        start, end = add_tokens(rng.randint(1, 3))
        spans.append(RoleSpan(role, start, end))
        if role in parent_candidates:
            parent_candidates[role].append(len(spans) - 1)

    # Attach sub-roles where parents exist.
    for sub, target in (
        (Role.EVENT_TIME, Role.DIFFERENTIA_EVENT),
        (Role.EVENT_LOCATION, Role.DIFFERENTIA_EVENT),
        (Role.QUALITY_MODIFIER, Role.DIFFERENTIA_QUALITY),
    ):
        hosts = parent_candidates[target]
        if hosts and rng.random() < 0.5:
            start, end = add_tokens(rng.randint(1, 2))
            spans.append(RoleSpan(sub, start, end, rng.choice(hosts)))
    if rng.random() < 0.3:
        host = rng.randrange(len(spans))
        if spans[host].role not in PARENT_REQUIRED_ROLES:
            start, end = add_tokens(1)
            spans.append(RoleSpan(Role.PARTICLE, start, end, host))
    if rng.random() < 0.3:
        add_tokens(rng.randint(1, 2))  # trailing uncovered tokens

    return Annotation(definition_id, tuple(tokens), tuple(spans), False)
