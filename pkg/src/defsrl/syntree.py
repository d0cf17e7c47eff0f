"""Bracketed constituency trees and the span queries the labeling rules need.

Input follows the usual treebank conventions: internal nodes carry phrase
labels (NP, VP, PP, SBAR, ...), preterminals carry POS tags, and every leaf
is a surface token. Two normalizations are applied while parsing so query
code only ever sees bare categories over surface tokens: functional
annotations on labels ("NP-SBJ", "NP=2") are stripped, and trace leaves
("-NONE-") are dropped with spans recomputed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "SynTree",
    "TreeParseError",
    "parse_bracketed",
    "serialize",
    "innermost_leftmost_np",
    "constituents_after",
    "dominated_by",
]

_FUNC_SPLIT = re.compile(r"[-=]")
_LEXEME = re.compile(r"[()]|[^\s()]+")

# Any NN-initial tag counts as a common/proper noun (NN, NNS, NNP, NNPS).
NOUN_TAG_PREFIX = "NN"


class TreeParseError(ValueError):
    """Malformed bracketed-tree text. ``offset`` is a character position."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class SynTree:
    """A constituency-tree node over the half-open token span [start, end).

    A node is a leaf exactly when ``token`` is present, in which case it has
    no children and its span has length one. Instances are immutable, so all
    queries are pure and safe under concurrent use.
    """

    label: str
    children: tuple["SynTree", ...] = ()
    token: str | None = None
    start: int = 0
    end: int = 0

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def is_leaf(self) -> bool:
        return self.token is not None

    def leaves(self) -> list["SynTree"]:
        """All leaf nodes in surface order."""
        if self.is_leaf():
            return [self]
        out: list[SynTree] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def tokens(self) -> list[str]:
        return [leaf.token for leaf in self.leaves() if leaf.token is not None]

    def subtrees(self) -> Iterator["SynTree"]:
        """Preorder iterator over this node and all descendants."""
        yield self
        for child in self.children:
            yield from child.subtrees()

    def __str__(self) -> str:
        return serialize(self)


def _strip_functional(label: str) -> str:
    # Leading-dash labels (-NONE-, -LRB-, ...) are atoms, not annotated tags.
    if label.startswith("-"):
        return label
    match = _FUNC_SPLIT.search(label)
    if match and match.start() > 0:
        return label[: match.start()]
    return label


def _build(raw: tuple, counter: list[int]) -> SynTree | None:
    label, children, word = raw
    if word is not None:
        if label == "-NONE-":
            return None
        index = counter[0]
        counter[0] += 1
        return SynTree(_strip_functional(label), (), word, index, index + 1)
    built = []
    for child in children:
        node = _build(child, counter)
        if node is not None:
            built.append(node)
    if not built:
        return None
    return SynTree(
        _strip_functional(label), tuple(built), None, built[0].start, built[-1].end
    )


def parse_bracketed(text: str) -> SynTree:
    """Parse one bracketed tree, tolerating arbitrary whitespace.

    Raises TreeParseError (with a character offset) on unbalanced
    parentheses, missing labels, mixed token/subtree constituents, trailing
    content, or a tree with no surface tokens.
    """
    lexemes = [(m.group(), m.start()) for m in _LEXEME.finditer(text)]
    if not lexemes:
        raise TreeParseError("empty tree", 0)
    pos = 0

    def parse_node() -> tuple:
        nonlocal pos
        lexeme, offset = lexemes[pos]
        if lexeme != "(":
            raise TreeParseError("expected '('", offset)
        pos += 1
        if pos >= len(lexemes):
            raise TreeParseError("unbalanced parentheses", len(text))
        lexeme, offset = lexemes[pos]
        if lexeme in "()":
            raise TreeParseError("missing label", offset)
        label = lexeme
        pos += 1
        children: list[tuple] = []
        word: str | None = None
        while True:
            if pos >= len(lexemes):
                raise TreeParseError("unbalanced parentheses", len(text))
            lexeme, offset = lexemes[pos]
            if lexeme == ")":
                pos += 1
                break
            if lexeme == "(":
                if word is not None:
                    raise TreeParseError("token and subtree in one constituent", offset)
                children.append(parse_node())
            else:
                if children or word is not None:
                    raise TreeParseError("unexpected token", offset)
                word = lexeme
                pos += 1
        if word is None and not children:
            raise TreeParseError("empty constituent", offset)
        return (label, children, word)

    raw = parse_node()
    if pos != len(lexemes):
        raise TreeParseError("trailing content after tree", lexemes[pos][1])
    root = _build(raw, [0])
    if root is None:
        raise TreeParseError("tree has no surface tokens", 0)
    return root


def serialize(tree: SynTree) -> str:
    """Canonical single-line form: ``(LABEL child ...)``, leaves ``(TAG token)``."""
    if tree.is_leaf():
        return f"({tree.label} {tree.token})"
    inner = " ".join(serialize(child) for child in tree.children)
    return f"({tree.label} {inner})"


def innermost_leftmost_np(tree: SynTree) -> SynTree | None:
    """The innermost, leftmost NP dominating at least one noun leaf.

    "Innermost" means the NP dominates no other qualifying NP; ties are
    broken by smallest start, then shortest span, then greatest depth.
    Returns None when no NP contains a noun.
    """
    return _innermost_leftmost_np_from(tree, 0)


def _innermost_leftmost_np_from(tree: SynTree, min_start: int) -> SynTree | None:
    best: SynTree | None = None
    best_key: tuple[int, int, int] | None = None

    def visit(node: SynTree, depth: int) -> tuple[bool, bool]:
        # Returns (subtree has a qualifying NP, subtree has a noun leaf).
        nonlocal best, best_key
        if node.is_leaf():
            return (False, node.label.startswith(NOUN_TAG_PREFIX))
        sub_qualifying = False
        sub_noun = False
        for child in node.children:
            qualifying, noun = visit(child, depth + 1)
            sub_qualifying = sub_qualifying or qualifying
            sub_noun = sub_noun or noun
        qualifies = (
            node.label == "NP"
            and sub_noun
            and not sub_qualifying
            and node.start >= min_start
        )
        if qualifies:
            key = (node.start, node.end - node.start, -depth)
            if best_key is None or key < best_key:
                best, best_key = node, key
        return (sub_qualifying or qualifies, sub_noun)

    visit(tree, 0)
    return best


def constituents_after(tree: SynTree, start: int) -> list[SynTree]:
    """Maximal constituents whose spans lie at or after ``start``.

    The returned nodes are in surface order, pairwise non-nested, and their
    spans exactly cover [start, N) where N is the tree's end.
    """
    if not 0 <= start <= tree.end:
        raise ValueError(f"start {start} outside token range [0, {tree.end}]")
    out: list[SynTree] = []

    def walk(node: SynTree) -> None:
        if node.start >= start:
            out.append(node)
            return
        if node.end <= start:
            return
        for child in node.children:
            walk(child)

    walk(tree)
    return out


def dominated_by(node: SynTree, ancestor_label: str, within: SynTree) -> bool:
    """True iff a proper ancestor of ``node`` inside ``within`` has the label.

    Nodes are located by identity, so ``node`` must be the actual object
    taken from ``within``. Raises ValueError when it is not in the tree.
    """
    stack: list[tuple[SynTree, bool]] = [(within, False)]
    while stack:
        current, under = stack.pop()
        if current is node:
            return under
        flag = under or current.label == ancestor_label
        for child in current.children:
            stack.append((child, flag))
    raise ValueError("node is not a descendant of the given tree")
