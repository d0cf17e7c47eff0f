from __future__ import annotations

import random

import pytest

from conftest import (
    messy_render,
    oracle_ancestor_path,
    oracle_innermost_leftmost_np,
    random_tree,
)
from defsrl.syntree import (
    TreeParseError,
    constituents_after,
    dominated_by,
    innermost_leftmost_np,
    parse_bracketed,
    serialize,
)

COACH = "(NP (NP (DT a) (NN coach)) (PP (IN of) (NP (NN baseball) (NNS players))))"


def test_parse_single_leaf():
    tree = parse_bracketed("(NP (NN dog))")
    assert tree.label == "NP"
    assert len(tree.children) == 1
    leaf = tree.children[0]
    assert leaf.label == "NN" and leaf.token == "dog"
    assert leaf.span == (0, 1)
    assert tree.span == (0, 1)


def test_parse_two_leaves_spans():
    tree = parse_bracketed("(NP (DT a) (NN coach))")
    assert tree.span == (0, 2)
    assert [leaf.token for leaf in tree.leaves()] == ["a", "coach"]
    assert [leaf.span for leaf in tree.leaves()] == [(0, 1), (1, 2)]


def test_parse_accepts_arbitrary_whitespace():
    tree = parse_bracketed("( NP\n  (DT a)\t( NN  coach ) )")
    assert serialize(tree) == "(NP (DT a) (NN coach))"


def test_functional_tags_stripped():
    tree = parse_bracketed("(NP-SBJ-1 (NN dog))")
    assert tree.label == "NP"
    tree = parse_bracketed("(NP=2 (NN dog))")
    assert tree.label == "NP"


def test_none_traces_dropped_and_spans_recomputed():
    tree = parse_bracketed("(S (NP-SBJ (-NONE- *T*-1)) (VP (VB run) (NP (NN home))))")
    assert tree.tokens() == ["run", "home"]
    assert tree.span == (0, 2)
    assert all(leaf.span == (i, i + 1) for i, leaf in enumerate(tree.leaves()))


def test_all_trace_tree_is_an_error():
    with pytest.raises(TreeParseError):
        parse_bracketed("(S (NP (-NONE- *)))")


@pytest.mark.parametrize(
    "text",
    ["", "   ", "(NP (NN dog)", "(NP (NN dog)))", "()", "( (NN dog))",
     "(NP)", "(NP (NN dog) stray)", "(NP (NN dog)) (NP (NN cat))"],
)
def test_parse_errors_carry_offsets(text):
    with pytest.raises(TreeParseError) as info:
        parse_bracketed(text)
    assert isinstance(info.value.offset, int)


def test_round_trip_on_random_trees():
    rng = random.Random(11)
    for _ in range(1000):
        tree = random_tree(rng)
        rendered = serialize(tree)
        assert serialize(parse_bracketed(rendered)) == rendered
        assert serialize(parse_bracketed(messy_render(rng, tree))) == rendered


def test_parsed_tree_reproduces_structure():
    rng = random.Random(12)
    for _ in range(200):
        tree = random_tree(rng)
        assert parse_bracketed(serialize(tree)) == tree


def test_serialize_injective_on_random_sample():
    rng = random.Random(13)
    trees = [random_tree(rng) for _ in range(500)]
    rendered = {serialize(t) for t in trees}
    distinct = {t for t in trees}
    assert len(rendered) == len(distinct)


def test_span_arithmetic_invariant():
    rng = random.Random(14)
    for _ in range(200):
        tree = random_tree(rng)
        for node in tree.subtrees():
            leaves = node.leaves()
            assert node.start == leaves[0].start
            assert node.end == leaves[-1].end
            assert all(leaf.end == leaf.start + 1 for leaf in leaves)


def test_innermost_leftmost_np_coach_example():
    tree = parse_bracketed(COACH)
    found = innermost_leftmost_np(tree)
    assert found is not None
    assert found.tokens() == ["a", "coach"]


def test_innermost_leftmost_np_absent_without_np():
    assert innermost_leftmost_np(parse_bracketed("(VP (VB run))")) is None


def test_innermost_leftmost_np_matches_oracle():
    rng = random.Random(15)
    for _ in range(1000):
        tree = random_tree(rng)
        expected = oracle_innermost_leftmost_np(tree)
        actual = innermost_leftmost_np(tree)
        assert actual is expected


def test_constituents_after_end_is_empty():
    tree = parse_bracketed(COACH)
    assert constituents_after(tree, tree.end) == []


def test_constituents_after_coach_example():
    tree = parse_bracketed(COACH)
    after = constituents_after(tree, 2)
    assert len(after) == 1
    assert after[0].label == "PP"
    assert after[0].tokens() == ["of", "baseball", "players"]


def test_constituents_after_out_of_range():
    tree = parse_bracketed(COACH)
    with pytest.raises(ValueError):
        constituents_after(tree, tree.end + 1)


def test_constituents_after_covers_suffix_disjointly():
    rng = random.Random(16)
    for _ in range(500):
        tree = random_tree(rng)
        start = rng.randint(0, tree.end)
        nodes = constituents_after(tree, start)
        covered = []
        for node in nodes:
            covered.extend(range(node.start, node.end))
        assert covered == list(range(start, tree.end))
        assert nodes == sorted(nodes, key=lambda n: n.start)


def test_dominated_by_direct_chain():
    tree = parse_bracketed(
        "(SBAR (WHNP (WP who)) (S (VP (VBZ lives) (PP (IN on) (NP (NN frontier))))))"
    )
    pp = next(node for node in tree.subtrees() if node.label == "PP")
    assert dominated_by(pp, "SBAR", tree)
    assert dominated_by(pp, "VP", tree)
    assert not dominated_by(pp, "ADJP", tree)


def test_dominated_by_root_has_no_proper_ancestor():
    tree = parse_bracketed(COACH)
    assert not dominated_by(tree, "NP", tree)


def test_dominated_by_foreign_node_is_usage_error():
    tree = parse_bracketed(COACH)
    other = parse_bracketed("(VP (VB run))")
    with pytest.raises(ValueError):
        dominated_by(other, "NP", tree)


def test_dominated_by_matches_path_oracle():
    rng = random.Random(17)
    for _ in range(300):
        tree = random_tree(rng)
        nodes = list(tree.subtrees())
        node = rng.choice(nodes)
        labels = {n.label for n in nodes}
        for label in labels:
            path = oracle_ancestor_path(tree, node)
            expected = any(ancestor.label == label for ancestor in path)
            assert dominated_by(node, label, tree) == expected
