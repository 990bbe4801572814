import numpy as np
import pytest
from hypothesis import given

from fringetrees.tree import (
    LabeledTree,
    Tree,
    TreeParseError,
    complete_binary_tree,
    degree_profile,
    fringe_sizes,
    parse_forest,
    parse_tree,
    path_tree,
    serialize_tree,
    star_tree,
    subtree_count_by_size,
)

from conftest import binary_trees, plane_trees, random_trees


def test_path_fringe_sizes_sum():
    n = 30
    assert sum(fringe_sizes(path_tree(n))) == n * (n + 1) // 2


def test_complete_binary_histogram():
    assert subtree_count_by_size(complete_binary_tree(3)) == {1: 4, 3: 2, 7: 1}


def test_star():
    t = star_tree(5)
    assert degree_profile(t) == {0: 4, 4: 1}
    assert t.children(0) == [1, 2, 3, 4]


@pytest.mark.parametrize("bad", [[1, 1], [0, 1], [-1, 2, 0], [2, 0]])
def test_rejects_invalid_degrees(bad):
    with pytest.raises(ValueError):
        Tree(bad)


def test_rejects_bad_slots():
    with pytest.raises(ValueError):
        Tree([2, 0, 0], [-1, 1, 0], 2)
    with pytest.raises(ValueError):
        Tree([1, 0], [-1, 2], 2)


@pytest.mark.parametrize("text", ["(()", "())", "(a)", "()()", ""])
def test_parse_errors_plane(text):
    with pytest.raises(TreeParseError):
        parse_tree(text)


@pytest.mark.parametrize("text", ["[0:[]", "[[]]", "[2:[]]", "[1:[] 0:[]]", "0:[]"])
def test_parse_errors_slotted(text):
    with pytest.raises(TreeParseError):
        parse_tree(text, "slotted:2")


def test_slotted_parse():
    t = parse_tree("[1:[]]", "slotted:2")
    assert t.degrees.tolist() == [1, 0]
    assert t.slots.tolist() == [-1, 1]
    assert t != parse_tree("[0:[]]", "slotted:2")
    assert t.plane() == parse_tree("[0:[]]", "slotted:2").plane()


@given(plane_trees())
def test_round_trip_plane(t):
    assert parse_tree(serialize_tree(t)) == t


@given(binary_trees())
def test_round_trip_slotted(t):
    assert parse_tree(serialize_tree(t), "slotted:2") == t


def test_round_trip_many():
    for t in random_trees("binary", 500, 60) + random_trees("motzkin", 500, 60, seed=1):
        kind = "slotted:2" if t.is_slotted else "plane"
        assert parse_tree(serialize_tree(t), kind) == t


@given(plane_trees())
def test_parent_child_consistency(t):
    par = t.parents()
    for v in range(len(t)):
        for c in t.children(v):
            assert par[c] == v
    sizes = t.sizes()
    assert sizes[0] == len(t)
    for v in range(len(t)):
        assert sizes[v] == 1 + sum(sizes[c] for c in t.children(v))
        assert len(t.subtree(v)) == sizes[v]


def test_forest_skips_comments():
    trees = parse_forest(["# header", "", "(())", "(()())"])
    assert [len(t) for t in trees] == [2, 3]


def test_labeled_tree_validation():
    t = Tree([2, 0, 0])
    LabeledTree(t, (1, 2, 3))
    with pytest.raises(ValueError):
        LabeledTree(t, (2, 1, 3))
    with pytest.raises(ValueError):
        LabeledTree(t, (1, 2, 2))


def test_immutable():
    t = path_tree(3)
    with pytest.raises(ValueError):
        t.degrees[0] = 5
