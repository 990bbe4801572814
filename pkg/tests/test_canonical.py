import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fringetrees.canonical import (
    IsoNotion,
    automorphism_size,
    automorphism_size_log,
    build_minimal_dag,
    canonical_code,
    count_distinct_fringe,
    fringe_code_strings,
    plane_embeddings,
    plane_embeddings_log,
)
from fringetrees.tree import Tree, parse_tree, serialize_tree

from conftest import binary_trees, plane_trees

FIG2 = "[0:[0:[1:[]] 1:[]] 1:[0:[] 1:[0:[]]]]"


def test_figure_tree_counts():
    t = parse_tree(FIG2, "slotted:2")
    assert len(t) == 9
    got = [count_distinct_fringe(t, x) for x in IsoNotion]
    assert got == [6, 5, 4]


def test_mirror_slots():
    a, b = parse_tree("[0:[]]", "slotted:2"), parse_tree("[1:[]]", "slotted:2")
    assert canonical_code(a, "asfamily") != canonical_code(b, "asfamily")
    assert canonical_code(a, "plane") == canonical_code(b, "plane")


def _permute_children(t, rng):
    children = [list(c) for c in t.children_lists()]
    for ch in children:
        rng.shuffle(ch)
    return Tree.from_children(children)[0]


@given(plane_trees(), st.integers(0, 2**32))
def test_unordered_invariant_under_permutation(t, seed):
    u = _permute_children(t, np.random.default_rng(seed))
    assert canonical_code(u, "unordered") == canonical_code(t, "unordered")


@given(binary_trees(max_size=60))
def test_dag_matches_string_oracle(t):
    for x in IsoNotion:
        assert len(build_minimal_dag(t, x)) == len(set(fringe_code_strings(t, x)))


@given(plane_trees())
def test_coarsening_chain(t):
    h, j, k = (count_distinct_fringe(t, x) for x in IsoNotion)
    assert h == j >= k  # AsFamily equals Plane without slots


def test_dag_code_unfolds():
    t = parse_tree(FIG2, "slotted:2")
    dag = build_minimal_dag(t, "asfamily")
    assert parse_tree(dag.code().code.decode(), "slotted:2") == t
    assert sum(1 for _ in dag.digests()) == 6


def test_dag_write_format(tmp_path):
    import io

    dag = build_minimal_dag(parse_tree("(()(()))"), "unordered")
    buf = io.StringIO()
    dag.write(buf)
    lines = buf.getvalue().splitlines()
    assert lines[1].startswith("root ")
    assert len(lines) == 2 + len(dag)


def test_aut_examples():
    t = parse_tree("(()(()))")  # root with branches leaf and cherry-less path
    assert automorphism_size(t) == 1
    assert plane_embeddings(t) == 2
    cherry_leaf = parse_tree("(()(()()))")
    assert automorphism_size(cherry_leaf) == 2
    assert math.isclose(automorphism_size_log(cherry_leaf), math.log(2))
    assert math.isclose(plane_embeddings_log(cherry_leaf), math.log(4 / 2))


def _all_reorderings(t):
    """Every plane tree obtained by permuting children at each vertex."""
    from itertools import product

    ch = t.children_lists()
    perms = [list(permutations(c)) for c in ch]
    out = set()
    for pick in product(*perms):
        out.add(serialize_tree(Tree.from_children([list(p) for p in pick])[0]))
    return out


@given(plane_trees(max_size=8, max_degree=3))
def test_embedding_count_brute_force(t):
    assert plane_embeddings(t) == len(_all_reorderings(t))
