import math

import pytest

from unimap.maps import genus, vertices
from unimap.trees import (TreeStructure, all_trees, count_right_of,
                          dyck_from_tree, is_in_T, is_right_of,
                          tree_from_dyck)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_dyck_roundtrip():
    for word in ([1, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 0, 1, 0, 0]):
        t = tree_from_dyck(word)
        assert genus(t) == 0
        assert tuple(dyck_from_tree(t)) == tuple(word)


def test_all_trees_counts():
    for n in range(1, 7):
        assert sum(1 for _ in all_trees(n)) == catalan(n)


def test_doubly_marked_class_size():
    # trees with a mark below the root edge: binom(2n, n) / 2 of them
    for n in range(1, 7):
        cnt = 0
        for t in all_trees(n):
            ts = TreeStructure(t)
            cnt += sum(1 for v in ts.vertices() if is_in_T(ts, v))
        assert cnt == math.comb(2 * n, n) // 2


def test_right_of_total_count():
    # summed over the class, each tree edge is at the right of the mark
    # in exactly one of its two orientations: n per (tree, mark)
    for n in range(1, 6):
        total = 0
        pairs = 0
        for t in all_trees(n):
            ts = TreeStructure(t)
            for v in ts.vertices():
                if not is_in_T(ts, v):
                    continue
                pairs += 1
                total += count_right_of(t, v)
        assert total == n * pairs


def test_right_of_requires_marked_vertex():
    t = tree_from_dyck([1, 1, 0, 0])
    ts = TreeStructure(t)
    root = ts.root_vertex
    with pytest.raises(ValueError):
        is_right_of(ts, root, 1)


def test_subtree_vertices():
    t = tree_from_dyck([1, 1, 0, 1, 0, 0, 1, 0])
    ts = TreeStructure(t)
    # half-edge 1 opens the subtree holding everything up to alpha(1)
    lo, hi = 1, t.alpha[0]
    sub = ts.subtree_vertices(1)
    assert all(lo < v <= hi for v in sub)
    assert set(sub) | {ts.root_vertex} <= set(vertices(t))
