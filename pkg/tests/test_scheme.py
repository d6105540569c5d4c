import pytest

from unimap import permutations as perm
from unimap.enumeration import enum_unicellular
from unimap.errors import GenusZero
from unimap.maps import genus, make_map, vertices
from unimap.scheme import (decompose, is_dominant, prune_core, recompose,
                           scheme_of)
from unimap.trees import TreeStructure, is_in_T, tree_from_dyck

TORUS = make_map((3, 4, 1, 2), (4, 1, 2, 3))


def test_prune_core_rejects_trees():
    with pytest.raises(GenusZero):
        prune_core(tree_from_dyck([1, 1, 0, 0]))


def test_scheme_of_torus_is_itself():
    s = scheme_of(TORUS)
    assert s.map.map == TORUS
    assert len(s.edge_origins) == 2
    assert s.edge_origins[0] == 1  # root edge comes first


def test_is_dominant():
    # the 4-valent torus scheme is not trivalent
    assert not is_dominant(TORUS)
    # a tree has no scheme at all
    assert not is_dominant(tree_from_dyck([1, 0]))
    doms = [m for m in enum_unicellular(1, 3) if is_dominant(m.map)]
    assert len(doms) == 1
    s = scheme_of(doms[0].map)
    assert all(len(c) == 3 for c in perm.cycles(s.map.map.beta))


def test_scheme_degree_equation():
    # sum over scheme vertices of (deg - 2) equals 2(2g - 1)
    for g, nmax in ((1, 5), (2, 5)):
        for n in range(2 * g, nmax + 1):
            for m in enum_unicellular(g, n):
                s = scheme_of(m.map)
                degs = [len(c) for c in perm.cycles(s.map.map.beta)]
                assert min(degs) >= 3
                assert sum(d - 2 for d in degs) == 2 * (2 * g - 1)


def test_decompose_tree_membership():
    for m in enum_unicellular(1, 4):
        d = decompose(m.map)
        for dt in d.trees:
            ts = TreeStructure(dt.tree)
            assert is_in_T(ts, dt.mark)
        # the first tree carries the image of the root edge
        assert 1 <= d.root_mark[0] <= 2 * d.trees[0].tree.map.n


def test_decompose_recompose_roundtrip():
    for g, nmax in ((1, 5), (2, 5)):
        for n in range(2 * g, nmax + 1):
            for m in enum_unicellular(g, n):
                d = decompose(m.map)
                assert recompose(d).map == m.map


def test_decompose_edge_count_matches_scheme():
    for m in enum_unicellular(1, 5):
        d = decompose(m.map)
        assert len(d.trees) == len(d.scheme.edge_origins)
        total = sum(dt.tree.map.n for dt in d.trees)
        assert total == m.map.n  # edges are partitioned among the trees
