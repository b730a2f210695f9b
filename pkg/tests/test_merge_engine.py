import random

import pytest

from conftest import periodic_word, random_word, root_tree
from seedscan.induced_tree import extract_subtrees
from seedscan.merge_engine import (UNCOVERED, StaticTreeUnionFind, merge, tree_path_max,
                                   tree_path_sum)
from seedscan.oracle import naive_tree_path
from seedscan.quasigap import brute_quasigaps
from seedscan.staircase import build_staircase


def random_tree(rng, size):
    return [-1] + [rng.randrange(v) for v in range(1, size)]


def random_paths(rng, parent, count, max_weight=50):
    out = []
    for _ in range(count):
        v = rng.randrange(len(parent))
        chain = []
        x = parent[v]
        while x >= 0:
            chain.append(x)
            x = parent[x]
        u = rng.choice(chain + [-1])
        out.append((v, u, rng.randint(0, max_weight)))
    return out


def test_chain_example():
    parent = [-1, 0, 1, 1]  # r, a, b under a, c under a
    paths = [(2, 0, 5), (3, 1, 3)]
    assert tree_path_max(parent, paths) == [UNCOVERED, 5, 5, 3]
    assert tree_path_sum(parent, paths) == [0, 5, 5, 3]
    assert tree_path_sum(parent, []) == [0, 0, 0, 0]


def test_single_path_to_root():
    parent = [-1, 0, 1, 2]
    assert tree_path_max(parent, [(3, 0, 7)]) == [UNCOVERED, 7, 7, 7]
    assert tree_path_max(parent, [(3, -1, 7)]) == [7, 7, 7, 7]


def test_not_an_ancestor():
    parent = [-1, 0, 0]
    with pytest.raises(ValueError):
        tree_path_max(parent, [(1, 2, 1)])
    with pytest.raises(ValueError):
        tree_path_sum(parent, [(2, 1, 1)])


@pytest.mark.parametrize("cap", [None, 50])
def test_random_against_naive(cap):
    rng = random.Random(7)
    for _ in range(300):
        parent = random_tree(rng, rng.randint(1, 64))
        paths = random_paths(rng, parent, rng.randint(0, 64))
        best, total = naive_tree_path(parent, paths)
        assert tree_path_max(parent, paths, cap=cap) == [UNCOVERED if b is None else b for b in best]
        assert tree_path_sum(parent, paths) == total


def test_union_find():
    parent = [-1, 0, 1, 1, 0]
    uf = StaticTreeUnionFind(len(parent))
    uf.union_with_parent(2, 1)
    uf.union_with_parent(3, 1)
    assert uf.topmost(3) == 1 and uf.topmost(2) == 1
    uf.union_with_parent(1, 0)
    assert {uf.topmost(x) for x in range(4)} == {0}
    assert uf.topmost(4) == 4
    uf.union_with_parent(1, 0)


def test_single_interval_is_identity(rng):
    for _ in range(50):
        w = periodic_word(rng, rng.randint(2, 40))
        root = root_tree(w)
        child = extract_subtrees(root, [(1, len(w))])[0]
        values = brute_quasigaps(child)
        m = rng.randint(1, len(w))
        got = merge(root, [child], [values], m)
        want = brute_quasigaps(root)
        assert got == {v: want[v] for v in range(1, root.size) if want[v] <= m}


def test_merge_matches_brute_on_staircase(rng):
    """Max over an unreduced staircase gives every quasigap up to m."""
    for _ in range(300):
        n = rng.randint(4, 60)
        w = random_word(rng, n) if rng.random() < 0.3 else periodic_word(rng, n)
        root = root_tree(w)
        want = brute_quasigaps(root)
        m = rng.randint(1, max(1, n // 3))
        lams = build_staircase((1, n), m)
        kids = extract_subtrees(root, lams)
        got = merge(root, kids, [brute_quasigaps(k) for k in kids], m)
        assert got == {v: want[v] for v in range(1, root.size) if want[v] <= m}
        for v in range(1, root.size):
            if v not in got:
                assert want[v] > m
