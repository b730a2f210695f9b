import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIG1, all_words
from seedscan.text_index import (LcaIndex, LceIndex, SparseTable, Text, build_suffix_array,
                                 build_suffix_tree)


def naive_sa(w):
    s = [c + 1 for c in w.encode()] + [0]
    return sorted(range(1, len(s) + 1), key=lambda p: s[p - 1:])


def test_suffix_array_examples():
    sa, lcp = build_suffix_array(Text("banana"))
    assert sa.tolist() == [7, 6, 4, 2, 1, 5, 3]
    sa, _ = build_suffix_array(Text("a"))
    assert sa.tolist() == [2, 1]
    sa, lcp = build_suffix_array(Text("aaa"))
    assert sa.tolist() == [4, 3, 2, 1]
    assert lcp[1:].tolist() == [0, 1, 2]


def test_empty_text_rejected():
    with pytest.raises(ValueError):
        Text("")
    with pytest.raises(ValueError):
        Text([])


@pytest.mark.parametrize("method", ["sais", "doubling"])
def test_suffix_array_exhaustive(method):
    for w in list(all_words("ab", 10)) + list(all_words("abc", 6)):
        sa, lcp = build_suffix_array(Text(w), method=method)
        assert sa.tolist() == naive_sa(w)
        s = w + "\0"
        for r in range(1, len(sa)):
            a, b = s[sa[r - 1] - 1:], s[sa[r] - 1:]
            k = 0
            while k < min(len(a), len(b)) and a[k] == b[k]:
                k += 1
            assert lcp[r] == k


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1000), min_size=1, max_size=80))
def test_suffix_array_tokens(tokens):
    text = Text(tokens, tokens=True)
    sa, _ = build_suffix_array(text)
    s = text.symbols + [0]
    assert sa.tolist() == sorted(range(1, len(s) + 1), key=lambda p: s[p - 1:])


def spellings(tree):
    a = tree.arrays
    kids = a.children()
    out = []
    for v in range(tree.size):
        if not kids[v]:
            out.append(tuple(tree.spell(v)))
    return out


def test_tree_spells_all_suffixes():
    for w in list(all_words("ab", 12)) + list(all_words("abc", 9)):
        if len(w) > 9 and hash(w) % 7:
            continue
        t = build_suffix_tree(Text(w))
        raw = list(w.encode())
        want = {tuple(raw[p:]) + (None,) for p in range(len(w))} | {(None,)}
        got = spellings(t)
        assert len(got) == len(w) + 1
        assert set(got) == want


def test_tree_structure(rng):
    for _ in range(300):
        w = "".join(rng.choice("abc") for _ in range(rng.randint(1, 40)))
        t = build_suffix_tree(Text(w))
        a = t.arrays
        kids = a.children()
        assert a.size <= 2 * len(w) + 2
        internal = [v for v in range(a.size) if kids[v]]
        for v in internal:
            if v:
                assert len(kids[v]) >= 2
            for c in kids[v]:
                assert a.parent[c] == v
                assert a.depth[c] > a.depth[v]
        # every internal node but the root adds (children - 1) leaves
        assert sum(len(kids[v]) - 1 for v in internal) == len(w)


def test_aaaa_is_a_path():
    t = build_suffix_tree(Text("aaaa"))
    a = t.arrays
    kids = a.children()
    internal = sorted((int(a.wlen[v]), v) for v in range(a.size) if kids[v] and v)
    assert [d for d, _ in internal] == [1, 2, 3]
    for _, v in internal:
        assert sum(1 for c in kids[v] if kids[c]) <= 1 and len(kids[v]) == 2


def test_fig1_has_node_abaa():
    t = build_suffix_tree(Text(FIG1))
    words = {bytes(c for c in t.spell(v) if c is not None).decode() for v in range(t.size)}
    # abaa is followed by both a and b, so it is branching
    assert "abaa" in words


def naive_lca(parent, a, b):
    anc = set()
    while a >= 0:
        anc.add(a)
        a = parent[a]
    while b not in anc:
        b = parent[b]
    return b


def test_lca_random_trees(rng):
    for size in (1, 2, 5, 50, 200):
        for _ in range(5):
            parent = [-1] + [rng.randrange(v) for v in range(1, size)]
            idx = LcaIndex(parent)
            for _ in range(1000 // 5):
                a, b = rng.randrange(size), rng.randrange(size)
                assert idx.lca(a, b) == naive_lca(parent, a, b)
            assert idx.lca(size - 1, size - 1) == size - 1
            assert idx.lca(size - 1, 0) == 0
    with pytest.raises(KeyError):
        LcaIndex([-1, 0]).lca(0, 5)


def test_lce(rng):
    assert LceIndex(Text("ababa")).lce(1, 3) == 3
    assert LceIndex(Text("ab")).lce(1, 2) == 0
    for n in (1, 7, 30, 100):
        w = "".join(rng.choice("ab") for _ in range(n))
        idx = LceIndex(Text(w))
        for _ in range(1000):
            i, j = rng.randint(1, n), rng.randint(1, n)
            k = 0
            while i - 1 + k < n and j - 1 + k < n and w[i - 1 + k] == w[j - 1 + k]:
                k += 1
            assert idx.lce(i, j) == k
        assert idx.lce(n, n) == 1
    with pytest.raises(IndexError):
        LceIndex(Text("ab")).lce(0, 1)


def test_sparse_table(rng):
    vals = [rng.randint(-50, 50) for _ in range(300)]
    st_ = SparseTable(vals)
    for _ in range(500):
        a = rng.randrange(300)
        b = rng.randrange(a, 300)
        assert st_.min(a, b) == min(vals[a:b + 1])
        assert vals[st_.argmin(a, b)] == min(vals[a:b + 1])


def test_tokens_keep_order():
    t = Text([30, 5, 30, 7], tokens=True)
    assert t.symbols == [3, 1, 3, 2]
    with pytest.raises(ValueError):
        Text([1, -2], tokens=True)
