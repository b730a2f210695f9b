import pytest

from conftest import EXAMPLE, periodic_word, random_word, root_tree
from seedscan.induced_tree import extract_subtrees
from seedscan.oracle import INFINITE, brute_maxgap, brute_quasigap_map, naive_interval_quasigaps
from seedscan.quasigap import INF, brute_quasigaps, maxgap, quasigap_at_locus, quasigap_formula


def as_map(tree, w, values):
    out = {}
    for v in range(1, tree.size):
        if tree.wlen[v] > tree.parent_len(v):
            s, k = tree.word_key(v)
            out[tuple(w[s - 1:s - 1 + k])] = INFINITE if values[v] >= INF else values[v]
    return out


def test_maxgap(rng):
    assert maxgap([5]) == 0
    assert maxgap([2, 5, 6, 10]) == 4
    for _ in range(200):
        xs = sorted(rng.sample(range(100), rng.randint(0, 10)))
        assert maxgap(xs) == brute_maxgap(xs)


def test_formula_example():
    # v = aaabaaa occurs at 4, 8, 12; its parent is aaa
    assert quasigap_formula(4, 12, 4, 3, (1, 19), 7) == 5
    assert quasigap_formula(1, 4, 1, 0, (1, 4), 1) == 1
    assert quasigap_formula(5, 4, 0, 0, (1, 4), 3) == INF
    assert quasigap_formula(1, 1, 0, 0, (1, 4), 2) == INF


def test_locus_extension():
    assert quasigap_at_locus(4, 7, 7, 5) == 5
    assert quasigap_at_locus(4, 7, 5, 5) == 5
    assert quasigap_at_locus(4, 7, 4 + 1, INF) == INF
    with pytest.raises(ValueError):
        quasigap_at_locus(4, 7, 4, 5)
    with pytest.raises(ValueError):
        quasigap_at_locus(4, 7, 8, 5)


def test_example_lengths_on_edge():
    t = root_tree(EXAMPLE)
    values = brute_quasigaps(t)
    v = next(v for v in range(t.size) if t.word_key(v)[1] == 7
             and EXAMPLE[t.word_key(v)[0] - 1:][:7] == "aaabaaa")
    assert values[v] == 5
    # the class is {aaab, aaaba, aaabaa, aaabaaa}
    assert t.parent_len(v) == 3
    assert [quasigap_at_locus(3, 7, k, values[v]) for k in (5, 6, 7)] == [5, 5, 5]
    assert quasigap_at_locus(3, 7, 4, values[v]) == INF


def test_unary_word():
    t = root_tree("aaaaaa")
    values = brute_quasigaps(t)
    a = next(v for v in range(t.size) if t.wlen[v] == 1 and t.parent_len(v) == 0)
    assert values[a] == 1


def test_whole_word_equals_definition(rng):
    for _ in range(300):
        n = rng.randint(1, 14)
        w = random_word(rng, n) if rng.random() < 0.5 else periodic_word(rng, n)
        t = root_tree(w)
        assert as_map(t, w, brute_quasigaps(t)) == brute_quasigap_map(w)


def test_interval_values_match_naive(rng):
    for _ in range(300):
        n = rng.randint(1, 24)
        w = random_word(rng, n) if rng.random() < 0.5 else periodic_word(rng, n)
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        sub = extract_subtrees(root_tree(w), [(i, j)])[0]
        assert as_map(sub, w, brute_quasigaps(sub)) == naive_interval_quasigaps(w, (i, j))


def test_monotone_under_subintervals(rng):
    """A finite quasigap in a subinterval never exceeds the one in the
    enclosing interval."""
    for _ in range(200):
        n = rng.randint(2, 40)
        w = periodic_word(rng, n)
        root = root_tree(w)
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        outer = extract_subtrees(root, [(1, n)])[0]
        inner = extract_subtrees(outer, [(i, j)])[0]
        vo, vi = brute_quasigaps(outer), brute_quasigaps(inner)
        for v in range(1, inner.size):
            if vi[v] < INF:
                g = int(inner.gnode[v])
                # compare at the same word: the outer value at the inner node's locus
                if vo[g] < INF and outer.wlen[g] == inner.wlen[v]:
                    assert vi[v] <= vo[g]


def test_translation_invariance():
    """Two copies of a block followed by the same letters give equal values."""
    block = "abaababaabaab"
    w = (block + "b") * 3
    root = root_tree(w)
    k = len(block) + 1
    left, right = extract_subtrees(root, [(1, k), (k + 1, 2 * k)])
    key = lambda t, v: (tuple(w[t.word_key(v)[0] - 1:][:t.word_key(v)[1]]))
    lv, rv = brute_quasigaps(left), brute_quasigaps(right)
    lm = {key(left, v): lv[v] for v in range(1, left.size) if left.wlen[v] <= 4}
    rm = {key(right, v): rv[v] for v in range(1, right.size) if right.wlen[v] <= 4}
    assert lm == rm
