"""Induced suffix trees T(gamma) and their extraction for sub-intervals."""
from __future__ import annotations

from collections import Counter
from typing import NamedTuple, Sequence

import numpy as np

from .kernels import extract_leaf_orders, map_nodes, occurrence_bounds, rmq_build
from .text_index import SparseTable, SuffixTree, TreeArrays, build_tree_arrays


class PackedTree(NamedTuple):
    """The per-node arrays handed to compiled kernels."""

    parent: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    leaves: np.ndarray
    leaf_of: np.ndarray
    first: np.ndarray
    last: np.ndarray
    wlen: np.ndarray
    post: np.ndarray


class InducedTree:
    """Compacted trie of the suffixes ``w[p..n]#`` with ``p`` in ``[i..j]``.

    Per node we keep the string depth, the real word length, the parent and
    the occurrence statistics ``first``, ``last`` and ``count`` of the leaf
    positions below it.  ``gnode`` (when extracted from a larger tree) maps
    every node to the node of the parent tree spelling the same word.
    """

    def __init__(self, interval: tuple[int, int], n: int, arrays: TreeArrays,
                 gnode: np.ndarray | None = None):
        i, j = interval
        if not 1 <= i <= j <= n:
            raise ValueError(f"bad interval [{i}..{j}] for n={n}")
        if len(arrays.leaves) != j - i + 1:
            raise ValueError("leaf set does not match the interval")
        self.i, self.j, self.n = i, j, n
        self.arrays = arrays
        self.gnode = gnode
        self.rank = np.empty(j - i + 1, dtype=arrays.leaves.dtype)
        self.rank[arrays.leaves - i] = np.arange(j - i + 1)
        self.first, self.last = occurrence_bounds(arrays.leaves, arrays.leaf_of,
                                                  arrays.parent, arrays.post, n)
        self._rmq: SparseTable | None = None
        self._block_rmq: tuple | None = None
        self._children: list[list[int]] | None = None

    # -- shape ---------------------------------------------------------------

    @property
    def size(self) -> int:
        return self.arrays.size

    @property
    def N(self) -> int:
        return self.j - self.i + 1

    @property
    def wlen(self) -> np.ndarray:
        return self.arrays.wlen

    @property
    def parent(self) -> np.ndarray:
        return self.arrays.parent

    def count(self, v: int) -> int:
        return int(self.arrays.hi[v] - self.arrays.lo[v])

    def occ(self, v: int) -> list[int]:
        """Occurrence starts of node ``v`` inside the interval, sorted."""
        a = self.arrays
        return sorted(a.leaves[a.lo[v]:a.hi[v]].tolist())

    def leaf(self, pos: int) -> int:
        return int(self.arrays.leaf_of[self.rank[pos - self.i]])

    def is_leaf(self, v: int) -> bool:
        return bool(self.arrays.is_leaf(v))

    def parent_len(self, v: int) -> int:
        p = self.arrays.parent[v]
        return int(self.arrays.wlen[p]) if p >= 0 else 0

    @property
    def children(self) -> list[list[int]]:
        if self._children is None:
            self._children = self.arrays.children()
        return self._children

    def preorder(self) -> list[int]:
        order = []
        stack = [0]
        kids = self.children
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(kids[v]))
        return order

    def occ_stats(self, v: int) -> tuple[int, int, int]:
        """``(first, last, count)`` of node ``v``."""
        if not 0 <= v < self.size:
            raise KeyError(v)
        return int(self.first[v]), int(self.last[v]), self.count(v)

    def word_key(self, v: int) -> tuple[int, int]:
        """Canonical ``(start, length)`` of the longest real word at ``v``."""
        a = self.arrays
        return int(a.leaves[a.lo[v]]), int(a.wlen[v])

    def packed(self) -> PackedTree:
        a = self.arrays
        return PackedTree(a.parent, a.lo, a.hi, a.leaves, a.leaf_of, self.first, self.last,
                          a.wlen, a.post)

    def locus_lcp(self) -> np.ndarray:
        """Adjacent-leaf lcp with the unused first entry zeroed."""
        lcp = self.arrays.lcp.copy()
        lcp[0] = 0
        return lcp

    def locus_rmq(self) -> SparseTable:
        if self._rmq is None:
            self._rmq = SparseTable(self.locus_lcp())
        return self._rmq

    def block_rmq(self) -> tuple[np.ndarray, np.ndarray]:
        if self._block_rmq is None:
            lcp = self.locus_lcp()
            self._block_rmq = (lcp, rmq_build(lcp))
        return self._block_rmq


def induce_root_tree(tree: SuffixTree) -> InducedTree:
    """``T([1..n])``: the suffix tree with the bare ``#`` leaf dropped."""
    n = tree.text.n
    leaves = np.asarray(tree.sa[1:], dtype=np.int64)
    lcp = np.zeros(n, dtype=np.int64)
    lcp[1:] = tree.lcp[2:]
    return InducedTree((1, n), n, build_tree_arrays(leaves, lcp, n))


def induce_from_text(text, interval: tuple[int, int], lce) -> InducedTree:
    """Build ``T(interval)`` directly (sorting by the global suffix order)."""
    i, j = interval
    rank = lce.rank
    leaves = sorted(range(i, j + 1), key=rank.__getitem__)
    lcp = [0] + [lce.lce(a, b) for a, b in zip(leaves, leaves[1:])]
    return InducedTree(interval, text.n, build_tree_arrays(leaves, lcp, text.n))


class LeafOrders(NamedTuple):
    """Leaf orders of sub-intervals read off a parent tree.

    For interval ``x``, ``ranks[ptr[x]:ptr[x+1]]`` are the parent ranks of
    its positions in suffix order and ``arg`` at the same offsets the parent
    rank holding the lcp minimum between consecutive ones (first unused).
    """

    starts: np.ndarray
    ends: np.ndarray
    ptr: np.ndarray
    ranks: np.ndarray
    arg: np.ndarray

    def length(self, x: int) -> int:
        return int(self.ends[x] - self.starts[x] + 1)


def leaf_orders(parent: InducedTree, intervals: Sequence[tuple[int, int]]) -> LeafOrders:
    """One bucket pass over the parent's leaf order for all ``intervals``
    (each inside the parent's interval)."""
    i, j = parent.i, parent.j
    for a, b in intervals:
        if not i <= a <= b <= j:
            raise ValueError(f"[{a}..{b}] is not inside [{i}..{j}]")
    starts = np.array([a for a, _ in intervals], dtype=np.int64)
    ends = np.array([b for _, b in intervals], dtype=np.int64)
    plcp, table = parent.block_rmq()
    ptr, ranks, arg = extract_leaf_orders(i, starts, ends, parent.rank, plcp, table)
    return LeafOrders(starts, ends, ptr, ranks, arg)


def subtree_at(parent: InducedTree, orders: LeafOrders, x: int) -> InducedTree:
    """``T(lam)`` for interval ``x`` of ``orders``, with its node map."""
    s, e = orders.ptr[x], orders.ptr[x + 1]
    rk, ag = orders.ranks[s:e], orders.arg[s:e]
    plcp, _ = parent.block_rmq()
    lcp = plcp[ag]
    lcp[0] = 0
    pa = parent.arrays
    arrays = build_tree_arrays(pa.leaves[rk], lcp, parent.n)
    gnode = map_nodes(arrays.leaf_of, arrays.bnode, pa.leaf_of, pa.bnode, rk, ag, arrays.size)
    return InducedTree((int(orders.starts[x]), int(orders.ends[x])), parent.n, arrays, gnode)


def extract_subtrees(parent: InducedTree, intervals: Sequence[tuple[int, int]],
                     counter: Counter | None = None) -> list[InducedTree]:
    """Trees ``T(lam)`` for every ``lam`` in ``intervals`` (each inside the
    parent's interval), via one bucket pass over the parent's leaf order and
    stack construction with parent-tree lcp minima.
    """
    if not intervals:
        return []
    orders = leaf_orders(parent, intervals)
    out = [subtree_at(parent, orders, x) for x in range(len(intervals))]
    if counter is not None:
        counter["extract"] += parent.N + int(orders.ptr[-1]) + sum(t.size for t in out)
    return out
