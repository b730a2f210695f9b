"""Per-node max and sum over node-to-ancestor paths, and the merge of child
quasigaps into the small quasigaps of the parent interval.

A path ``(v, u, weight)`` runs from ``v`` up to its ancestor ``u``,
excluding ``u``; ``u = -1`` takes it through the root.
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

import numpy as np

from .induced_tree import InducedTree
from .kernels import counting_order, node_depths, path_max, path_sum
from .quasigap import INF

UNCOVERED = -INF

Path = tuple[int, int, int]


def _depths(parent: Sequence[int]) -> list[int]:
    size = len(parent)
    depth = [-1] * size
    for v in range(size):
        chain = []
        x = v
        while x >= 0 and depth[x] < 0:
            chain.append(x)
            x = parent[x]
        base = depth[x] if x >= 0 else -1
        for y in reversed(chain):
            base += 1
            depth[y] = base
    return depth


def _check_ancestor(parent: Sequence[int], depth: Sequence[int], v: int, u: int) -> None:
    if u < 0:
        return
    x = v
    while x >= 0 and depth[x] > depth[u]:
        x = parent[x]
    if x != u:
        raise ValueError(f"{u} is not an ancestor of {v}")


class StaticTreeUnionFind:
    """Disjoint sets of tree nodes, each named by its topmost node.

    Unions only ever join a node's set with its parent's set.
    """

    __slots__ = ("up", "rank", "top", "ops")

    def __init__(self, size: int):
        self.up = list(range(size))
        self.rank = [0] * size
        self.top = list(range(size))
        self.ops = 0

    def find(self, x: int) -> int:
        up = self.up
        root = x
        while up[root] != root:
            root = up[root]
            self.ops += 1
        while up[x] != root:
            up[x], x = root, up[x]
        return root

    def topmost(self, x: int) -> int:
        return self.top[self.find(x)]

    def union_with_parent(self, x: int, p: int) -> None:
        a, b = self.find(x), self.find(p)
        if a == b:
            return
        t = self.top[b]
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.up[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        self.top[a] = t
        self.ops += 1


def _as_paths(paths) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(paths, tuple) and len(paths) == 3 and isinstance(paths[0], np.ndarray):
        return paths
    arr = np.asarray(paths, dtype=np.int64).reshape(-1, 3)
    return (np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]),
            np.ascontiguousarray(arr[:, 2]))


def _check_paths(parent, pv, pu) -> list[int]:
    depth = _depths(parent)
    for v, u in zip(pv.tolist(), pu.tolist()):
        _check_ancestor(parent, depth, v, u)
    return depth


def tree_path_max(parent: Sequence[int], paths, cap: int | None = None, check: bool = True,
                  counter: Counter | None = None, depth: np.ndarray | None = None) -> list[int]:
    """Largest weight of a path through each node, ``UNCOVERED`` if none.

    ``paths`` is a sequence of ``(v, u, weight)`` or a triple of arrays.
    With ``cap`` set, weights must be non-negative; they are clamped to
    ``cap`` and ordered by a counting sort.
    """
    par = np.asarray(parent, dtype=np.int64)
    pv, pu, pw = _as_paths(paths)
    if check:
        depth = _check_paths(parent, pv, pu)
    elif depth is None:
        depth = _depths(parent)
    depth = np.asarray(depth, dtype=np.int64)
    if cap is None:
        order = np.argsort(-pw, kind="stable")
    else:
        if pw.size and pw.min() < 0:
            raise ValueError("counting sort needs non-negative weights")
        pw = np.minimum(pw, cap)
        order = counting_order(pw, cap)
    best, ops = path_max(par, depth, order, pv, pu, pw, UNCOVERED)
    if counter is not None:
        counter["merge"] += len(par) + len(pv) + int(ops)
    return best.tolist()


def tree_path_sum(parent: Sequence[int], paths, order: Sequence[int] | None = None,
                  check: bool = True, counter: Counter | None = None) -> list[int]:
    """Total weight of the paths through each node.

    ``order`` lists the nodes children first; it is derived when omitted.
    """
    par = np.asarray(parent, dtype=np.int64)
    pv, pu, pw = _as_paths(paths)
    depth = _check_paths(parent, pv, pu) if check else None
    if order is None:
        if depth is None:
            depth = _depths(parent)
        order = np.argsort(-np.asarray(depth, dtype=np.int64), kind="stable")
    total = path_sum(par, np.asarray(order, dtype=np.int64), pv, pu, pw)
    if counter is not None:
        counter["merge"] += len(par) + len(pv)
    return total.tolist()


def child_paths(child: InducedTree, values, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edges of ``child`` as parent-tree paths weighted ``min(value, m+1)``."""
    g = child.gnode
    return (g[1:], g[child.parent[1:]],
            np.minimum(np.asarray(values, dtype=np.int64)[1:], m + 1))


def merge_paths(parent: InducedTree, pv: np.ndarray, pu: np.ndarray, pw: np.ndarray, k: int,
                m: int, counter: Counter | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Nodes of ``parent`` with quasigap ``<= m`` and their values, from the
    edges of ``k`` child trees mapped as paths with capped weights."""
    a = parent.arrays
    seen = path_sum(a.parent, a.post, pv, pu, np.ones(len(pv), dtype=np.int64))
    depth = node_depths(a.parent, a.post)
    best, ops = path_max(a.parent, depth, counting_order(pw, m + 1), pv, pu, pw, UNCOVERED)
    if counter is not None:
        counter["merge"] += 2 * (a.size + len(pv)) + int(ops)
    wlen = a.wlen
    pl = wlen[a.parent]
    pl[0] = 0
    keep = (seen == k) & (pl < m)
    keep[0] = False
    bad = keep & (best == UNCOVERED)
    if bad.any():
        v = int(np.flatnonzero(bad)[0])
        raise AssertionError(f"node {v} present in every child but carries no weight")
    keep &= best <= np.minimum(m, wlen)
    nodes = np.flatnonzero(keep)
    return nodes, best[nodes]


def merge(parent: InducedTree, children: Sequence[InducedTree], values: Sequence[Sequence[int]],
          m: int, counter: Counter | None = None) -> dict[int, int]:
    """Quasigaps ``<= m`` of the parent's nodes from the children's exact
    quasigaps; nodes left out are certainly above ``m``.

    ``children[x].gnode`` maps nodes of the child tree into the parent tree.
    """
    dt = parent.arrays.parent.dtype
    parts = [child_paths(c, vals, m) for c, vals in zip(children, values)]
    pv = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0, dt)
    pu = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0, dt)
    pw = np.concatenate([p[2] for p in parts]) if parts else np.zeros(0, np.int64)
    nodes, vals = merge_paths(parent, pv, pu, pw, len(children), m, counter)
    return dict(zip(nodes.tolist(), vals.tolist()))
