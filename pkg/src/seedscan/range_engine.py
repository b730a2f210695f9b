"""Quasigaps restricted to a value range, computed window by window.

For a window ``[d, 2d]`` every explicit node gets one verdict: the exact
quasigap when it lies in the window, ``BELOW`` (certainly ``< d``),
``ABOVE`` (certainly ``> 2d``, infinity included) or ``OUTSIDE`` (not in
the window, side unknown; only for nodes shorter than ``d``).

Restricted maxgaps are computed over buckets of ``d`` consecutive
positions of the interval: gaps inside a bucket are below ``d``, so only
the extreme elements of each bucket matter.

The functions working on dictionaries are the readable reference; the
range queries at the bottom run the compiled kernel.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .induced_tree import InducedTree
from .window_kernel import ABOVE, BELOW, OUTSIDE, plausible_subtree, range_exact, window


def is_plausible(tree: InducedTree, v: int, d: int) -> bool:
    """Necessary condition for ``quasigap(v) <= 2d``.

    Occurrences with gaps at most ``2d`` must reach from below ``i+2d`` to
    above ``j-4d+1``, which needs ``2d*(count-1) >= N+2-6d``.
    """
    a = tree.arrays
    return (tree.first[v] < tree.i + 2 * d
            and tree.last[v] > tree.j - 4 * d + 1
            and 2 * d * int(a.hi[v] - a.lo[v]) >= tree.N + 2 - 4 * d)


def find_plausible(tree: InducedTree, d: int) -> list[int]:
    """Plausible nodes in preorder; they form a subtree containing the root."""
    kids = tree.children
    out = []
    stack = [0]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(c for c in reversed(kids[v]) if is_plausible(tree, c, d))
    return out


@dataclass
class ActiveLayout:
    """Active nodes (children first) and the leaf lists feeding buckets."""

    active: list[int]
    is_active: dict[int, bool]
    l1: dict[int, list[int]]
    l2: dict[int, list[int]]
    active_desc: dict[int, list[int]] = field(default_factory=dict)
    chain: dict[int, list[int]] = field(default_factory=dict)


def active_bound(d: int) -> int:
    """Most active nodes a ``[d, 2d]`` window can have.

    Plausible nodes without plausible children have disjoint leaf sets of
    at least ``max(1, (N+2-4d)/(2d))`` leaves each, so there are fewer than
    ``8d`` of them whatever ``N`` is; every other active node but the root
    branches, which at most doubles the count.
    """
    return 16 * d + 1


def find_active(tree: InducedTree, plausible: list[int], d: int) -> ActiveLayout:
    a = tree.arrays
    leaves, lo, hi = a.leaves, a.lo, a.hi
    kids = tree.children
    pset = set(plausible)
    pkids: dict[int, list[int]] = {}
    l1: dict[int, list[int]] = {}
    for v in plausible:
        pk = []
        own: list[int] = []
        if not kids[v]:
            own.append(leaves[lo[v]])
        for c in kids[v]:
            if c in pset:
                pk.append(c)
            else:
                own.extend(leaves[lo[c]:hi[c]])
        pkids[v] = pk
        l1[v] = own
    is_active = {v: v == 0 or len(pkids[v]) != 1 for v in plausible}

    # nearest active ancestor-or-self, top-down (plausible is in preorder)
    up: dict[int, int] = {}
    parent = a.parent
    l2: dict[int, list[int]] = {}
    active_desc: dict[int, list[int]] = {}
    for v in plausible:
        if is_active[v]:
            up[v] = v
            l2[v] = list(l1[v])
            active_desc[v] = []
            if v:
                active_desc[up[parent[v]]].append(v)
        else:
            up[v] = up[parent[v]]
            l2[up[v]].extend(l1[v])
    active = [v for v in reversed(plausible) if is_active[v]]
    if len(active) > active_bound(d):
        raise AssertionError(f"{len(active)} active nodes for d={d}")
    chain: dict[int, list[int]] = {}
    for v in active:
        path = []
        p = parent[v]
        while p >= 0 and not is_active[p]:
            path.append(p)
            p = parent[p]
        chain[v] = path
    return ActiveLayout(active, is_active, l1, l2, active_desc, chain)


class _Buckets:
    """Extreme elements per bucket with an undo log for peeling."""

    __slots__ = ("i", "d", "nb", "mn", "mx", "log", "ops")

    def __init__(self, i: int, d: int, nb: int, ops: Counter):
        self.i, self.d, self.nb = i, d, nb
        self.mn = [0] * nb
        self.mx = [-1] * nb
        self.log: list[tuple[int, int, int]] | None = None
        self.ops = ops

    def update(self, positions) -> None:
        i, d, mn, mx, log = self.i, self.d, self.mn, self.mx, self.log
        for p in positions:
            k = (p - i) // d
            lo, hi = mn[k], mx[k]
            if hi < 0:
                mn[k] = mx[k] = p
            elif p < lo:
                mn[k] = p
            elif p > hi:
                mx[k] = p
            else:
                continue
            if log is not None:
                log.append((k, lo, hi))
        self.ops["update_buckets"] += len(positions)

    def absorb(self, other: "_Buckets") -> None:
        mn, mx = self.mn, self.mx
        omn, omx = other.mn, other.mx
        for k in range(self.nb):
            h = omx[k]
            if h < 0:
                continue
            if mx[k] < 0:
                mn[k], mx[k] = omn[k], h
            else:
                if omn[k] < mn[k]:
                    mn[k] = omn[k]
                if h > mx[k]:
                    mx[k] = h
        self.ops["update_buckets"] += self.nb

    def cross_gap(self, cap: int) -> int:
        """Largest gap between consecutive non-empty buckets, capped."""
        mn, mx = self.mn, self.mx
        best = 0
        prev = -1
        for k in range(self.nb):
            h = mx[k]
            if h < 0:
                continue
            if prev >= 0 and mn[k] - prev > best:
                best = mn[k] - prev
            prev = h
        self.ops["bucket_scan"] += self.nb
        return min(best, cap)

    def local_gap(self, q: int, cap: int) -> int:
        """Largest cross gap touching bucket ``q`` after a change there.

        Elements exist on both sides of ``q``; a neighbour missing within two
        buckets therefore means a gap above ``2d``.
        """
        mn, mx = self.mn, self.mx
        self.ops["bucket_scan"] += 5
        left = q - 1 if q >= 1 and mx[q - 1] >= 0 else q - 2
        if left < 0 or mx[left] < 0:
            return cap
        right = q + 1 if q + 1 < self.nb and mx[q + 1] >= 0 else q + 2
        if right >= self.nb or mx[right] < 0:
            return cap
        if mx[q] < 0:
            return min(mn[right] - mx[left], cap)
        return min(max(mn[q] - mx[left], mn[right] - mx[q]), cap)


def restricted_maxgaps(tree: InducedTree, d: int, layout: ActiveLayout,
                       ops: Counter) -> dict[int, int]:
    """Cross-bucket maxgap of every plausible node, capped at ``2d+1``.

    A value below ``d`` means the true maxgap is below ``d``; a value in
    ``[d, 2d]`` is exact; ``2d+1`` means above ``2d``.
    """
    i, j, N = tree.i, tree.j, tree.N
    nb = (N + d - 1) // d
    cap = 2 * d + 1
    low_edge, high_edge = i + 2 * d, j - 4 * d + 1
    out: dict[int, int] = {}
    buckets: dict[int, _Buckets] = {}
    for v in layout.active:
        desc = layout.active_desc[v]
        if desc:
            b = buckets.pop(desc[0])
            for u in desc[1:]:
                b.absorb(buckets.pop(u))
        else:
            b = _Buckets(i, d, nb, ops)
        b.update(layout.l2[v])
        out[v] = b.cross_gap(cap)
        path = layout.chain[v]
        if path:
            # forward: grow through the regular chain, logging insertions
            b.log = []
            marks = []
            for p in path:
                marks.append(len(b.log))
                b.update(layout.l1[p])
            curr = b.cross_gap(cap)
            mn, mx, log = b.mn, b.mx, b.log
            for k in range(len(path) - 1, -1, -1):
                out[path[k]] = curr
                while len(log) > marks[k]:
                    q, lo, hi = log.pop()
                    removed = mn[q] if hi < 0 or mn[q] != lo else mx[q]
                    mn[q], mx[q] = lo, hi
                    if removed < low_edge or removed > high_edge:
                        curr = b.cross_gap(cap)
                    else:
                        g = b.local_gap(q, cap)
                        if g > curr:
                            curr = g
            b.log = None
        buckets[v] = b
    return out


def window_verdicts(tree: InducedTree, d: int, ops: Counter | None = None) -> dict[int, int]:
    """Verdicts for the plausible nodes of window ``[d, 2d]``; every other
    node is ``ABOVE``."""
    if d < 1:
        raise ValueError("window base must be positive")
    ops = Counter() if ops is None else ops
    plausible = find_plausible(tree, d)
    layout = find_active(tree, plausible, d)
    gaps = restricted_maxgaps(tree, d, layout, ops)
    i, j = tree.i, tree.j
    wlen, parent, first, last = tree.wlen, tree.parent, tree.first, tree.last
    two_d = 2 * d
    out = {}
    for v in plausible:
        if v == 0:
            out[v] = ABOVE
            continue
        g = gaps[v]
        if g > two_d:
            out[v] = ABOVE
            continue
        others = max(first[v] - i + 1, (j - last[v] + 1) // 2 + 1, wlen[parent[v]] + 1)
        length = wlen[v]
        if g >= d or others >= d:
            m = max(g, others)
            out[v] = ABOVE if m > length or m > two_d else m
        elif others > length:
            out[v] = ABOVE
        elif length >= d:
            out[v] = BELOW
        else:
            out[v] = OUTSIDE
    return out


def windows(l: int, r: int) -> list[int]:
    """Window bases ``l, 2l, 4l, ...`` whose windows cover ``[l, r]``."""
    if l < 1:
        raise ValueError("range must start at 1 or above")
    r = max(r, l)
    out = [l]
    while 2 * out[-1] < r:
        out.append(2 * out[-1])
    return out


class _Scratch:
    """Work arrays for the window kernels, allocated with numpy so that the
    large ones get its huge-page advice."""

    def __init__(self, tree: InducedTree, buckets: int):
        idx = tree.arrays.leaves.dtype
        size = tree.size
        (self.nodes, self.lpar, self.cstart, self.pk, self.up, self.slot, self.gap,
         self.chain, self.marks) = (np.empty(size, dtype=idx) for _ in range(9))
        self.flags = np.empty(size, dtype=np.int8)
        self.log = np.empty(3 * tree.N, dtype=idx)
        self.bk = np.empty(buckets, dtype=idx)


def window_array(tree: InducedTree, d: int, ops: Counter | None = None) -> np.ndarray:
    """Compiled equivalent of :func:`window_verdicts`, one entry per node."""
    if d < 1:
        raise ValueError("window base must be positive")
    t = tree.packed()
    kid_ptr, kids = tree.arrays.children_csr()
    w = _Scratch(tree, 0)
    cnt, nslots = plausible_subtree(d, tree.i, tree.j, kid_ptr, kids, t.lo, t.hi, t.first,
                                    t.last, w.nodes, w.lpar, w.cstart, w.pk, w.flags, w.up)
    nactive = int(np.count_nonzero(w.flags[:cnt] & 1))
    if nactive > active_bound(d):
        raise AssertionError(f"{nactive} active nodes for d={d}")
    bk = np.full(2 * nslots * (-(-tree.N // d)), -1, dtype=w.bk.dtype)
    out = np.full(tree.size, ABOVE, dtype=np.int64)
    counts = np.zeros(2, dtype=np.int64)
    window(d, tree.i, tree.j, t.parent, t.lo, t.hi, t.leaves, t.first, t.last, t.wlen, cnt,
           w.nodes, w.lpar, w.cstart, w.pk, w.flags, w.up, w.slot, w.gap, w.chain, w.marks,
           w.log, bk, out, False, counts)
    if ops is not None:
        ops["update_buckets"] += int(counts[0])
        ops["bucket_scan"] += int(counts[1])
    return out


def compute_in_range(tree: InducedTree, l: int, r: int,
                     ops: Counter | None = None) -> np.ndarray:
    """Verdict per node for the range ``[l, r]`` (``r`` rounded up to ``l``
    times a power of two)."""
    per = [window_array(tree, d, ops) for d in windows(l, r)]
    stack = np.vstack(per)
    exact = np.where(stack > 0, stack, 0)
    found = exact.max(axis=0)
    low = np.where(stack > 0, stack, found.max() + 1).min(axis=0)
    clash = (found > 0) & (low != found)
    if clash.any():
        v = int(np.flatnonzero(clash)[0])
        raise AssertionError(f"conflicting exact values {stack[:, v].tolist()} at node {v}")
    out = np.where(per[-1] == ABOVE, ABOVE, OUTSIDE)
    out = np.where(per[0] == BELOW, BELOW, out)
    return np.where(found > 0, found, out)


def exact_in_range(tree: InducedTree, l: int, r: int,
                   ops: Counter | None = None) -> np.ndarray:
    """Exact values found for ``[l, r]`` per node, ``0`` where none."""
    if l < 1:
        raise ValueError("range must start at 1 or above")
    found = np.zeros(tree.size, dtype=np.int64)
    t = tree.packed()
    kid_ptr, kids = tree.arrays.children_csr()
    w = _Scratch(tree, 16 * tree.N + 16)
    counts = np.zeros(2, dtype=np.int64)
    range_exact(l, max(r, l), tree.i, tree.j, kid_ptr, kids, t.parent, t.lo, t.hi, t.leaves,
                t.first, t.last, t.wlen, w.nodes, w.lpar, w.cstart, w.pk, w.flags, w.up,
                w.slot, w.gap, w.chain, w.marks, w.log, w.bk, found, counts)
    if ops is not None:
        ops["update_buckets"] += int(counts[0])
        ops["bucket_scan"] += int(counts[1])
    return found
