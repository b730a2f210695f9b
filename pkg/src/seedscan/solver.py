"""All quasigaps of a text by recursion over working intervals, and the
seeds derived from them.

A seed is a quasiseed whose two ends can be completed by overhanging
occurrences; quasigaps describe every quasiseed as a range of lengths on
one suffix tree edge, so the seeds are the lengths of those ranges that
also pass the two end checks.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .factorization import factor_arrays, middle_factor_count
from .induced_tree import InducedTree, induce_root_tree, leaf_orders, subtree_at
from .kernels import base_paths
from .merge_engine import child_paths, merge_paths
from .quasigap import INF, brute_quasigaps
from .range_engine import exact_in_range
from .staircase import RELEASE, Params, reduce_bounds, staircase_bounds
from .text_index import SparseTable, Text, build_suffix_tree


class InvariantError(AssertionError):
    """A size or range bound that should hold at every recursion level failed."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def large_ranges(N: int, g: int, m: int, delta: int) -> list[tuple[int, int]]:
    """Value ranges holding every quasigap above ``m``.

    Nothing lies strictly between ``2N/g`` and ``delta``, so two ranges
    suffice; without middle factors the whole range is searched.
    """
    if g == 0:
        return [(1, N)]
    out = [(max(m, 1), min(_ceil_div(2 * N, g), N))]
    out.append((max(delta, 1), N))
    return [(l, r) for l, r in out if l <= r]


def _solve(tree: InducedTree, params: Params, ops: Counter, debug: bool,
           stats: list | None) -> np.ndarray:
    N = tree.N
    if N <= params.n0:
        ops["base"] += N
        return np.asarray(brute_quasigaps(tree), dtype=np.int64)
    interval = (tree.i, tree.j)
    factors = factor_arrays(tree)
    ops["factorize"] += N
    delta = params.delta(N)
    g = middle_factor_count(factors, interval, delta)
    m = params.step(N, g)
    release = params.is_release
    if debug and release and m > 0 and g < 3:
        raise InvariantError(f"only {g} middle factors at N={N}")

    found = np.zeros(tree.size, dtype=np.int64)
    for l, r in large_ranges(N, g, m, delta):
        np.maximum(found, exact_in_range(tree, l, r, ops), out=found)

    record = {"N": N, "g": g, "m": m, "delta": delta, "factors": len(factors[0])}
    if m > 0:
        wa, wb = staircase_bounds(interval, m)
        keep = reduce_bounds(wa, wb, factors[0], factors[1], m, tree.j)
        work = list(zip(wa[keep].tolist(), wb[keep].tolist()))
        size = int((wb[keep] - wa[keep] + 1).sum())
        record.update(staircase=len(wa), reduced=len(work), work=size)
        if debug and release and size > params.work_bound(N):
            raise InvariantError(f"working intervals cover {size} of {N}")
        if any(b - a + 1 >= N for a, b in work):
            # only reachable with scaled-down constants
            ops["fallback"] += 1
            return np.asarray(brute_quasigaps(tree), dtype=np.int64)
        nodes, values = _merge_children(tree, work, params, m, ops, debug, stats)
        if debug:
            clash = (found[nodes] > 0) & (found[nodes] != values)
            if clash.any():
                v = int(nodes[np.flatnonzero(clash)[0]])
                raise InvariantError(f"merge and range search disagree at node {v}")
        found[nodes] = values
    if stats is not None:
        stats.append(record)

    if debug and g > 0 and delta > 2 * N // g:
        lo = 2 * N // g + 1
        band = exact_in_range(tree, lo, delta, Counter())
        hits = band[(band >= lo) & (band <= delta)]
        if hits.size:
            raise InvariantError(f"quasigap {hits[0]} inside the skipped band")

    return np.where(found > 0, found, INF)


def _merge_children(tree: InducedTree, work: list[tuple[int, int]], params: Params, m: int,
                    ops: Counter, debug: bool, stats: list | None) -> tuple[np.ndarray, np.ndarray]:
    """Solve the working intervals and merge their small quasigaps.

    Intervals at or below the base size are solved in one compiled batch;
    the others are extracted as trees and solved recursively.
    """
    orders = leaf_orders(tree, work)
    lengths = orders.ends - orders.starts + 1
    small = np.flatnonzero(lengths <= params.n0)
    plcp, _ = tree.block_rmq()
    a = tree.arrays
    parts = [base_paths(small, orders.starts, orders.ends, orders.ptr, orders.ranks,
                        orders.arg, a.leaves, plcp, a.leaf_of, a.bnode, tree.n, m + 1)]
    built = parts[0][3]
    ops["base"] += int(lengths[small].sum())
    for x in np.flatnonzero(lengths > params.n0).tolist():
        child = subtree_at(tree, orders, x)
        built += child.size
        parts.append(child_paths(child, _solve(child, params, ops, debug, stats), m))
    ops["extract"] += tree.N + int(orders.ptr[-1]) + built
    pv = np.concatenate([p[0] for p in parts])
    pu = np.concatenate([p[1] for p in parts])
    pw = np.concatenate([p[2] for p in parts])
    return merge_paths(tree, pv, pu, pw, len(work), m, ops)


def solve_tree(tree: InducedTree, params: Params = RELEASE, *, debug: bool = False,
               ops: Counter | None = None, stats: list | None = None) -> list[int]:
    """Quasigap of every node of ``tree`` in its interval (root: ``INF``)."""
    ops = Counter() if ops is None else ops
    out = _solve(tree, params, ops, debug, stats).tolist()
    out[0] = INF
    return out


# ------------------------------------------------------------------ analysis


def _z_array(s: Sequence[int]) -> list[int]:
    n = len(s)
    z = [0] * n
    if n:
        z[0] = n
    left = right = 0
    for k in range(1, n):
        if k < right:
            z[k] = min(right - k, z[k - left])
        while k + z[k] < n and s[z[k]] == s[k + z[k]]:
            z[k] += 1
        if k + z[k] > right:
            left, right = k, k + z[k]
    return z


@dataclass(frozen=True)
class CandidateSet:
    """Quasiseeds on one edge: prefixes of ``w[start..]`` with lengths in
    ``[lo..hi]``; ``first``/``last`` are the class's extreme occurrences."""

    node: int
    start: int
    lo: int
    hi: int
    first: int
    last: int


@dataclass(frozen=True)
class SeedRange:
    node: int
    start: int
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass
class SeedSet:
    """All seeds as length ranges of suffix tree edges."""

    text: Text
    ranges: list[SeedRange] = field(default_factory=list)

    def __len__(self) -> int:
        return sum(len(r) for r in self.ranges)

    def count(self) -> int:
        return len(self)

    def shortest(self) -> tuple[int, int]:
        """``(start, length)`` of a shortest seed."""
        r = min(self.ranges, key=lambda r: (r.lo, r.start))
        return r.start, r.lo

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for r in sorted(self.ranges, key=lambda r: (r.lo, r.start)):
            for length in range(r.lo, r.hi + 1):
                yield r.start, length

    def words(self) -> set[tuple[int, ...]]:
        return {tuple(self.text.word(s, k)) for s, k in self}

    def strings(self) -> set[str]:
        return {self.text.render(s, k) for s, k in self}


class Analysis:
    """Index and quasigaps of one text; every query below reuses them."""

    def __init__(self, text: Text | bytes | str, params: Params = RELEASE, *,
                 debug: bool = False, method: str = "sais"):
        self.text = text if isinstance(text, Text) else Text(text)
        if self.text.n == 0:
            raise ValueError("empty text")
        self.params = params
        self.debug = debug
        self.suffix_tree = build_suffix_tree(self.text, method=method)
        self.tree = induce_root_tree(self.suffix_tree)
        self.ops: Counter = Counter()
        self.stats: list[dict] = []
        self._values: list[int] | None = None
        self._seeds: SeedSet | None = None

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def values(self) -> list[int]:
        if self._values is None:
            self._values = solve_tree(self.tree, self.params, debug=self.debug,
                                      ops=self.ops, stats=self.stats)
        return self._values

    def nodes(self) -> Iterator[int]:
        """Nodes spelling a class: everything but the root and the leaves
        that coincide with their parent."""
        wlen, parent = self.tree.wlen, self.tree.parent
        for v in range(1, self.tree.size):
            if wlen[v] > wlen[parent[v]]:
                yield v

    def quasigap_map(self) -> dict[tuple[int, int], int]:
        """``(start, length)`` of each class's longest word -> quasigap."""
        vals = self.values
        return {self.tree.word_key(v): vals[v] for v in self.nodes()}

    def candidate_sets(self) -> list[CandidateSet]:
        vals, t = self.values, self.tree
        out = []
        for v in self.nodes():
            if vals[v] < INF:
                start, length = t.word_key(v)
                out.append(CandidateSet(v, start, vals[v], length, t.first[v], t.last[v]))
        return out

    # -- border check ------------------------------------------------------

    def _border_tables(self):
        if not hasattr(self, "_left_rmq"):
            s = self.text.symbols
            n = self.n
            z = _z_array(s)
            # reach[p] = p + lce(1, p), 1-based, with p = n + 1 reaching n + 1
            reach = [0] * (n + 2)
            for p in range(2, n + 1):
                reach[p] = p + z[p - 1]
            reach[n + 1] = n + 1
            zr = _z_array(s[::-1])
            # tail[r] = B[r] - r, B[r] = common suffix length of w[1..r] and w
            tail = [-(n + 2)] * (n + 1)
            for r in range(1, n + 1):
                tail[r] = zr[n - r] - r
            self._reach = np.asarray(reach, dtype=np.int64)
            self._tail = np.asarray(tail, dtype=np.int64)
            self._left_rmq = SparseTable(-self._reach)
            self._right_rmq = SparseTable(-self._tail)
        return self._left_rmq, self._right_rmq

    def border_ok(self, first, last, length) -> np.ndarray:
        """Vectorised end checks for words of the given lengths whose first
        and last occurrences are ``first`` and ``last``."""
        left_rmq, right_rmq = self._border_tables()
        n = self.n
        i1 = np.asarray(first, dtype=np.int64)
        ik = np.asarray(last, dtype=np.int64)
        ell = np.asarray(length, dtype=np.int64)
        # left: some p in [i1+1 .. ell+1] has p + lce(1, p) >= i1 + ell
        lo, hi = i1 + 1, ell + 1
        has = lo <= hi
        idx = left_rmq.argmin_many(np.where(has, lo, 0), np.where(has, hi, 0))
        left = (i1 == 1) | (has & (self._reach[idx] >= i1 + ell))
        # right: some r in [ik-1+max(1, n-ik-ell+1) .. ik+ell-2] has B[r]-r >= 1-ik
        lo = ik - 1 + np.maximum(1, n - ik - ell + 1)
        hi = ik + ell - 2
        has = lo <= hi
        idx = right_rmq.argmin_many(np.where(has, lo, 1), np.where(has, hi, 1))
        right = (ik + ell - 1 >= n) | (has & (self._tail[idx] >= 1 - ik))
        return left & right

    def is_border_seed(self, candidate: CandidateSet, length: int) -> bool:
        if not candidate.lo <= length <= candidate.hi:
            raise ValueError(f"length {length} outside [{candidate.lo}..{candidate.hi}]")
        return bool(self.border_ok([candidate.first], [candidate.last], [length])[0])

    # -- seeds -------------------------------------------------------------

    def all_seeds(self) -> SeedSet:
        if self._seeds is None:
            cands = self.candidate_sets()
            ranges: list[SeedRange] = []
            if cands:
                spans = np.array([c.hi - c.lo + 1 for c in cands], dtype=np.int64)
                owner = np.repeat(np.arange(len(cands)), spans)
                offs = np.arange(len(owner)) - np.repeat(np.cumsum(spans) - spans, spans)
                lo = np.array([c.lo for c in cands], dtype=np.int64)
                first = np.array([c.first for c in cands], dtype=np.int64)
                last = np.array([c.last for c in cands], dtype=np.int64)
                ell = lo[owner] + offs
                ok = self.border_ok(first[owner], last[owner], ell)
                run_start = None
                for k in np.flatnonzero(ok).tolist() + [None]:
                    if run_start is not None and (k is None or owner[k] != owner[prev]
                                                  or ell[k] != ell[prev] + 1):
                        c = cands[owner[run_start]]
                        ranges.append(SeedRange(c.node, c.start, int(ell[run_start]),
                                                int(ell[prev])))
                        run_start = None
                    if k is not None:
                        if run_start is None:
                            run_start = k
                        prev = k
            self._seeds = SeedSet(self.text, ranges)
        return self._seeds

    def shortest_seed(self) -> tuple[int, int]:
        return self.all_seeds().shortest()


# ------------------------------------------------------------ module API


def _analysis(text, params: Params = RELEASE, debug: bool = False) -> Analysis:
    return text if isinstance(text, Analysis) else Analysis(text, params, debug=debug)


def all_quasigaps(text, params: Params = RELEASE, *, debug: bool = False) -> dict[tuple[int, int], int]:
    return _analysis(text, params, debug).quasigap_map()


def candidate_sets(text, params: Params = RELEASE) -> list[CandidateSet]:
    return _analysis(text, params).candidate_sets()


def all_seeds(text, params: Params = RELEASE, *, debug: bool = False) -> SeedSet:
    return _analysis(text, params, debug).all_seeds()


def shortest_seed(text, params: Params = RELEASE) -> tuple[int, int]:
    """``(start, length)`` of a shortest seed; the text itself always is one."""
    return _analysis(text, params).shortest_seed()


# ------------------------------------------------------------ predicates


def _symbols(x) -> list:
    if isinstance(x, Text):
        return list(x.raw)
    if isinstance(x, str):
        return list(x.encode())
    return list(x)


def _occurrences(v: list, w: list) -> list[int]:
    k = len(v)
    z = _z_array(v + [object()] + w)
    return [p + 1 for p in range(len(w) - k + 1) if z[k + 1 + p] >= k]


def _spread(v: list, w: list) -> tuple[list[int], bool]:
    """Occurrences of ``v`` and whether consecutive ones leave no hole."""
    occ = _occurrences(v, w)
    k = len(v)
    return occ, all(b - a <= k for a, b in zip(occ, occ[1:]))


def is_cover(v, w) -> bool:
    v, w = _symbols(v), _symbols(w)
    if not v:
        return False
    occ, tight = _spread(v, w)
    return bool(occ) and tight and occ[0] == 1 and occ[-1] + len(v) - 1 == len(w)


def is_quasiseed(v, w) -> bool:
    v, w = _symbols(v), _symbols(w)
    k, n = len(v), len(w)
    if not k:
        return False
    occ, tight = _spread(v, w)
    return bool(occ) and tight and occ[0] - 1 < k and n - (occ[-1] + k - 1) < k


def is_seed(v, w) -> bool:
    v, w = _symbols(v), _symbols(w)
    if not is_quasiseed(v, w):
        return False
    k, n = len(v), len(w)
    occ = _occurrences(v, w)
    i1, ik = occ[0], occ[-1]
    left = i1 == 1
    if not left:
        # a suffix of v of length t in [i1-1 .. k-1] is a prefix of w
        z = _z_array(w + [object()] + v)
        left = any(z[n + 1 + q] >= k - q for q in range(1, k - i1 + 2))
    right = ik + k - 1 >= n
    if not right:
        # a prefix of v of length s in [n-ik-k+1 .. k-1] is a suffix of w
        z = _z_array(v + [object()] + w)
        right = any(z[k + n + 1 - s] >= s for s in range(max(1, n - ik - k + 1), k))
    return left and right
