"""Global suffix structures: suffix array, LCP, suffix tree, LCA and LCE.

Positions exposed by this module are 1-based, matching the rest of the
package.  Internally the text is a list of positive integers with ``0``
reserved for the end-marker ``#``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .kernels import build_trie, children_csr, kasai, sais

END_MARKER = 0


class Text:
    """An input word over an integer alphabet.

    ``symbols`` holds the remapped alphabet (values ``1..sigma``) so that
    the end-marker ``0`` is strictly smaller than every letter.
    """

    def __init__(self, data: bytes | str | Sequence[int], *, tokens: bool = False):
        if isinstance(data, str):
            data = data.encode("utf-8") if not tokens else [ord(c) for c in data]
        raw = list(data)
        if not raw:
            raise ValueError("empty text")
        if tokens or not isinstance(data, (bytes, bytearray)):
            if any((not isinstance(c, int)) or c < 0 for c in raw):
                raise ValueError("symbols must be non-negative integers")
            alphabet = sorted(set(raw))
            rank = {c: k + 1 for k, c in enumerate(alphabet)}
            self.symbols = [rank[c] for c in raw]
            self.alphabet = alphabet
        else:
            # bytes keep their natural order; shift by one to free 0
            self.symbols = [c + 1 for c in raw]
            self.alphabet = list(range(256))
        self.raw = raw
        self.n = len(raw)
        self.sigma = max(self.symbols) + 1

    def __len__(self) -> int:
        return self.n

    def slice(self, start: int, end: int) -> "Text":
        """The subword ``w[start..end]`` as a text with the same alphabet."""
        sub = object.__new__(Text)
        sub.raw = self.raw[start - 1:end]
        sub.symbols = self.symbols[start - 1:end]
        sub.alphabet = self.alphabet
        sub.n = len(sub.raw)
        sub.sigma = self.sigma
        if sub.n == 0:
            raise ValueError("empty text")
        return sub

    def __getitem__(self, pos: int) -> int:
        """Symbol at 1-based ``pos``."""
        return self.symbols[pos - 1]

    def word(self, start: int, length: int) -> list[int]:
        """Raw symbols of ``w[start .. start+length-1]``."""
        return self.raw[start - 1:start - 1 + length]

    def render(self, start: int, length: int) -> str:
        part = self.word(start, length)
        if all(isinstance(c, int) and 32 <= c < 127 for c in part) and self.alphabet == list(range(256)):
            return bytes(part).decode("ascii")
        return " ".join(str(c) for c in part)


# ---------------------------------------------------------------- suffix array


def _doubling(s: np.ndarray) -> np.ndarray:
    """Prefix-doubling construction, O(n log n); vectorised fallback."""
    n = len(s)
    rank = np.asarray(s, dtype=np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:] if k < n else second[:0]
        sa = np.lexsort((second, rank))
        key_r, key_s = rank[sa], second[sa]
        diff = np.empty(n, dtype=np.int64)
        diff[0] = 0
        diff[1:] = (key_r[1:] != key_r[:-1]) | (key_s[1:] != key_s[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(diff)
        rank = new
        if new.max() == n - 1:
            return sa
        k *= 2


def build_suffix_array(text: Text, *, method: str = "sais") -> tuple[np.ndarray, np.ndarray]:
    """Suffix array and LCP array of ``w#``.

    Returns 1-based start positions in lexicographic order (the bare ``#``
    suffix, position ``n+1``, comes first) and ``lcp`` where ``lcp[r]`` is
    the longest common prefix of the suffixes at ranks ``r-1`` and ``r``
    (``lcp[0] = 0``), both as ``int64`` arrays.
    """
    if text.n == 0:
        raise ValueError("empty text")
    s = np.asarray(text.symbols + [END_MARKER], dtype=np.int64)
    if method == "sais":
        sa0 = sais(s, text.sigma)
    elif method == "doubling":
        sa0 = _doubling(s)
    else:
        raise ValueError(f"unknown suffix array method {method!r}")
    return sa0 + 1, kasai(s, sa0)


# ---------------------------------------------------------------------- RMQ


class SparseTable:
    """Range-minimum with argmin over a static integer array (numpy)."""

    def __init__(self, values: Sequence[int]):
        arr = np.asarray(values, dtype=np.int64)
        self.size = len(arr)
        idx = np.arange(self.size, dtype=np.int64)
        # pack (value, index) so min() also yields the leftmost argmin
        self._shift = max(1, self.size).bit_length()
        level = (arr << self._shift) | idx
        self.levels = [level]
        width = 1
        while 2 * width <= self.size:
            prev = self.levels[-1]
            self.levels.append(np.minimum(prev[:-width], prev[width:]))
            width *= 2

    def argmin_many(self, lo, hi) -> np.ndarray:
        """Leftmost argmin of ``values[lo..hi]`` (inclusive), vectorised."""
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if lo.size == 0:
            return lo
        span = hi - lo + 1
        k = np.zeros_like(span)
        nz = span > 0
        k[nz] = np.floor(np.log2(span[nz])).astype(np.int64)
        # guard against log2 rounding at exact powers of two
        k = np.where((1 << (k + 1)) <= span, k + 1, k)
        k = np.where((1 << k) > span, k - 1, k)
        out = np.empty_like(lo)
        for lev in np.unique(k):
            sel = k == lev
            table = self.levels[lev]
            a = table[lo[sel]]
            b = table[hi[sel] - (1 << lev) + 1]
            out[sel] = np.minimum(a, b)
        return out & ((1 << self._shift) - 1)

    def argmin(self, lo: int, hi: int) -> int:
        lo, hi = int(lo), int(hi)
        if not 0 <= lo <= hi < self.size:
            raise IndexError(f"range [{lo}, {hi}] outside table of size {self.size}")
        k = (hi - lo + 1).bit_length() - 1
        table = self.levels[k]
        v = min(int(table[lo]), int(table[hi - (1 << k) + 1]))
        return v & ((1 << self._shift) - 1)

    def min(self, lo: int, hi: int) -> int:
        lo, hi = int(lo), int(hi)
        k = (hi - lo + 1).bit_length() - 1
        table = self.levels[k]
        return min(int(table[lo]), int(table[hi - (1 << k) + 1])) >> self._shift


# ------------------------------------------------------------- compact tries


@dataclass
class TreeArrays:
    """Compacted trie over a lexicographically sorted list of suffixes.

    Node 0 is the root.  ``depth`` is the string depth including the
    end-marker for leaves; ``wlen`` is the length of the longest real
    subword spelled at the node (the end-marker excluded).  Leaves of the
    subtree of ``v`` are ``leaves[lo[v]:hi[v]]``.  ``post`` lists node ids
    children first.  ``bnode[r]`` (``r >= 1``) is the lowest common
    ancestor of the leaves at ranks ``r-1`` and ``r``.  All fields are
    integer arrays of type ``index_dtype(n)``; nodes are numbered breadth
    first, so parents precede children and siblings are consecutive.
    """

    leaves: np.ndarray
    lcp: np.ndarray
    depth: np.ndarray
    wlen: np.ndarray
    parent: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    leaf_of: np.ndarray
    post: np.ndarray
    bnode: np.ndarray
    _csr: tuple | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.depth)

    def is_leaf(self, v: int) -> bool:
        return self.hi[v] - self.lo[v] == 1 and self.leaf_of[self.lo[v]] == v

    def children_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(ptr, kids)``: children of ``v`` are ``kids[ptr[v]:ptr[v+1]]``,
        ordered by their leaf ranges."""
        if self._csr is None:
            self._csr = children_csr(self.parent, self.lo, len(self.leaves))
        return self._csr

    def children(self) -> list[list[int]]:
        ptr, kids = self.children_csr()
        flat = kids.tolist()
        bounds = ptr.tolist()
        return [flat[bounds[v]:bounds[v + 1]] for v in range(self.size)]


def index_dtype(n: int) -> type:
    """Narrowest integer type holding node ids and positions for length ``n``."""
    return np.int32 if 2 * n + 2 < 2**31 else np.int64


def build_tree_arrays(leaves: Sequence[int], lcp: Sequence[int], n: int) -> TreeArrays:
    """Compacted trie of ``w[p..n]#`` for ``p`` in ``leaves`` (already
    sorted); ``lcp[r]`` is the lce of ranks ``r-1, r``."""
    dt = index_dtype(n)
    leaves = np.asarray(leaves, dtype=dt)
    lcp = np.asarray(lcp, dtype=dt)
    if len(leaves) == 0:
        raise ValueError("no suffixes")
    parts = build_trie(leaves, lcp, n)
    return TreeArrays(leaves, lcp, *parts)


@dataclass
class SuffixTree:
    """Suffix tree of ``w#`` including the leaf of the bare ``#`` suffix."""

    text: Text
    sa: np.ndarray
    lcp: np.ndarray
    arrays: TreeArrays

    @property
    def size(self) -> int:
        return self.arrays.size

    def leaf(self, pos: int) -> int:
        """Node id of the leaf annotated ``pos`` (``n+1`` is the ``#`` leaf)."""
        if not 1 <= pos <= self.text.n + 1:
            raise KeyError(pos)
        return int(self.arrays.leaf_of[self.rank[pos]])

    def __post_init__(self):
        self.rank = np.zeros(len(self.sa) + 1, dtype=np.int64)
        self.rank[self.sa] = np.arange(len(self.sa))

    def spell(self, v: int) -> list[int]:
        """Symbols on the root-to-``v`` path, end-marker included as ``None``."""
        a = self.arrays
        p = a.leaves[a.lo[v]]
        out: list[int | None] = list(self.text.raw[p - 1:p - 1 + a.wlen[v]])
        if a.depth[v] > a.wlen[v]:
            out.append(None)
        return out


def build_suffix_tree(text: Text, *, method: str = "sais") -> SuffixTree:
    sa, lcp = build_suffix_array(text, method=method)
    arrays = build_tree_arrays(sa, lcp, text.n)
    return SuffixTree(text=text, sa=sa, lcp=lcp, arrays=arrays)


# ---------------------------------------------------------------- LCA / LCE


class LcaIndex:
    """Euler tour plus sparse-table RMQ over tour depths."""

    def __init__(self, parent: Sequence[int], depth: Sequence[int] | None = None):
        size = len(parent)
        kids: list[list[int]] = [[] for _ in range(size)]
        root = -1
        for v, p in enumerate(parent):
            if p < 0:
                root = v
            else:
                kids[p].append(v)
        if root < 0:
            raise ValueError("no root")
        level = [0] * size
        tour: list[int] = []
        tour_level: list[int] = []
        self.first = [-1] * size
        stack = [(root, 0)]
        while stack:
            v, k = stack.pop()
            if k == 0:
                self.first[v] = len(tour)
            tour.append(v)
            tour_level.append(level[v])
            if k < len(kids[v]):
                stack.append((v, k + 1))
                c = kids[v][k]
                level[c] = level[v] + 1
                stack.append((c, 0))
        self.tour = tour
        self.size = size
        self._rmq = SparseTable(tour_level)

    def lca(self, a: int, b: int) -> int:
        if not (0 <= a < self.size and 0 <= b < self.size):
            raise KeyError(f"unknown node id {a if not 0 <= a < self.size else b}")
        x, y = self.first[a], self.first[b]
        if x > y:
            x, y = y, x
        return self.tour[self._rmq.argmin(x, y)]


class LceIndex:
    """Longest common extension of two suffixes of the text in O(1)."""

    def __init__(self, text: Text, sa: np.ndarray | None = None, lcp: np.ndarray | None = None):
        if sa is None or lcp is None:
            sa, lcp = build_suffix_array(text)
        self.n = text.n
        self.rank = np.zeros(text.n + 2, dtype=np.int64)
        self.rank[np.asarray(sa)] = np.arange(len(sa))
        self._rmq = SparseTable(lcp)

    def lce(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"positions ({i}, {j}) outside [1..{self.n}]")
        if i == j:
            return self.n - i + 1
        a, b = int(self.rank[i]), int(self.rank[j])
        if a > b:
            a, b = b, a
        return self._rmq.min(a + 1, b)
