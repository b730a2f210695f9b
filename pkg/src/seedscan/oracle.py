"""Brute-force reference implementations.

Everything here works straight from the definitions and is deliberately
slow.  Nothing in this module imports the fast paths.
"""
from __future__ import annotations

from typing import Sequence

MAX_N = 4096
INFINITE = float("inf")


def _word(w) -> tuple:
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def _guard(n: int) -> None:
    if n > MAX_N:
        raise ValueError(f"oracle refuses inputs longer than {MAX_N} (got {n})")


def occurrences(v, w) -> list[int]:
    """1-based start positions of ``v`` in ``w``."""
    v, w = _word(v), _word(w)
    k = len(v)
    return [p + 1 for p in range(len(w) - k + 1) if w[p:p + k] == v]


def brute_is_cover(v, w) -> bool:
    v, w = _word(v), _word(w)
    _guard(len(w))
    covered = [False] * len(w)
    for p in occurrences(v, w):
        for q in range(p - 1, p - 1 + len(v)):
            covered[q] = True
    return len(v) >= 1 and all(covered)


def brute_is_seed(v, w) -> bool:
    """``v`` occurs in ``w`` and every position of ``w`` lies under some
    (possibly overhanging) placement of ``v`` that agrees with ``w``."""
    v, w = _word(v), _word(w)
    n, k = len(w), len(v)
    _guard(n)
    if k < 1 or not occurrences(v, w):
        return False
    covered = [False] * n
    for p in range(2 - k, n + 1):
        ok = True
        for x in range(k):
            q = p + x
            if 1 <= q <= n and w[q - 1] != v[x]:
                ok = False
                break
        if ok:
            for q in range(max(p, 1), min(p + k - 1, n) + 1):
                covered[q - 1] = True
    return all(covered)


def brute_is_quasiseed(v, w) -> bool:
    """Some ``w = xyz`` with ``|x|, |z| < |v|`` has ``v`` covering ``y``."""
    v, w = _word(v), _word(w)
    n, k = len(w), len(v)
    _guard(n)
    if k < 1 or not occurrences(v, w):
        return False
    for a in range(k):
        for c in range(k):
            y = w[a:n - c]
            if len(y) >= k and brute_is_cover(v, y):
                return True
    return False


def distinct_subwords(w) -> set[tuple]:
    w = _word(w)
    return {w[a:b] for a in range(len(w)) for b in range(a + 1, len(w) + 1)}


def equivalence_classes(w) -> dict[tuple, list[tuple]]:
    """Subwords grouped by their occurrence-start sets, keyed by the longest."""
    w = _word(w)
    _guard(len(w))
    groups: dict[tuple, list[tuple]] = {}
    for v in distinct_subwords(w):
        groups.setdefault(tuple(occurrences(v, w)), []).append(v)
    return {max(g, key=len): sorted(g, key=len) for g in groups.values()}


def brute_quasigap_map(w) -> dict[tuple, float]:
    """Longest word of each class -> length of its shortest equivalent
    quasiseed, or infinity."""
    out = {}
    for longest, members in equivalence_classes(w).items():
        value = INFINITE
        for v in members:
            if brute_is_quasiseed(v, w):
                value = len(v)
                break
        out[longest] = value
    return out


def brute_all_seeds(w) -> set[tuple]:
    return {v for v in distinct_subwords(w) if brute_is_seed(v, w)}


def brute_maxgap(xs: Sequence[int]) -> int:
    best = 0
    for a in xs:
        above = [b for b in xs if b > a]
        if above:
            best = max(best, min(above) - a)
    return best


def naive_tree_path(parent: Sequence[int], paths) -> tuple[list, list]:
    """Per-node max (``None`` when uncovered) and sum over paths ``(v, u, wt)``
    running from ``v`` up to, but excluding, its ancestor ``u``."""
    size = len(parent)
    best: list = [None] * size
    total = [0] * size
    for v, u, wt in paths:
        x = v
        while x != u:
            if x < 0:
                raise ValueError(f"{u} is not an ancestor of {v}")
            best[x] = wt if best[x] is None else max(best[x], wt)
            total[x] += wt
            x = parent[x]
    return best, total


def brute_minimal_cover_count(v, w) -> int:
    """Fewest occurrences of ``v`` whose union is all of ``w`` (``-1`` if
    ``v`` is not a cover)."""
    v, w = _word(v), _word(w)
    n, k = len(w), len(v)
    occ = occurrences(v, w)
    # best[e] = fewest occurrences covering exactly w[1..e] contiguously
    best = {0: 0}
    for p in occ:
        reach = [best[e] for e in best if e >= p - 1]
        if reach:
            e = p + k - 1
            best[e] = min(best.get(e, n + 1), min(reach) + 1)
    return best.get(n, -1)


def naive_lpnf(w, start: int = 1, end: int | None = None) -> list[int]:
    """Longest prefix of ``w[p..end]`` occurring inside ``w[start..p-1]``."""
    w = _word(w)
    end = len(w) if end is None else end
    out = []
    for p in range(start, end + 1):
        best = 0
        for length in range(1, end - p + 2):
            pat = w[p - 1:p - 1 + length]
            if pat in {w[q - 1:q - 1 + length] for q in range(start, p - length + 1)}:
                best = length
            else:
                break
        out.append(best)
    return out


def naive_factorize(w, start: int = 1, end: int | None = None) -> list[tuple[int, int]]:
    w = _word(w)
    end = len(w) if end is None else end
    table = naive_lpnf(w, start, end)
    out = []
    p = start
    while p <= end:
        length = max(1, table[p - start])
        out.append((p, length))
        p += length
    return out


def min_factorization_size(w) -> int:
    """Fewest factors over all valid factorizations (each factor a single
    letter or a subword of the concatenation of the earlier factors)."""
    w = _word(w)
    n = len(w)
    best = [0] + [n + 1] * n
    for k in range(n):
        prefix = w[:k]
        for e in range(k + 1, n + 1):
            f = w[k:e]
            if e - k == 1 or any(prefix[q:q + len(f)] == f for q in range(k - len(f) + 1)):
                best[e] = min(best[e], best[k] + 1)
    return best[n]


def naive_induced_nodes(w, interval: tuple[int, int]) -> set[tuple[int, frozenset]]:
    """Explicit nodes of ``T(interval)`` as ``(string depth, leaf set)``;
    leaves count the end-marker in their depth."""
    w = _word(w)
    n = len(w)
    i, j = interval
    suf = {p: w[p - 1:] + (None,) for p in range(i, j + 1)}

    def lcp(a, b):
        k = 0
        while k < len(a) and k < len(b) and a[k] == b[k]:
            k += 1
        return k

    nodes = {(0, frozenset(suf))}
    for p in suf:
        nodes.add((n - p + 2, frozenset([p])))
    ps = list(suf)
    for x, a in enumerate(ps):
        for b in ps[x + 1:]:
            d = lcp(suf[a], suf[b])
            if d:
                key = suf[a][:d]
                nodes.add((d, frozenset(q for q in ps if suf[q][:d] == key)))
    return nodes


def naive_interval_quasigaps(w, interval: tuple[int, int]) -> dict[tuple, float]:
    """Quasigap in ``interval`` of every explicit node of ``T(interval)``,
    keyed by its longest real word, straight from the defining formula."""
    w = _word(w)
    n = len(w)
    i, j = interval
    nodes = sorted(naive_induced_nodes(w, interval), key=lambda x: x[0])
    out: dict[tuple, float] = {}
    for depth, leaves in nodes:
        if depth == 0:
            continue
        p = min(leaves)
        real = min(depth, n - p + 1)
        parent = max(d for d, ls in nodes if d < depth and leaves <= ls)
        occ = sorted(leaves)
        gap = max([b - a for a, b in zip(occ, occ[1:])], default=0)
        m = max(gap, occ[0] - i + 1, -((occ[-1] - j) // 2) + 1, parent + 1)
        if real <= parent:
            continue
        out[w[p - 1:p - 1 + real]] = m if m <= real else INFINITE
    return out
