"""Quasigap values: maxgap, the per-node formula, edge extension, brute force."""
from __future__ import annotations

from typing import Sequence

from .induced_tree import InducedTree
from .kernels import direct_quasigaps

#: Infinite quasigap; strictly larger than any text length.
INF = 1 << 62


def maxgap(positions: Sequence[int]) -> int:
    """Largest difference of consecutive elements; 0 for fewer than two."""
    best = 0
    for a, b in zip(positions, positions[1:]):
        if b - a > best:
            best = b - a
    return best


def quasigap_formula(first: int, last: int, gap: int, parent_len: int,
                     interval: tuple[int, int], node_len: int) -> int:
    """Quasigap of a node in ``interval`` from its occurrence statistics.

    Returns :data:`INF` when the candidate value exceeds ``node_len`` or
    the node has no occurrence in the interval.
    """
    i, j = interval
    if first > last:
        return INF
    m = max(gap, first - i + 1, (j - last + 1) // 2 + 1, parent_len + 1)
    return m if m <= node_len else INF


def quasigap_at_locus(upper_len: int, lower_len: int, length: int, value: int) -> int:
    """Quasigap of the implicit locus of ``length`` on the edge whose lower
    explicit end (word length ``lower_len``) has quasigap ``value``."""
    if not upper_len < length <= lower_len:
        raise ValueError(f"length {length} not on edge ({upper_len}, {lower_len}]")
    return value if length >= value else INF


def brute_quasigaps(tree: InducedTree) -> list[int]:
    """Quasigap of every explicit node, each evaluated from its sorted
    occurrence list (quadratic; used for small intervals)."""
    a = tree.arrays
    return direct_quasigaps(tree.i, tree.j, a.parent, a.lo, a.hi, a.leaves, a.wlen).tolist()
