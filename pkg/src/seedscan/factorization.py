"""LPnF table and greedy f-factorization of an interval of the text.

A factor starting at ``p`` is the longest prefix of ``w[p..j]`` that has an
occurrence lying entirely inside ``w[i..p-1]`` (or the single letter
``w[p]`` when there is none).  Both are read off the induced tree
``T([i..j])``: the deepest locus above leaf ``p`` whose first occurrence
``f`` still satisfies ``f + length <= p``.
"""
from __future__ import annotations

import numpy as np

from .induced_tree import InducedTree, induce_root_tree
from .kernels import f_factors, lpnf_table
from .text_index import Text, build_suffix_tree

Factorization = list[tuple[int, int]]


def _descent_args(tree: InducedTree) -> tuple:
    ptr, kids = tree.arrays.children_csr()
    return (tree.i, tree.j, tree.rank, ptr, kids, tree.arrays.lo[kids], tree.first, tree.wlen)


def _interval_tree(text: Text, interval: tuple[int, int] | None) -> tuple[InducedTree, int]:
    i, j = interval if interval is not None else (1, text.n)
    if not 1 <= i <= j <= text.n:
        raise ValueError(f"empty or invalid interval [{i}..{j}]")
    sub = text.slice(i, j)
    return induce_root_tree(build_suffix_tree(sub)), i - 1


def compute_lpnf(text: Text, interval: tuple[int, int] | None = None) -> list[int]:
    """LPnF value of every position of ``interval`` (default: whole text)."""
    tree, _ = _interval_tree(text, interval)
    return lpnf_table(*_descent_args(tree)).tolist()


def factor_arrays(tree: InducedTree) -> tuple[np.ndarray, np.ndarray]:
    """Starts and lengths of the f-factors of the tree's interval."""
    return f_factors(*_descent_args(tree))


def factorize_tree(tree: InducedTree) -> Factorization:
    """f-factorization of ``w[i..j]`` for the tree's interval, as
    ``(start, length)`` pairs with global start positions."""
    starts, lengths = factor_arrays(tree)
    return list(zip(starts.tolist(), lengths.tolist()))


def f_factorize(text: Text, interval: tuple[int, int] | None = None) -> Factorization:
    tree, shift = _interval_tree(text, interval)
    return [(p + shift, length) for p, length in factorize_tree(tree)]


def middle_factor_count(factors, interval: tuple[int, int], delta: int) -> int:
    """Number of factors lying inside ``[i+2*delta .. j-delta]``; ``factors``
    is a list of ``(start, length)`` or a pair of arrays."""
    i, j = interval
    lo, hi = i + 2 * delta, j - delta
    if isinstance(factors, tuple) and len(factors) == 2 and isinstance(factors[0], np.ndarray):
        starts, lengths = factors
    else:
        arr = np.asarray(factors, dtype=np.int64).reshape(-1, 2)
        starts, lengths = arr[:, 0], arr[:, 1]
    return int(np.count_nonzero((starts >= lo) & (starts + lengths - 1 <= hi)))
