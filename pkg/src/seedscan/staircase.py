"""Interval staircases, their reduction against a factorization, and the
constants that drive the recursion."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

Interval = tuple[int, int]


@dataclass(frozen=True)
class Params:
    """Recursion constants.  ``RELEASE`` is the only setting for which the
    size bounds of the recursion are guaranteed; other values are for tests."""

    c1: Fraction = Fraction(1, 50)
    c2: Fraction = Fraction(1, 50)
    n0: int = 200

    def delta(self, N: int) -> int:
        return int(self.c1 * N)

    def step(self, N: int, g: int) -> int:
        return int(self.c2 * N / g) if g > 0 else 0

    def work_bound(self, N: int) -> Fraction:
        """Proven cap on the total length of the working intervals: two end
        groups of at most ``6*delta`` each, plus at most ``4(g+1)`` windows of
        length ``3m`` in the middle, which is ``<= 16*c2*N`` once ``g >= 3``.
        For the release constants this is ``0.56 N``; ``N/2`` is not
        guaranteed (doubling factorizations exceed it slightly)."""
        return (12 * self.c1 + 16 * self.c2) * N

    @property
    def is_release(self) -> bool:
        return self == RELEASE


RELEASE = Params()


def staircase_bounds(interval: Interval, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Window starts and ends of :func:`build_staircase` as arrays."""
    if m <= 0:
        raise ValueError("staircase step must be positive")
    i, j = interval
    N = j - i + 1
    k = np.arange(max(0, -(-N // m) - 3) + 1, dtype=np.int64)
    return i + k * m, np.minimum(i - 1 + (k + 3) * m, j)


def build_staircase(interval: Interval, m: int) -> list[Interval]:
    """Windows ``[i+k*m .. min(i-1+(k+3)*m, j)]``; consecutive windows share
    ``2m`` positions and the last one ends at ``j``."""
    a, b = staircase_bounds(interval, m)
    return list(zip(a.tolist(), b.tolist()))


def reduce_bounds(a: np.ndarray, b: np.ndarray, starts: np.ndarray, lengths: np.ndarray,
                  m: int, j: int) -> np.ndarray:
    """Mask of the windows kept by :func:`reduce_staircase`; ``starts`` and
    ``lengths`` describe the factors in order."""
    e = b + m
    owner = np.searchsorted(starts, a, side="right") - 1
    return (e > j) | (e > starts[owner] + lengths[owner] - 1)


def reduce_staircase(staircase: Sequence[Interval], factors: Sequence[tuple[int, int]],
                     m: int, interval: Interval) -> list[Interval]:
    """Keep the windows whose extension ``[a .. b+m]`` is not contained in a
    single factor.  An extension running past the interval's end is never
    contained in a factor."""
    if not staircase:
        return []
    a = np.array([x for x, _ in staircase], dtype=np.int64)
    b = np.array([y for _, y in staircase], dtype=np.int64)
    starts = np.array([s for s, _ in factors], dtype=np.int64)
    lengths = np.array([n for _, n in factors], dtype=np.int64)
    keep = reduce_bounds(a, b, starts, lengths, m, interval[1])
    return list(zip(a[keep].tolist(), b[keep].tolist()))


def total_length(intervals: Sequence[Interval]) -> int:
    return sum(b - a + 1 for a, b in intervals)
