"""Deterministic text families for benchmarks and stress tests."""
from __future__ import annotations

import random

FAMILIES = ("random", "fibonacci", "thue-morse", "periodic")


def fibonacci_word(n: int) -> bytes:
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse(n: int) -> bytes:
    return bytes(b"ab"[bin(k).count("1") & 1] for k in range(n))


def periodic(n: int, rng: random.Random, period: int = 0) -> bytes:
    """A random block repeated, with the middle letter changed."""
    period = period or rng.randint(3, 12)
    block = bytes(rng.choice(b"ab") for _ in range(period))
    out = bytearray((block * (n // period + 1))[:n])
    if n > 4 * period:
        k = n // 2
        out[k] = b"a"[0] if out[k] != b"a"[0] else b"b"[0]
    return bytes(out)


def random_word(n: int, rng: random.Random, alphabet: bytes = b"ab") -> bytes:
    return bytes(rng.choice(alphabet) for _ in range(n))


def generate(family: str, n: int, seed: int = 0) -> bytes:
    if n < 1:
        raise ValueError("length must be positive")
    rng = random.Random(seed)
    if family == "random":
        return random_word(n, rng)
    if family == "fibonacci":
        return fibonacci_word(n)
    if family == "thue-morse":
        return thue_morse(n)
    if family == "periodic":
        return periodic(n, rng)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
