import itertools
import random
from fractions import Fraction

import pytest

from seedscan.induced_tree import induce_root_tree
from seedscan.staircase import Params
from seedscan.text_index import Text, build_suffix_tree

# tiny constants so that words of a dozen letters already recurse and merge
SCALED = Params(Fraction(1, 8), Fraction(1, 2), 4)

FIG1 = "aaabaabaabaaabaaba"
EXAMPLE = "aaaaaabaaabaaabaaaa"


def all_words(alphabet: str, max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def random_word(rng: random.Random, n: int, alphabet: str = "ab") -> str:
    return "".join(rng.choice(alphabet) for _ in range(n))


def periodic_word(rng: random.Random, n: int) -> str:
    """A short random block repeated, sometimes with one letter flipped."""
    block = random_word(rng, rng.randint(1, 6))
    w = list((block * (n // len(block) + 1))[:n])
    if rng.random() < 0.5:
        k = rng.randrange(n)
        w[k] = "a" if w[k] == "b" else "b"
    return "".join(w)


def covered_word(rng: random.Random, v: str, max_len: int) -> str:
    """A word covered by ``v``: copies of ``v`` glued along its borders."""
    k = len(v)
    shifts = [s for s in range(1, k + 1) if v[s:] == v[:k - s]]
    w = v
    while True:
        s = rng.choice(shifts)
        if len(w) + s > max_len:
            return w
        w = w + v[k - s:]


def root_tree(w):
    return induce_root_tree(build_suffix_tree(Text(w)))


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
