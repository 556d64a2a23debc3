import itertools
import random

import pytest

from binowords.core import BINARY, Word


def all_binary_words(length: int):
    """Every binary word of exactly this length, as Word objects."""
    for bits in itertools.product((0, 1), repeat=length):
        yield Word(BINARY, bytes(bits))


def naive_binomial(u: Word, w: Word) -> int:
    """Oracle: enumerate all index subsets of u and match against w."""
    target = w.data
    hits = 0
    for combo in itertools.combinations(range(len(u)), len(w)):
        if bytes(u.data[i] for i in combo) == target:
            hits += 1
    return hits


@pytest.fixture
def rng():
    return random.Random(0x5EED)
