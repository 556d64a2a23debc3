"""Binomial coefficients of words, signatures, and k-binomial equivalence.

binom(u, w) counts the occurrences of w as a scattered subword of u.  The
order-k signature of u collects binom(u, w) for every w of length <= k; two
words are k-binomially equivalent when their signatures agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import kernels
from .core import (
    Alphabet,
    Word,
    enumerate_patterns,
    parikh,
    pattern_index_bounds,
    pattern_position,
)
from .errors import AlphabetMismatchError


def _check_same_alphabet(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(
            f"words over different alphabets: {u.alphabet} vs {v.alphabet}"
        )


def binomial_coefficient(u: Word, w: Word) -> int:
    """binom(u, w): number of index subsets of u spelling w."""
    _check_same_alphabet(u, w)
    return kernels.subword_count(u.data, w.data)


@dataclass(frozen=True)
class BinomialSignature:
    """All subword counts of one word up to pattern length k.

    counts is laid out in canonical (length, lex) order over the alphabet;
    equality of signatures is k-binomial equivalence.
    """

    alphabet: Alphabet
    k: int
    word_length: int
    counts: tuple[int, ...]

    def count(self, pattern) -> int:
        if isinstance(pattern, str):
            pattern = Word.from_str(pattern, self.alphabet)
        if pattern.alphabet != self.alphabet:
            raise AlphabetMismatchError("pattern alphabet differs from signature alphabet")
        return self.counts[pattern_position(pattern.data, len(self.alphabet), self.k)]

    def items(self):
        """(pattern, count) pairs in canonical order."""
        return list(zip(enumerate_patterns(self.alphabet, self.k), self.counts))

    def as_dict(self) -> dict[str, int]:
        return {str(p): c for p, c in self.items()}

    def restrict(self, k: int) -> "BinomialSignature":
        if k > self.k:
            raise ValueError(f"cannot extend a signature from k={self.k} to k={k}")
        bounds = pattern_index_bounds(len(self.alphabet), self.k)
        return BinomialSignature(self.alphabet, k, self.word_length,
                                 self.counts[: bounds[k + 1]])


def signature(u: Word, k: int) -> BinomialSignature:
    if k < 0:
        raise ValueError("signature order must be >= 0")
    vec = kernels.signature_vector(u.data, len(u.alphabet), k)
    return BinomialSignature(u.alphabet, k, len(u), vec)


def equivalent(u: Word, v: Word, k: int) -> bool:
    """k-binomial equivalence: equal counts on every pattern of length <= k.

    When |u| = |v| >= k it suffices to compare patterns of length exactly k
    (the shorter counts are determined by the length-k ones); the shortcut
    is exercised here and its agreement with the full comparison is covered
    by tests.
    """
    _check_same_alphabet(u, v)
    if k < 0:
        raise ValueError("equivalence order must be >= 0")
    if len(u) != len(v):
        return k == 0
    s = len(u.alphabet)
    vec_u = kernels.signature_vector(u.data, s, k)
    vec_v = kernels.signature_vector(v.data, s, k)
    if len(u) >= k:
        lo = pattern_index_bounds(s, k)[k]
        return vec_u[lo:] == vec_v[lo:]
    return vec_u == vec_v


def abelian_equivalent(u: Word, v: Word) -> bool:
    _check_same_alphabet(u, v)
    return parikh(u) == parikh(v)


def abelian_mass(u: Word, m: tuple[int, ...]) -> int:
    """Sum of binom(u, w) over all w with Parikh vector m.

    Equals prod_a C(|u|_a, m_a): choosing the occurrence positions of each
    letter independently.
    """
    if len(m) != len(u.alphabet):
        raise ValueError("Parikh vector arity differs from alphabet size")
    pu = parikh(u)
    out = 1
    for have, want in zip(pu, m):
        out *= comb(have, want)
    return out


def power_delta(x: Word, y: Word, n: int, e: Word) -> int:
    """binom(x^n, e) - binom(y^n, e) for x, y equivalent at order |e|-1.

    Under that precondition the difference is linear in n; the closed form
    n * (binom(x, e) - binom(y, e)) is asserted before returning.
    """
    _check_same_alphabet(x, y)
    _check_same_alphabet(x, e)
    if len(e) == 0:
        raise ValueError("pattern e must be nonempty")
    if n < 0:
        raise ValueError("power must be >= 0")
    k = len(e) - 1
    if not equivalent(x, y, k):
        raise ValueError(f"precondition failed: words are not {k}-binomially equivalent")
    delta = binomial_coefficient(x * n, e) - binomial_coefficient(y * n, e)
    expected = n * (binomial_coefficient(x, e) - binomial_coefficient(y, e))
    assert delta == expected, (delta, expected)
    return delta
