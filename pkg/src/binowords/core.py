"""Alphabets and finite words.

Words are immutable: an alphabet plus a bytes object of letter indices.
All combinatorics below (signatures, factor sets, complexity) works on the
index bytes directly; Word is the user-facing wrapper.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import AlphabetMismatchError


class Alphabet:
    """An ordered alphabet of distinct single-character symbols.

    The order is significant: it fixes Parikh vector coordinates and the
    canonical (length, lex) order of binomial signatures.
    """

    __slots__ = ("symbols", "_index", "_hash")

    def __init__(self, symbols):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {s!r}")
        if len(symbols) > 255:
            raise ValueError("alphabet too large")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}
        self._hash = hash(symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols!r}") from None

    def encode(self, text: str) -> bytes:
        return bytes(self.index(c) for c in text)

    def decode(self, indices) -> str:
        return "".join(self.symbols[i] for i in indices)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Alphabet({''.join(self.symbols)!r})"


BINARY = Alphabet("01")
TERNARY = Alphabet("012")


class Word:
    """An immutable finite word over a fixed alphabet."""

    __slots__ = ("alphabet", "data")

    def __init__(self, alphabet: Alphabet, data: bytes):
        self.alphabet = alphabet
        self.data = bytes(data)

    @classmethod
    def from_str(cls, text: str, alphabet: Alphabet | None = None) -> "Word":
        if alphabet is None:
            alphabet = BINARY if set(text) <= {"0", "1"} else Alphabet(sorted(set(text)))
        return cls(alphabet, alphabet.encode(text))

    def __len__(self):
        return len(self.data)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.data[item])
        return self.alphabet.symbols[self.data[item]]

    def __iter__(self):
        symbols = self.alphabet.symbols
        return (symbols[i] for i in self.data)

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                f"cannot concatenate words over {self.alphabet} and {other.alphabet}"
            )
        return Word(self.alphabet, self.data + other.data)

    def __mul__(self, times: int) -> "Word":
        return Word(self.alphabet, self.data * times)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.data == other.data
        )

    def __lt__(self, other: "Word"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError("cannot compare words over different alphabets")
        return (len(self.data), self.data) < (len(other.data), other.data)

    def __hash__(self):
        return hash((self.alphabet, self.data))

    def __str__(self):
        return self.alphabet.decode(self.data)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def factors_of_length(self, n: int):
        """Distinct length-n factors of this finite word."""
        data = self.data
        seen = {data[i : i + n] for i in range(len(data) - n + 1)}
        return {Word(self.alphabet, f) for f in seen}


def parikh(word: Word) -> tuple[int, ...]:
    """Parikh vector: occurrence count of each alphabet letter, in alphabet order."""
    return parikh_of_bytes(word.data, len(word.alphabet))


def parikh_of_bytes(data: bytes, alphabet_size: int) -> tuple[int, ...]:
    counts = [0] * alphabet_size
    for b in data:
        counts[b] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def pattern_index_bounds(alphabet_size: int, k: int) -> tuple[int, ...]:
    """Start offset of each pattern length in the canonical signature vector.

    Entry l is sum_{i<l} alphabet_size**i; entry k+1 is the total vector length.
    """
    bounds = [0]
    for length in range(k + 1):
        bounds.append(bounds[-1] + alphabet_size**length)
    return tuple(bounds)


def enumerate_patterns(alphabet: Alphabet, k: int) -> list[Word]:
    """All words of length <= k over the alphabet, in (length, lex) order.

    Position in this list matches the canonical signature vector layout.
    """
    s = len(alphabet)
    out = [Word(alphabet, b"")]
    level = [b""]
    for _ in range(k):
        level = [p + bytes([a]) for p in level for a in range(s)]
        out.extend(Word(alphabet, p) for p in level)
    return out


def pattern_position(pattern: bytes, alphabet_size: int, k: int) -> int:
    """Index of a pattern within the canonical signature vector."""
    if len(pattern) > k:
        raise ValueError(f"pattern longer than signature order {k}")
    bounds = pattern_index_bounds(alphabet_size, k)
    pos = 0
    for b in pattern:
        pos = pos * alphabet_size + b
    return bounds[len(pattern)] + pos
