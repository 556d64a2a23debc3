"""Morphisms between free monoids: application, powers, classification.

Classification (Parikh-collinearity etc.) is exact: the adjacency matrix
rank is computed over the integers by fraction-free elimination, never in
floating point, because collinearity is a rational condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .binomials import BinomialSignature, binomial_coefficient
from .core import Alphabet, Word, parikh
from .errors import AlphabetMismatchError, GeneratorSpecError, ImageCapError, MorphismError

DEFAULT_IMAGE_CAP = 1 << 20


@dataclass(frozen=True)
class MorphismClass:
    """Exact structural classification of a morphism."""

    rank: int
    is_parikh_collinear: bool
    is_parikh_constant: bool
    is_totally_erasing: bool
    is_prolongable_on: str | None


class Morphism:
    """A monoid morphism given by the images of the source letters."""

    __slots__ = ("source", "target", "images", "_image_bytes")

    def __init__(self, source: Alphabet, target: Alphabet, images):
        images = tuple(images)
        if len(images) != len(source):
            raise MorphismError(
                f"expected {len(source)} images, got {len(images)}"
            )
        for img in images:
            if img.alphabet != target:
                raise AlphabetMismatchError(
                    f"image {img!r} is not over the target alphabet {target}"
                )
        self.source = source
        self.target = target
        self.images = images
        self._image_bytes = tuple(img.data for img in images)

    @classmethod
    def from_dict(cls, rules: dict[str, str],
                  source: Alphabet | None = None,
                  target: Alphabet | None = None) -> "Morphism":
        """Build from {letter: image}; rule order fixes the source order."""
        if source is None:
            source = Alphabet(rules.keys())
        if target is None:
            extra = [c for img in rules.values() for c in img if c not in source]
            seen = []
            for c in extra:
                if c not in seen:
                    seen.append(c)
            target = source if not seen else Alphabet(tuple(source.symbols) + tuple(seen))
        images = [Word.from_str(rules[s], target) for s in source.symbols]
        return cls(source, target, images)

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """Parse the `letter -> image` line format (# starts a comment)."""
        rules: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise GeneratorSpecError(f"line {lineno}: expected 'letter -> image'")
            lhs, rhs = line.split("->", 1)
            letter = lhs.strip()
            image = rhs.strip()
            if len(letter) != 1:
                raise GeneratorSpecError(
                    f"line {lineno}: left side must be a single letter, got {letter!r}"
                )
            if letter in rules:
                raise GeneratorSpecError(f"line {lineno}: duplicate rule for {letter!r}")
            rules[letter] = image
        if not rules:
            raise GeneratorSpecError("morphism text contains no rules")
        return cls.from_dict(rules)

    @classmethod
    def load(cls, path) -> "Morphism":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def rules_text(self) -> str:
        return "\n".join(
            f"{s} -> {img}" for s, img in zip(self.source.symbols, self.images)
        )

    def __call__(self, word: Word) -> Word:
        return self.apply(word)

    def apply(self, word: Word) -> Word:
        if word.alphabet != self.source:
            raise AlphabetMismatchError(
                f"word alphabet {word.alphabet} differs from source {self.source}"
            )
        return Word(self.target, self.apply_bytes(word.data))

    def apply_bytes(self, data: bytes) -> bytes:
        imgs = self._image_bytes
        return b"".join(imgs[c] for c in data)

    def image_of(self, letter: str) -> Word:
        return self.images[self.source.index(letter)]

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def compose(self, inner: "Morphism") -> "Morphism":
        """self after inner."""
        if inner.target != self.source:
            raise AlphabetMismatchError("composition alphabets do not match")
        return Morphism(inner.source, self.target,
                        [self.apply(img) for img in inner.images])

    def power(self, j: int, image_cap: int = DEFAULT_IMAGE_CAP) -> "Morphism":
        """j-fold composition of an endomorphism, images materialized."""
        if not self.is_endomorphism():
            raise MorphismError("powers require an endomorphism")
        if j < 0:
            raise MorphismError("power must be >= 0")
        current = tuple(bytes([i]) for i in range(len(self.source)))
        for _ in range(j):
            nxt = tuple(
                b"".join(self._image_bytes[c] for c in img) for img in current
            )
            worst = max((len(img) for img in nxt), default=0)
            if worst > image_cap:
                raise ImageCapError(
                    f"power {j} would exceed the per-letter image cap "
                    f"({worst} > {image_cap})"
                )
            current = nxt
        return Morphism(self.source, self.target,
                        [Word(self.target, img) for img in current])

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency matrix: row per target letter b, column per source
        letter a, entry |f(a)|_b, so Parikh(f(u)) = M . Parikh(u)."""
        cols = [parikh(img) for img in self.images]
        return tuple(
            tuple(cols[a][b] for a in range(len(self.source)))
            for b in range(len(self.target))
        )

    def is_prolongable_on(self) -> str | None:
        """First letter a with f(a) = a... and |f(a)| >= 2, if any."""
        for i, s in enumerate(self.source.symbols):
            img = self.images[i]
            if len(img) >= 2 and self.is_endomorphism() and img.data[0] == i:
                return s
        return None

    def classify(self) -> MorphismClass:
        vectors = [parikh(img) for img in self.images]
        rank = integer_rank([list(v) for v in vectors])
        return MorphismClass(
            rank=rank,
            is_parikh_collinear=rank <= 1,
            is_parikh_constant=len(set(vectors)) <= 1,
            is_totally_erasing=all(len(img) == 0 for img in self.images),
            is_prolongable_on=self.is_prolongable_on(),
        )

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        rules = ", ".join(
            f"{s}->{img}" for s, img in zip(self.source.symbols, self.images)
        )
        return f"Morphism({rules})"


def integer_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (pivot * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


# The Thue-Morse morphism 0 -> 01, 1 -> 10, used throughout.
PHI = Morphism.from_dict({"0": "01", "1": "10"})


def image_coefficient(f: Morphism, u_signature: BinomialSignature, e: Word) -> int:
    """binom(f(u), e) evaluated from the order-k signature of u alone.

    Sums over block decompositions e = e_1...e_l into nonempty factors and
    over letter tuples a_1...a_l: binom(u, a_1...a_l) * prod binom(f(a_i), e_i).
    Needs u's counts only up to pattern length |e|.
    """
    if u_signature.alphabet != f.source:
        raise AlphabetMismatchError("signature alphabet differs from morphism source")
    if e.alphabet != f.target:
        raise AlphabetMismatchError("pattern alphabet differs from morphism target")
    n = len(e)
    if u_signature.k < n:
        raise ValueError(
            f"signature order {u_signature.k} too small for pattern of length {n}"
        )
    if n == 0:
        return 1
    s = len(f.source)
    # binom(f(a), block) for every contiguous block of e
    block_coeff = {}
    for i in range(n):
        for j in range(i + 1, n + 1):
            block = e[i:j]
            block_coeff[(i, j)] = [
                binomial_coefficient(f.images[a], block) for a in range(s)
            ]
    total = 0
    for l in range(1, n + 1):
        for cuts in _compositions(n, l):
            coeffs = [block_coeff[span] for span in cuts]
            for letters in product(range(s), repeat=l):
                prod_val = 1
                for c, a in zip(coeffs, letters):
                    prod_val *= c[a]
                    if not prod_val:
                        break
                if not prod_val:
                    continue
                pattern = Word(f.source, bytes(letters))
                total += u_signature.count(pattern) * prod_val
    return total


def _compositions(n: int, l: int):
    """All splits of [0, n) into l nonempty consecutive spans."""
    def rec(start, parts_left):
        if parts_left == 1:
            yield [(start, n)]
            return
        for end in range(start + 1, n - parts_left + 2):
            for rest in rec(end, parts_left - 1):
                yield [(start, end)] + rest

    yield from rec(0, l)


def g_value(f: Morphism, w: Word, e: Word) -> int:
    """prod_i binom(f(w_i), e_i) over aligned letters of w and e.

    For Parikh-collinear f this depends only on the Parikh vectors of w
    and e, so it is constant on abelian classes of w.
    """
    if w.alphabet != f.source:
        raise AlphabetMismatchError("w alphabet differs from morphism source")
    if e.alphabet != f.target:
        raise AlphabetMismatchError("e alphabet differs from morphism target")
    if len(w) != len(e):
        raise ValueError(f"|w| = {len(w)} but |e| = {len(e)}")
    out = 1
    for a, b in zip(w.data, e.data):
        out *= binomial_coefficient(f.images[a], Word(f.target, bytes([b])))
    return out


def michel_delta(u: Word, v: Word, k: int) -> tuple[int, int]:
    """Differences of binom(phi^k(.), 01^k) and binom(phi^k(.), 01^(k+1)).

    The first difference collapses to 2^((k-1)(k-2)/2) (|u|_0 - |v|_0);
    when u ~_1 v the second collapses to 2^(k(k-1)/2) (binom(u,01) -
    binom(v,01)).  Note the distinct exponents: the second is one triangular
    step higher (checked by direct counting at k = 1..4; the two collapse
    to the same scale only at k = 1).  Both closed forms are asserted
    against the direct computation before returning.
    """
    if u.alphabet != Word.from_str("0").alphabet or v.alphabet != u.alphabet:
        raise AlphabetMismatchError("michel_delta needs binary words")
    if len(u) != len(v):
        raise ValueError("words must have equal length")
    if k < 1:
        raise ValueError("k must be >= 1")
    phi_k = PHI.power(k)
    fu, fv = phi_k.apply(u), phi_k.apply(v)
    pat_k = Word.from_str("0" + "1" * k)
    pat_k1 = Word.from_str("0" + "1" * (k + 1))
    first = binomial_coefficient(fu, pat_k) - binomial_coefficient(fv, pat_k)
    second = binomial_coefficient(fu, pat_k1) - binomial_coefficient(fv, pat_k1)
    scale_first = 1 << ((k - 1) * (k - 2) // 2)
    zeros_u = u.data.count(0)
    zeros_v = v.data.count(0)
    assert first == scale_first * (zeros_u - zeros_v), (first, scale_first)
    if parikh(u) == parikh(v):
        scale_second = 1 << (k * (k - 1) // 2)
        pat01 = Word.from_str("01")
        expected = scale_second * (
            binomial_coefficient(u, pat01) - binomial_coefficient(v, pat01)
        )
        assert second == expected, (second, expected)
    return first, second
