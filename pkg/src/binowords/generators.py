"""Deterministic prefix suppliers for the infinite words under study.

Every generator exposes ``prefix(n)`` backed by a grow-only cache that is
safe under concurrent reads, plus a shared factor-extraction protocol:
slide a length-n window over a prefix whose length is doubled until two
consecutive rounds see the same factor set, or a configured cap is hit.
"""

from __future__ import annotations

import os
import threading
from itertools import islice

import numpy as np

from .core import Alphabet, Word, BINARY
from .errors import (
    AlphabetMismatchError,
    GeneratorSpecError,
    StabilizationError,
)
from .morphisms import Morphism, PHI

DEFAULT_PREFIX_CAP = 1 << 22
PREFIX_CAP_ENV = "BINOWORDS_PREFIX_CAP"

# Expansion bookkeeping switches to vectorized block processing past this
# many pending symbols; below it, a plain Python loop wins.
_BULK_THRESHOLD = 1 << 14


def configured_prefix_cap() -> int:
    raw = os.environ.get(PREFIX_CAP_ENV)
    if raw is None:
        return DEFAULT_PREFIX_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise GeneratorSpecError(
            f"{PREFIX_CAP_ENV} must be an integer, got {raw!r}"
        ) from exc
    if value < 1024:
        raise GeneratorSpecError(f"{PREFIX_CAP_ENV} must be at least 1024")
    return value


class WordGenerator:
    """Base class: a deterministic infinite word with a cached prefix.

    Subclasses implement ``_materialize(n)`` returning at least n symbols
    of the word as index bytes.  The cached prefix is an immutable bytes
    object swapped atomically, so concurrent readers either see the old
    snapshot or the new one; results match cache-free recomputation.
    """

    kind = "abstract"

    def __init__(self, alphabet: Alphabet, spec_id: str):
        self.alphabet = alphabet
        self.spec_id = spec_id
        self._snapshot = b""
        self._lock = threading.Lock()
        self._factor_cache: dict[tuple[int, int], tuple[frozenset, int]] = {}

    def prefix_bytes(self, n: int) -> bytes:
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        snap = self._snapshot
        if len(snap) >= n:
            return snap[:n]
        with self._lock:
            if len(self._snapshot) < n:
                grown = self._materialize(n)
                if len(grown) < n:
                    raise GeneratorSpecError(
                        f"{self.spec_id}: could only produce {len(grown)} "
                        f"of {n} requested symbols"
                    )
                self._snapshot = grown
            return self._snapshot[:n]

    def prefix(self, n: int) -> str:
        return self.alphabet.decode(self.prefix_bytes(n))

    def prefix_word(self, n: int) -> Word:
        return Word(self.alphabet, self.prefix_bytes(n))

    def _materialize(self, n: int) -> bytes:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_id!r}>"


class FixedPointGenerator(WordGenerator):
    """lim f^n(a) for a morphism f prolongable on the letter a.

    Positions are expanded exactly once (the image of position i is
    appended while i trails the frontier), so producing n symbols costs
    O(n) image lookups; large backlogs are expanded with numpy in bulk.
    """

    kind = "fixed-point"

    def __init__(self, morphism: Morphism, letter: str, spec_id: str | None = None):
        if not morphism.is_endomorphism():
            raise GeneratorSpecError("fixed points require an endomorphism")
        idx = morphism.source.index(letter)
        seed = morphism.images[idx].data
        if len(seed) < 2 or seed[0] != idx:
            raise GeneratorSpecError(
                f"morphism is not prolongable on {letter!r}"
            )
        super().__init__(morphism.source, spec_id or f"fixed-point({letter})")
        self.morphism = morphism
        self.letter = letter
        self._images = tuple(w.data for w in morphism.images)
        self._buf = bytearray(seed)
        self._expanded = 1
        flat = b"".join(self._images)
        self._img_flat = np.frombuffer(flat, dtype=np.uint8)
        lens = np.array([len(img) for img in self._images], dtype=np.int64)
        self._img_lens = lens
        self._img_starts = np.concatenate(([0], np.cumsum(lens)[:-1]))

    def _materialize(self, n: int) -> bytes:
        buf = self._buf
        images = self._images
        while len(buf) < n:
            pending = len(buf) - self._expanded
            if pending <= 0:
                raise GeneratorSpecError(
                    f"{self.spec_id}: the fixed point is finite "
                    f"(length {len(buf)})"
                )
            if pending >= _BULK_THRESHOLD and n - len(buf) >= _BULK_THRESHOLD:
                self._bulk_expand(n)
            else:
                end = min(len(buf), self._expanded + 4096)
                for i in range(self._expanded, end):
                    buf += images[buf[i]]
                self._expanded = end
        return bytes(buf)

    def _bulk_expand(self, n: int) -> None:
        buf = self._buf
        seg = np.frombuffer(bytes(buf[self._expanded:]), dtype=np.uint8)
        lens = self._img_lens[seg]
        cum = np.cumsum(lens)
        need = n - len(buf)
        cut = int(np.searchsorted(cum, need, side="left")) + 1
        cut = min(cut, len(seg))
        seg = seg[:cut]
        lens = lens[:cut]
        total = int(lens.sum())
        if total:
            out_starts = np.cumsum(lens) - lens
            ramp = np.arange(total, dtype=np.int64) - np.repeat(out_starts, lens)
            src = np.repeat(self._img_starts[seg], lens) + ramp
            buf += self._img_flat[src].tobytes()
        self._expanded += cut


class SturmianGenerator(WordGenerator):
    """Characteristic Sturmian word from a directive sequence.

    Standard words: s_{-1} = 1, s_0 = 0, s_n = s_{n-1}^{a_n} s_{n-2};
    a finite directive is cycled.  All-ones gives the Fibonacci word.
    """

    kind = "sturmian"

    def __init__(self, directive):
        directive = tuple(int(a) for a in directive)
        if not directive:
            raise GeneratorSpecError("directive must be nonempty")
        if any(a < 1 for a in directive):
            raise GeneratorSpecError("directive entries must be >= 1")
        spec_id = "sturmian:" + ",".join(str(a) for a in directive)
        super().__init__(BINARY, spec_id)
        self.directive = directive
        self._prev = b"\x01"
        self._cur = b"\x00"
        self._step = 0

    def _materialize(self, n: int) -> bytes:
        prev, cur, step = self._prev, self._cur, self._step
        while len(cur) < n:
            a = self.directive[step % len(self.directive)]
            prev, cur = cur, cur * a + prev
            step += 1
        self._prev, self._cur, self._step = prev, cur, step
        return cur


class ChampernowneGenerator(WordGenerator):
    """Concatenation of the binary expansions of 0, 1, 2, ..."""

    kind = "champernowne"

    def __init__(self):
        super().__init__(BINARY, "champ")
        self._parts = bytearray()
        self._next = 0

    def _materialize(self, n: int) -> bytes:
        buf = self._parts
        i = self._next
        while len(buf) < n:
            chunk = "".join(format(j, "b") for j in range(i, i + 4096))
            buf += BINARY.encode(chunk)
            i += 4096
        self._next = i
        return bytes(buf)


class GrillenbergerGenerator(WordGenerator):
    """Limit of u_k, where D_0 = {0, 1}, D_{k+1} = u_k D_k^2 and u_k
    concatenates D_k in lexicographic order.

    Levels through D_3 are materialized (|u_3| = 110592); beyond that the
    word is streamed block by block from the sorted pairs over D_3, which
    covers prefixes up to |u_4| (about 7.3e9 symbols).
    """

    kind = "grillenberger"

    def __init__(self):
        super().__init__(BINARY, "grill")
        level = [b"\x00", b"\x01"]
        self.level_words = []
        for _ in range(3):
            u = b"".join(level)
            self.level_words.append(u)
            level = [u + x + y for x in level for y in level]
        self.d3 = tuple(level)
        self.u3 = b"".join(level)
        self.level_words.append(self.u3)

    def _blocks(self):
        u3 = self.u3
        for x in self.d3:
            for y in self.d3:
                yield u3 + x + y

    def _materialize(self, n: int) -> bytes:
        if n <= len(self.u3):
            return self.u3
        block_size = len(self.u3) + 2 * len(self.d3[0])
        limit = len(self.d3) ** 2 * block_size
        if n > limit:
            raise GeneratorSpecError(
                f"grill prefixes beyond {limit} symbols are not supported"
            )
        needed = -(-n // block_size)
        return b"".join(islice(self._blocks(), needed))


class MorphicImageGenerator(WordGenerator):
    """Image of an inner generator under a morphism (possibly erasing)."""

    kind = "image-of"

    def __init__(self, morphism: Morphism, inner: WordGenerator,
                 spec_id: str | None = None):
        if inner.alphabet != morphism.source:
            raise AlphabetMismatchError(
                f"inner word over {inner.alphabet} does not match the "
                f"morphism source {morphism.source}"
            )
        super().__init__(morphism.target,
                         spec_id or f"image(?, {inner.spec_id})")
        self.morphism = morphism
        self.inner = inner

    def _materialize(self, n: int) -> bytes:
        m = max(n, 16)
        last = -1
        while True:
            img = self.morphism.apply_bytes(self.inner.prefix_bytes(m))
            if len(img) >= n:
                return img
            if len(img) == last and m > (1 << 30):
                raise GeneratorSpecError(
                    f"{self.spec_id}: image prefix stopped growing at "
                    f"{len(img)} symbols"
                )
            last = len(img)
            m *= 2


class SuffixGenerator(WordGenerator):
    """The inner word with its first `offset` symbols removed."""

    kind = "suffix-of"

    def __init__(self, offset: int, inner: WordGenerator,
                 spec_id: str | None = None):
        if offset < 0:
            raise GeneratorSpecError("suffix offset must be >= 0")
        super().__init__(inner.alphabet,
                         spec_id or f"suffix({offset}, {inner.spec_id})")
        self.offset = offset
        self.inner = inner

    def _materialize(self, n: int) -> bytes:
        return self.inner.prefix_bytes(n + self.offset)[self.offset:]


# Built-in morphisms and words.

FIB_MORPHISM = Morphism.from_dict({"0": "01", "1": "0"})
PD_MORPHISM = Morphism.from_dict({"0": "01", "1": "00"})
H_MORPHISM = Morphism.from_dict({"0": "01", "1": "12", "2": "2"})
G_MORPHISM = Morphism.from_dict(
    {"a": "a0α", "0": "01", "1": "10", "α": "αα"}
)
TAU_MORPHISM = Morphism.from_dict(
    {"a": "", "0": "0", "1": "1", "α": "1"},
    source=G_MORPHISM.source,
    target=BINARY,
)


def fixed_point(f: Morphism, letter: str,
                spec_id: str | None = None) -> WordGenerator:
    return FixedPointGenerator(f, letter, spec_id)


def image_of(f: Morphism, gen: WordGenerator,
             spec_id: str | None = None) -> WordGenerator:
    return MorphicImageGenerator(f, gen, spec_id)


def suffix_of(offset: int, gen: WordGenerator) -> WordGenerator:
    return SuffixGenerator(offset, gen)


def sturmian(directive) -> WordGenerator:
    return SturmianGenerator(directive)


def thue_morse() -> WordGenerator:
    return FixedPointGenerator(PHI, "0", "tm")


def fibonacci() -> WordGenerator:
    return FixedPointGenerator(FIB_MORPHISM, "0", "fib")


def period_doubling() -> WordGenerator:
    return FixedPointGenerator(PD_MORPHISM, "0", "pd")


def h_word() -> WordGenerator:
    return FixedPointGenerator(H_MORPHISM, "0", "h")


def g_word() -> WordGenerator:
    return FixedPointGenerator(G_MORPHISM, "a", "g")


def tau_g_word() -> WordGenerator:
    return MorphicImageGenerator(TAU_MORPHISM, g_word(), "tau-g")


def grillenberger_word() -> WordGenerator:
    return GrillenbergerGenerator()


def champernowne() -> WordGenerator:
    return ChampernowneGenerator()


_NAMED = {
    "tm": thue_morse,
    "fib": fibonacci,
    "pd": period_doubling,
    "h": h_word,
    "g": g_word,
    "tau-g": tau_g_word,
    "grill": grillenberger_word,
    "champ": champernowne,
}


def _split_top_level(text: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _resolve_morphism(token: str) -> Morphism:
    base, sep, exp = token.partition("^")
    base = base.strip()
    if base == "phi":
        f = PHI
    else:
        try:
            f = Morphism.load(base)
        except OSError as exc:
            raise GeneratorSpecError(
                f"cannot read morphism file {base!r}: {exc}"
            ) from exc
    if sep:
        try:
            k = int(exp)
        except ValueError as exc:
            raise GeneratorSpecError(
                f"morphism power must be an integer, got {exp!r}"
            ) from exc
        if k < 1:
            raise GeneratorSpecError("morphism power must be >= 1")
        f = f.power(k)
    return f


def from_spec(text: str) -> WordGenerator:
    """Parse the generator mini-language.

    Accepted forms: tm, fib, pd, h, g, tau-g, grill, champ,
    sturmian:a1,a2,..., image(<morphism-file-or-phi>[^k], <spec>),
    suffix(<offset>, <spec>).
    """
    s = text.strip()
    if s in _NAMED:
        return _NAMED[s]()
    if s.startswith("sturmian:"):
        body = s[len("sturmian:"):]
        entries = []
        for tok in body.split(","):
            tok = tok.strip()
            if tok in ("", "..."):
                continue
            try:
                entries.append(int(tok))
            except ValueError as exc:
                raise GeneratorSpecError(
                    f"bad directive entry {tok!r} in {text!r}"
                ) from exc
        return SturmianGenerator(entries)
    if s.startswith("image(") and s.endswith(")"):
        parts = _split_top_level(s[len("image("):-1])
        if len(parts) != 2:
            raise GeneratorSpecError(
                f"image(...) takes a morphism and a generator: {text!r}"
            )
        f = _resolve_morphism(parts[0])
        inner = from_spec(parts[1])
        return MorphicImageGenerator(f, inner, spec_id=s)
    if s.startswith("suffix(") and s.endswith(")"):
        parts = _split_top_level(s[len("suffix("):-1])
        if len(parts) != 2:
            raise GeneratorSpecError(
                f"suffix(...) takes an offset and a generator: {text!r}"
            )
        try:
            offset = int(parts[0].strip())
        except ValueError as exc:
            raise GeneratorSpecError(
                f"bad suffix offset {parts[0].strip()!r} in {text!r}"
            ) from exc
        inner = from_spec(parts[1])
        return SuffixGenerator(offset, inner, spec_id=s)
    raise GeneratorSpecError(f"unknown generator spec {text!r}")


# Factor extraction.

def _distinct_windows(data: bytes, n: int, lo: int, hi: int,
                      alphabet_size: int) -> set[bytes]:
    """Distinct slices data[i:i+n] over lo <= i < hi."""
    count = hi - lo
    if count <= 0:
        return set()
    if count < 4096:
        return {data[i:i + n] for i in range(lo, hi)}
    arr = np.frombuffer(data, dtype=np.uint8)
    if alphabet_size == 2 and n <= 63:
        span = arr[lo:hi + n - 1].astype(np.int64)
        packed = np.zeros(count, dtype=np.int64)
        for off in range(n):
            np.left_shift(packed, 1, out=packed)
            np.bitwise_or(packed, span[off:off + count], out=packed)
        out = set()
        for x in np.unique(packed):
            x = int(x)
            out.add(bytes((x >> (n - 1 - i)) & 1 for i in range(n)))
        return out
    block = np.ascontiguousarray(
        np.lib.stride_tricks.sliding_window_view(arr[lo:hi + n - 1], n)
    )
    view = block.view(np.dtype((np.void, n))).ravel()
    return {v.tobytes() for v in np.unique(view)}


def factor_bytes(gen: WordGenerator, n: int,
                 cap: int | None = None) -> tuple[set[bytes], int]:
    """All length-n factors (as index bytes) with the prefix length used.

    The window slides over prefix(P); P doubles until two consecutive
    doublings add no new factor.  A single quiet doubling is not trusted:
    fixed points with long images can sit still for one doubling and then
    produce fresh factors (the 0 -> 000111, 1 -> 0110 fixed point does
    exactly that at n = 256).  Results are cached per generator when
    small; callers must not mutate the returned set in place.
    """
    if n < 0:
        raise ValueError("factor length must be >= 0")
    if n == 0:
        return {b""}, 0
    cap = configured_prefix_cap() if cap is None else cap
    key = (n, cap)
    hit = gen._factor_cache.get(key)
    if hit is not None:
        return set(hit[0]), hit[1]
    size = len(gen.alphabet)
    p_cur = min(max(4 * n, 1024), cap)
    if p_cur < n:
        raise StabilizationError(gen.spec_id, n, cap, 0, 0)
    data = gen.prefix_bytes(p_cur)
    found = _distinct_windows(data, n, 0, p_cur - n + 1, size)
    streak = 0
    while True:
        p_next = min(2 * p_cur, cap)
        if p_next == p_cur:
            raise StabilizationError(gen.spec_id, n, cap, len(found), -1)
        data = gen.prefix_bytes(p_next)
        fresh = _distinct_windows(data, n, p_cur - n + 1, p_next - n + 1, size)
        added = fresh - found
        if not added:
            streak += 1
            if streak >= 2:
                if len(found) * n <= (1 << 20):
                    cache = gen._factor_cache
                    cache[key] = (frozenset(found), p_next)
                    while len(cache) > 64:
                        cache.pop(next(iter(cache)))
                return found, p_next
        else:
            streak = 0
            before = len(found)
            found |= added
        if p_next == cap:
            raise StabilizationError(
                gen.spec_id, n, cap, len(found),
                len(found) if not added else before,
            )
        p_cur = p_next


def factors(gen: WordGenerator, n: int,
            cap: int | None = None) -> tuple[set[Word], int]:
    """All length-n factors as Word values, with the prefix length used."""
    raw, used = factor_bytes(gen, n, cap)
    return {Word(gen.alphabet, b) for b in raw}, used
