"""Block structure of factors of iterated images under 0->01, 1->10.

A factor u of the j-fold image of a binary word splits as p.B(z).s
where B(z) is the blockwise j-fold image of a word z, p is a proper
suffix of a letter image, and s a proper prefix of one.  This module
enumerates those splits, equates their (p, s) boundary data, assigns
factorization classes, and decodes prefixes of image words greedily.
All functions take plain strings over the alphabet {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .binomials import equivalent
from .core import BINARY, Word
from .errors import BinowordsError, DecodeError


_STEP = {"0": "01", "1": "10"}


@lru_cache(maxsize=None)
def phi_image(letter: str, j: int) -> str:
    """The j-fold image of a single letter; j = 0 gives the letter."""
    if letter not in _STEP:
        raise ValueError(f"letter must be '0' or '1', got {letter!r}")
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return letter
    return phi_apply(phi_image(letter, j - 1), 1)


def phi_apply(word: str, j: int) -> str:
    """Apply the doubling morphism j times to a binary string."""
    _check_binary(word)
    for _ in range(j):
        word = "".join(_STEP[c] for c in word)
    return word


def _check_binary(word: str) -> None:
    if word.strip("01"):
        raise ValueError(f"expected a string over 01, got {word!r}")


def _flip(letter: str) -> str:
    return "1" if letter == "0" else "0"


@dataclass(frozen=True)
class PhiFactorization:
    """One split u = p.B(core).s against the j-fold letter images.

    a is the letter whose image ends with p (None when p is empty) and
    b the letter whose image begins with s; both are unique when
    defined because the two letter images differ at every position.
    """

    j: int
    p: str
    core: str
    s: str
    a: str | None
    b: str | None

    @property
    def ancestor(self) -> str:
        return (self.a or "") + self.core + (self.b or "")

    def middle(self) -> str:
        return phi_apply(self.core, self.j)

    def reconstruct(self) -> str:
        return self.p + self.middle() + self.s


def phi_factorizations(u: str, j: int) -> list[PhiFactorization]:
    """All splits of u as p.B(z).s for the j-fold images, at most two.

    Every offset below the block length is tried; the middle is decoded
    block by block (the first symbol of a block determines its letter).
    Returns an empty list when no offset works, which distinguishes
    "not a factor of any image" from the too-short error.  When two
    splits exist their ancestors are powers of opposite letters and the
    offsets differ by half a block; both facts are asserted.  The one
    exception is a minimal-length word lying across a block junction in
    two ways with empty cores (exhaustively, 010 and 101 at j = 2),
    where neither fact holds.
    """
    _check_binary(u)
    if j < 1:
        raise ValueError("j must be >= 1")
    block = 1 << j
    if len(u) < block - 1:
        raise ValueError(
            f"need length >= {block - 1} for j={j}, got {len(u)}"
        )
    images = {c: phi_image(c, j) for c in "01"}
    results = []
    for t in range(block):
        p = u[:t]
        a = None
        if p:
            matches = [c for c in "01" if images[c].endswith(p)]
            if not matches:
                continue
            a = matches[0]
        pos = t
        core: list[str] = []
        valid = True
        while pos + block <= len(u):
            seg = u[pos:pos + block]
            if seg != images[seg[0]]:
                valid = False
                break
            core.append(seg[0])
            pos += block
        if not valid:
            continue
        s = u[pos:]
        b = None
        if s:
            matches = [c for c in "01" if images[c].startswith(s)]
            if not matches:
                continue
            b = matches[0]
        results.append(PhiFactorization(j, p, "".join(core), s, a, b))
    results.sort(key=lambda f: (f.p, f.s))
    assert len(results) <= 2, u
    if len(results) == 2:
        first, second = results
        straddle = (not first.core and not second.core
                    and len(set(first.ancestor)) == 2
                    and len(set(second.ancestor)) == 2)
        if not straddle:
            assert len(set(first.ancestor)) == 1, first
            assert len(set(second.ancestor)) == 1, second
            assert set(first.ancestor) != set(second.ancestor), u
            assert abs(len(first.p) - len(second.p)) == block // 2, u
    return results


@dataclass(frozen=True)
class PrefixSuffixPair:
    """Boundary words of a factorization, each shorter than the block."""

    p: str
    s: str
    j: int

    def __post_init__(self):
        if self.j < 1:
            raise ValueError("j must be >= 1")
        _check_binary(self.p)
        _check_binary(self.s)
        limit = 1 << self.j
        if len(self.p) >= limit or len(self.s) >= limit:
            raise ValueError(
                f"boundary words must be shorter than {limit} for j={self.j}"
            )


def equiv_j(pair1: PrefixSuffixPair, pair2: PrefixSuffixPair) -> bool:
    """Whether two boundary pairs are related by the six-case matching.

    The cases either shift a half-block image of one letter across both
    boundaries (keeping the length sum) or attach the images of both
    letters (changing the sum by a whole block).
    """
    if pair1.j != pair2.j:
        raise BinowordsError(
            f"mixed block orders: {pair1.j} vs {pair2.j}"
        )
    j = pair1.j
    p1, s1 = pair1.p, pair1.s
    p2, s2 = pair2.p, pair2.s
    if (p1, s1) == (p2, s2):
        return True
    for a in "01":
        fa = phi_image(a, j - 1)
        fb = phi_image(_flip(a), j - 1)
        if p1 == p2 + fa and s2 == fa + s1:
            return True
        if p2 == p1 + fa and s1 == fa + s2:
            return True
        if (p1, s1) == (fa, fb) and (s2, p2) == (fa, fb):
            return True
        if p1 == p2 + fa and s1 == fb + s2:
            return True
        if p2 == p1 + fa and s2 == fb + s1:
            return True
    return False


@dataclass(frozen=True)
class FactorizationClass:
    """A boundary-tagged family of base-word factors of one core length.

    left and right are '', '0', or '1'.  Empty tags on both sides name
    the plain family of length-n factors; otherwise the family consists
    of factors of length n + |tags| framed by the tag letters.
    """

    left: str
    right: str
    n: int

    def __post_init__(self):
        if self.left not in ("", "0", "1") or self.right not in ("", "0", "1"):
            raise ValueError("tags must be '', '0', or '1'")
        if self.n < 0:
            raise ValueError("n must be >= 0")

    @property
    def factor_length(self) -> int:
        """Length of image factors associated with this class."""
        return 2 * self.n + len(self.left) + len(self.right)

    @property
    def label(self) -> str:
        if not self.left and not self.right:
            return f"S({self.n})"
        left = self.left or "e"
        right = self.right or "e"
        return f"S_{{{left},{right}}}({self.n})"


def classify_factor(u: str) -> list[FactorizationClass]:
    """Factorization classes associated with u via its one-step splits.

    Each split p.B(z).s contributes the class tagged by the letters
    whose images the boundaries come from (empty tags for empty
    boundaries) at core length |z|.  Exactly the words in
    (01)* u (10)* u 1(01)* u 0(10)* get two classes.
    """
    splits = phi_factorizations(u, 1)
    if not splits:
        raise BinowordsError(f"{u!r} is not a factor of any image word")
    classes = []
    for f in splits:
        left = f.a if f.p else ""
        right = f.b if f.s else ""
        classes.append(FactorizationClass(left, right, len(f.core)))
    return classes


def tm_decode(x_prefix: str, k: int, all_solutions: bool = False):
    """Split x_prefix as u.B(y_prefix).r for the k-fold letter images.

    u must be a proper suffix of a letter image and the remainder r a
    proper prefix of one; all candidate offsets are tried and blocks
    are decoded by their first symbol.  Returns the solution with the
    shortest u (ties cannot occur), or every solution in construction
    order when all_solutions is set.
    """
    _check_binary(x_prefix)
    if k < 1:
        raise ValueError("k must be >= 1")
    block = 1 << k
    if len(x_prefix) < 2 * block:
        raise ValueError(
            f"need a prefix of length >= {2 * block} for k={k}"
        )
    images = {c: phi_image(c, k) for c in "01"}
    candidates = sorted(
        {images[c][block - length:] for c in "01"
         for length in range(block)},
        key=lambda u: (len(u), u),
    )
    solutions = []
    for u in candidates:
        if not x_prefix.startswith(u):
            continue
        pos = len(u)
        letters: list[str] = []
        valid = True
        while pos + block <= len(x_prefix):
            seg = x_prefix[pos:pos + block]
            if seg != images[seg[0]]:
                valid = False
                break
            letters.append(seg[0])
            pos += block
        if not valid:
            continue
        rest = x_prefix[pos:]
        if rest and not any(images[c].startswith(rest) for c in "01"):
            continue
        solutions.append((u, "".join(letters)))
    if not solutions:
        raise DecodeError(
            f"no offset decodes the prefix as a k={k} image tail"
        )
    return solutions if all_solutions else solutions[0]


def transfer_check(u: str, v: str, v2: str, k: int) -> bool:
    """Whether moving a (k-1)-fold image across k-fold images preserves
    k-binomial equivalence: compares u'.B(v) with B(v2).u' at level k,
    where u' is the (k-1)-fold image of u and B the k-fold one."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not u or not v or not v2:
        raise ValueError("u, v, v2 must be nonempty")
    if len(v) != len(v2):
        raise ValueError("v and v2 must have equal length")
    left = phi_apply(u, k - 1) + phi_apply(v, k)
    right = phi_apply(v2, k) + phi_apply(u, k - 1)
    return equivalent(
        Word.from_str(left, BINARY), Word.from_str(right, BINARY), k
    )
