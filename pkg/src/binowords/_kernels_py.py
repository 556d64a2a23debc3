"""Pure-Python binomial-counting kernels, arbitrary precision.

Reference implementation: binowords._kernels is the compiled int64 twin and
must agree with this module wherever its overflow guard admits the input.
Functions here take raw index bytes; Word-level wrapping happens upstream.

The signature vector layout is canonical (length, lex) order: position
bounds[l] + rank(pattern) where rank reads the pattern as a base-s numeral.
"""

from .core import pattern_index_bounds


def signature_counts(data: bytes, alphabet_size: int, k: int) -> list[int]:
    """Occurrence counts of every pattern of length <= k as a subword of data.

    One left-to-right pass; when a letter arrives, every pattern ending in
    that letter gains the count of its length-(l-1) prefix.  Longer patterns
    are updated first so prefix counts are pre-update values.
    """
    s = alphabet_size
    bounds = pattern_index_bounds(s, k)
    counts = [0] * bounds[k + 1]
    counts[0] = 1
    powers = [s**i for i in range(k + 1)]
    for c in data:
        for length in range(k, 0, -1):
            src = bounds[length - 1]
            dst = bounds[length] + c
            for q in range(powers[length - 1]):
                counts[dst + q * s] += counts[src + q]
    return counts


def signature_rows(buf: bytes, rows: int, row_length: int,
                   alphabet_size: int, k: int) -> list[tuple[int, ...]]:
    """signature_counts for each of `rows` consecutive length-`row_length` slices."""
    out = []
    for r in range(rows):
        seg = buf[r * row_length : (r + 1) * row_length]
        out.append(tuple(signature_counts(seg, alphabet_size, k)))
    return out


def subword_count(u: bytes, w: bytes) -> int:
    """Number of occurrences of w as a (scattered) subword of u."""
    if not w:
        return 1
    m = len(w)
    dp = [0] * (m + 1)
    dp[0] = 1
    for c in u:
        for j in range(m, 0, -1):
            if w[j - 1] == c:
                dp[j] += dp[j - 1]
    return dp[m]
