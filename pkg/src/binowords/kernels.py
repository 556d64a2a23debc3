"""Backend selection and overflow-safe dispatch for the counting kernels.

The compiled extension works on int64 and is used whenever every attainable
count provably fits (the largest subword count of a length-n word for
patterns of length <= k is C(n, min(k, n//2))).  Anything else, and any
install without the extension, runs the arbitrary-precision pure path.
"""

from math import comb

from . import _kernels_py as _pure

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None

# One bit of headroom below 2**63: adds never wrap before the final value
# would already exceed the guard.
_INT64_GUARD = 1 << 62


def fits_int64(word_length: int, k: int) -> bool:
    return comb(word_length, min(k, word_length // 2)) < _INT64_GUARD


def signature_vector(data: bytes, alphabet_size: int, k: int) -> tuple[int, ...]:
    """Full canonical-order counts vector for one word, as a tuple of ints."""
    if _compiled is not None and fits_int64(len(data), k):
        return tuple(map(int, _compiled.signature_counts(data, alphabet_size, k)))
    return tuple(_pure.signature_counts(data, alphabet_size, k))


def signature_matrix(buf: bytes, rows: int, row_length: int,
                     alphabet_size: int, k: int):
    """Counts vectors for `rows` concatenated equal-length words.

    Returns an (rows, L) int64 ndarray on the compiled path, else a list of
    tuples.  Use distinct_row_count/rows_as_tuples to consume either shape.
    """
    if _compiled is not None and fits_int64(row_length, k):
        return _compiled.signature_rows(buf, rows, row_length, alphabet_size, k)
    return _pure.signature_rows(buf, rows, row_length, alphabet_size, k)


def distinct_row_count(matrix) -> int:
    if isinstance(matrix, list):
        return len(set(matrix))
    if matrix.shape[0] == 0:
        return 0
    import numpy as np

    return np.unique(matrix, axis=0).shape[0]


def rows_as_tuples(matrix) -> list[tuple[int, ...]]:
    if isinstance(matrix, list):
        return matrix
    return [tuple(map(int, row)) for row in matrix]


def subword_count(u: bytes, w: bytes) -> int:
    if _compiled is not None and fits_int64(len(u), len(w)):
        return _compiled.subword_count(u, w)
    return _pure.subword_count(u, w)
