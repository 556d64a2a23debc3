# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled int64 twins of the _kernels_py functions.

Counts are C int64; callers (binowords.kernels) must verify beforehand that
every attainable count fits, i.e. C(n, min(k, n//2)) < 2**62.  No overflow
detection happens here.
"""

import numpy as np

# k is bounded so that the vector length sum_{l<=k} s**l and the C arrays
# below stay sane; the dispatcher never requests more.
DEF MAX_K = 32


cdef inline void _fill_row(const unsigned char *data, Py_ssize_t n,
                           Py_ssize_t s, Py_ssize_t k,
                           const Py_ssize_t *bounds, const Py_ssize_t *powers,
                           long long *cnt) noexcept nogil:
    cdef Py_ssize_t i, length, q, src, dst
    cdef unsigned char c
    cnt[0] = 1
    for i in range(n):
        c = data[i]
        for length in range(k, 0, -1):
            src = bounds[length - 1]
            dst = bounds[length] + c
            for q in range(powers[length - 1]):
                cnt[dst + q * s] += cnt[src + q]


cdef Py_ssize_t _setup(Py_ssize_t s, Py_ssize_t k,
                       Py_ssize_t *bounds, Py_ssize_t *powers) except -1:
    if k < 0 or k >= MAX_K:
        raise ValueError(f"signature order k={k} out of range")
    cdef Py_ssize_t length
    bounds[0] = 0
    powers[0] = 1
    for length in range(k + 1):
        bounds[length + 1] = bounds[length] + powers[length]
        powers[length + 1] = powers[length] * s
    return bounds[k + 1]


def signature_counts(const unsigned char[::1] data, Py_ssize_t alphabet_size,
                     Py_ssize_t k):
    cdef Py_ssize_t bounds[MAX_K + 2]
    cdef Py_ssize_t powers[MAX_K + 2]
    cdef Py_ssize_t total = _setup(alphabet_size, k, bounds, powers)
    out = np.zeros(total, dtype=np.int64)
    cdef long long[::1] cnt = out
    cdef Py_ssize_t n = data.shape[0]
    if n:
        _fill_row(&data[0], n, alphabet_size, k, bounds, powers, &cnt[0])
    else:
        cnt[0] = 1
    return out


def signature_rows(const unsigned char[::1] buf, Py_ssize_t rows,
                   Py_ssize_t row_length, Py_ssize_t alphabet_size,
                   Py_ssize_t k):
    cdef Py_ssize_t bounds[MAX_K + 2]
    cdef Py_ssize_t powers[MAX_K + 2]
    cdef Py_ssize_t total = _setup(alphabet_size, k, bounds, powers)
    if rows * row_length != buf.shape[0]:
        raise ValueError("buffer length is not rows * row_length")
    out = np.zeros((rows, total), dtype=np.int64)
    cdef long long[:, ::1] cnt = out
    cdef Py_ssize_t r
    if row_length:
        with nogil:
            for r in range(rows):
                _fill_row(&buf[r * row_length], row_length, alphabet_size, k,
                          bounds, powers, &cnt[r, 0])
    else:
        for r in range(rows):
            cnt[r, 0] = 1
    return out


def subword_count(const unsigned char[::1] u, const unsigned char[::1] w):
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t n = u.shape[0]
    if m == 0:
        return 1
    dp_arr = np.zeros(m + 1, dtype=np.int64)
    cdef long long[::1] dp = dp_arr
    dp[0] = 1
    cdef Py_ssize_t i, j
    cdef unsigned char c
    with nogil:
        for i in range(n):
            c = u[i]
            for j in range(m, 0, -1):
                if w[j - 1] == c:
                    dp[j] += dp[j - 1]
    return int(dp[m])
