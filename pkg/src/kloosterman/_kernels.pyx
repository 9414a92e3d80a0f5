# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops of the Kloosterman sum engine.

Both kernels take ``f`` of shape (n, N), where row i holds the values of the
i-th factor function at g^0..g^{N-1}, N = q - 1.  Tuples are visited in
lexicographic order of their discrete logs.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange

cnp.import_array()

cdef enum:
    MAXN = 64


cdef void _chunk_pass(const double complex[:, ::1] f, Py_ssize_t n, Py_ssize_t N,
                      Py_ssize_t lo, Py_ssize_t hi, double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t idx[MAXN]
    cdef Py_ssize_t ps[MAXN]
    cdef double complex pp[MAXN]
    cdef Py_ssize_t x1, level, j, s, m
    cdef double complex v
    cdef const double complex[::1] last = f[n - 1]
    m = n - 2  # number of middle coordinates x_2..x_{n-1}
    for x1 in range(lo, hi):
        pp[0] = f[0, x1]
        ps[0] = x1
        for level in range(m):
            idx[level] = 0
            pp[level + 1] = pp[level] * f[level + 1, 0]
            ps[level + 1] = ps[level]
        while True:
            v = pp[m]
            s = ps[m]
            for j in range(N - s):
                out[s + j] = out[s + j] + v * last[j]
            for j in range(N - s, N):
                out[s + j - N] = out[s + j - N] + v * last[j]
            # advance the odometer over the middle coordinates
            level = m - 1
            while level >= 0:
                idx[level] += 1
                if idx[level] < N:
                    break
                idx[level] = 0
                level -= 1
            if level < 0:
                break
            while level < m:
                pp[level + 1] = pp[level] * f[level + 1, idx[level]]
                ps[level + 1] = ps[level] + idx[level]
                if ps[level + 1] >= N:
                    ps[level + 1] -= N
                level += 1


def naive_table(f_in, Py_ssize_t chunk, int threads=1):
    """Bucket every tuple of (F_q^x)^n by the log of its product.

    The x_1 range is cut into chunks of ``chunk`` indices; each chunk owns a
    private output row and rows are summed in chunk order afterwards, so the
    result does not depend on ``threads``.
    """
    cdef const double complex[:, ::1] f = np.ascontiguousarray(f_in, dtype=np.complex128)
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t N = f.shape[1]
    cdef Py_ssize_t nchunks, c, lo, hi
    if n < 1 or n > MAXN:
        raise ValueError(f"n must be in [1, {MAXN}]")
    if n == 1:
        return np.array(f[0], dtype=np.complex128)
    nchunks = (N + chunk - 1) // chunk
    partial_arr = np.zeros((nchunks, N), dtype=np.complex128)
    cdef double complex[:, ::1] partial = partial_arr
    for c in prange(nchunks, nogil=True, num_threads=max(threads, 1), schedule="static"):
        lo = c * chunk
        hi = lo + chunk
        if hi > N:
            hi = N
        _chunk_pass(f, n, N, lo, hi, partial[c])
    out = np.zeros(N, dtype=np.complex128)
    for c in range(nchunks):
        out += partial_arr[c]
    return out


def single_sum(f_in, Py_ssize_t t):
    """Sum over x_1..x_{n-1} of prod f_i(x_i) * f_n(t - sum), logs mod N."""
    cdef const double complex[:, ::1] f = np.ascontiguousarray(f_in, dtype=np.complex128)
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t N = f.shape[1]
    cdef Py_ssize_t idx[MAXN]
    cdef Py_ssize_t ps[MAXN]
    cdef double complex pp[MAXN]
    cdef Py_ssize_t level, j, m, r
    cdef double complex acc = 0
    if n < 1 or n > MAXN:
        raise ValueError(f"n must be in [1, {MAXN}]")
    t = ((t % N) + N) % N
    if n == 1:
        return complex(f[0, t])
    m = n - 1
    with nogil:
        pp[0] = 1.0
        ps[0] = 0
        for level in range(m):
            idx[level] = 0
            pp[level + 1] = pp[level] * f[level, 0]
            ps[level + 1] = ps[level]
        while True:
            r = t - ps[m]
            if r < 0:
                r += N
            acc = acc + pp[m] * f[n - 1, r]
            level = m - 1
            while level >= 0:
                idx[level] += 1
                if idx[level] < N:
                    break
                idx[level] = 0
                level -= 1
            if level < 0:
                break
            while level < m:
                pp[level + 1] = pp[level] * f[level, idx[level]]
                ps[level + 1] = ps[level] + idx[level]
                if ps[level + 1] >= N:
                    ps[level + 1] -= N
                level += 1
    return complex(acc)
