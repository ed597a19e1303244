# cython: language_level=3
"""Compiled twins of :mod:`fixlab._pykernels` on int64 data.

Callers guarantee every intermediate sum fits in int64.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _absdiff(int64_t a, int64_t b) nogil:
    return a - b if a >= b else b - a


def max_pairwise_l1(rows, weights):
    cdef int64_t[:, ::1] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0], k = r.shape[1], i, j, t
    cdef int64_t s, best = 0
    cdef Py_ssize_t bi = 0, bj = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                s = 0
                for t in range(k):
                    s += w[t] * _absdiff(r[i, t], r[j, t])
                if s > best:
                    best = s
                    bi = i
                    bj = j
    return int(best), int(bi), int(bj)


def center_max_l1(centers, rows, weights):
    cdef int64_t[:, ::1] c = np.ascontiguousarray(centers, dtype=np.int64)
    cdef int64_t[:, ::1] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t m = c.shape[0], n = r.shape[0], k = r.shape[1], a, i, t
    cdef int64_t s, worst
    out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for a in range(m):
            worst = 0
            for i in range(n):
                s = 0
                for t in range(k):
                    s += w[t] * _absdiff(c[a, t], r[i, t])
                if s > worst:
                    worst = s
            o[a] = worst
    return [int(v) for v in out]


def first_return(int64_t p, int64_t q, int64_t budget):
    cdef int64_t x = 0, n, found = -1
    with nogil:
        for n in range(1, budget + 1):
            x = (x + p) % q
            if x == 0:
                found = n
                break
    return found
