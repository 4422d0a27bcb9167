# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p."""

from libc.stdint cimport int64_t


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def rref_inplace(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` (entries already in [0, p)) to RREF in place; return pivot columns."""
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t f, inv, tmp
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv(a[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, ncols):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
