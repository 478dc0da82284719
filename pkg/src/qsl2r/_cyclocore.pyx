# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of `_cyclocore_py`.

Coefficients are arbitrary-precision Python ints, so arithmetic stays on
PyObject operations; the win comes from compiled loop and indexing overhead.
Semantics must match `_cyclocore_py` exactly (enforced by tests and by the
kernel benchmark).
"""

BACKEND = "cython"


def cyclo_mul(int p, tuple re1, tuple im1, tuple re2, tuple im2):
    cdef int n = p - 1
    cdef int a, b, e
    cdef list wr = [0] * p
    cdef list wi = [0] * p
    cdef object x, y, u, v
    for a in range(n):
        x = re1[a]
        y = im1[a]
        if not x and not y:
            continue
        for b in range(n):
            u = re2[b]
            v = im2[b]
            if not u and not v:
                continue
            e = a + b
            if e >= p:
                e -= p
            wr[e] = wr[e] + (x * u - y * v)
            wi[e] = wi[e] + (x * v + y * u)
    cdef object tr = wr[n]
    cdef object ti = wi[n]
    if tr or ti:
        return (
            tuple([wr[e] - tr for e in range(n)]),
            tuple([wi[e] - ti for e in range(n)]),
        )
    return tuple(wr[:n]), tuple(wi[:n])


def cyclo_axpy(int n, object s1, tuple re1, tuple im1, object s2, tuple re2, tuple im2):
    cdef int j
    return (
        tuple([s1 * re1[j] + s2 * re2[j] for j in range(n)]),
        tuple([s1 * im1[j] + s2 * im2[j] for j in range(n)]),
    )
