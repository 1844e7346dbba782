# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-merge kernels; see _kernels_py for the API contract."""

BACKEND = "cython"


def mul_terms(dict a, dict b):
    cdef dict out = {}
    if len(a) > len(b):
        a, b = b, a
    cdef object ka, ca, kb, cb, k, c
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            c = out.get(k)
            if c is None:
                out[k] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def iadd_scaled(dict acc, dict b, object s):
    cdef object k, cb, c
    for k, cb in b.items():
        c = acc.get(k)
        if c is None:
            acc[k] = s * cb
        else:
            c = c + s * cb
            if c:
                acc[k] = c
            else:
                del acc[k]
    return acc


def iadd_terms(dict acc, dict b):
    cdef object k, cb, c
    for k, cb in b.items():
        c = acc.get(k)
        if c is None:
            acc[k] = cb
        else:
            c = c + cb
            if c:
                acc[k] = c
            else:
                del acc[k]
    return acc


def scale_terms(dict a, object s):
    cdef dict out = {}
    cdef object k, c
    for k, c in a.items():
        out[k] = s * c
    return out
