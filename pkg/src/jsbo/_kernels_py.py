"""Pure-Python term-merge kernels for sparse polynomials.

Terms are dicts mapping packed integer exponent keys to scalar coefficients
(gmpy2.mpq, RatFunc, or nested Poly).  Monomial multiplication is integer
addition of packed keys, so exponents must stay below the field width.
Zero coefficients are never stored; scalars must be falsy exactly when zero.

The compiled twin in _kernels.pyx implements the same API.
"""

BACKEND = "python"


def mul_terms(a, b):
    """Product of two term dicts."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            c = get(k)
            if c is None:
                out[k] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def iadd_scaled(acc, b, s):
    """In place: acc += s*b.  s must be nonzero."""
    get = acc.get
    for k, cb in b.items():
        c = get(k)
        if c is None:
            acc[k] = s * cb
        else:
            c = c + s * cb
            if c:
                acc[k] = c
            else:
                del acc[k]
    return acc


def iadd_terms(acc, b):
    """In place: acc += b."""
    get = acc.get
    for k, cb in b.items():
        c = get(k)
        if c is None:
            acc[k] = cb
        else:
            c = c + cb
            if c:
                acc[k] = c
            else:
                del acc[k]
    return acc


def scale_terms(a, s):
    """New dict s*a.  s must be nonzero."""
    return {k: s * c for k, c in a.items()}
