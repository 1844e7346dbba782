"""Small exact linear algebra over the rationals (dense, list-of-lists)."""

from __future__ import annotations

from .scalars import Q0, Q1, Rational


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Q0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            x = ai[k]
            if not x:
                continue
            bk = b[k]
            for j in range(p):
                if bk[j]:
                    oi[j] = oi[j] + x * bk[j]
    return out


def mat_vec(a, v):
    return [sum((a[i][j] * v[j] for j in range(len(v)) if v[j]), Q0) for i in range(len(a))]


def mat_identity(n):
    return [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_det(a):
    """Exact determinant by fraction-preserving Gaussian elimination."""
    n = len(a)
    m = [row[:] for row in a]
    det = Q1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return Q0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = 1 / pv
        for r in range(col + 1, n):
            f = m[r][col]
            if not f:
                continue
            f = f * inv
            mr, mc = m[r], m[col]
            for c in range(col, n):
                if mc[c]:
                    mr[c] = mr[c] - f * mc[c]
    return det


def mat_inv(a):
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(a, mat_identity(n))]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rank_and_nullspace(rows, want_nullspace=False):
    """Row-reduce a list of rational vectors; returns (rank, nullspace basis)."""
    if not rows:
        return 0, []
    ncols = len(rows[0])
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    if not want_nullspace:
        return r, []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q0] * ncols
        v[fc] = Q1
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return r, basis


def solve(a, b):
    """Solve a x = b exactly (a square nonsingular)."""
    n = len(a)
    m = [row[:] + [bv] for row, bv in zip(a, b)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


class IncrementalRank:
    """Incremental exact row reduction for rank stabilization checks."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []  # reduced rows
        self.pivots = []  # pivot column per row

    def add(self, vec):
        """Add a vector; returns True if it increased the rank."""
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        for col in range(self.ncols):
            if v[col]:
                inv = 1 / v[col]
                v = [x * inv for x in v]
                self.rows.append(v)
                self.pivots.append(col)
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)
