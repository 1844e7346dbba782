"""Concrete models of the complexified simple Euclidean Jordan algebras:
symmetric/full/alternating matrix algebras, the spin factor, and the
3 x 3 Hermitian matrices over a composition algebra (Cayley-Dickson tower
up to the octonions).

Every model carries rational structure constants; all operations are generic
over the coordinate ring, so elements may have rational, rational-function,
or polynomial coordinates.
"""

from __future__ import annotations

from . import linalg
from .poly import Poly, VarSpace
from .scalars import Q0, Q1, Rational

# ---------------------------------------------------------------------------
# composition algebras via Cayley-Dickson doubling, (a,b)(c,d)=(ac-d.b, da+bc.)


def cd_mul(u, v):
    m = len(u)
    if m == 1:
        return [u[0] * v[0]]
    h = m // 2
    a, b = u[:h], u[h:]
    c, d = v[:h], v[h:]
    ac = cd_mul(a, c)
    db = cd_mul(cd_conj(d), b)
    da = cd_mul(d, a)
    bc = cd_mul(b, cd_conj(c))
    return [x - y for x, y in zip(ac, db)] + [x + y for x, y in zip(da, bc)]


def cd_conj(u):
    return [u[0]] + [-x for x in u[1:]]


def cd_real(u):
    return u[0]


# ---------------------------------------------------------------------------


class AlgebraModel:
    """One complexified simple Euclidean Jordan algebra with rational
    structure constants.  kind: Sym | Full | AltQuat | Herm3F | Spin."""

    def __init__(self, kind, size):
        self.kind = kind
        self.size = size
        self._transport = None
        self._build()
        self._sym_cache = {}

    @staticmethod
    def transported(ambient: "AlgebraModel", S, names) -> "AlgebraModel":
        """The same algebra expressed in a new basis: column j of S is the
        j-th new basis vector in ambient coordinates."""
        from .poly import substitute_linear as _sl

        m = AlgebraModel.__new__(AlgebraModel)
        m.kind = "T:" + ambient.kind
        m.size = ambient.size
        m.n, m.r, m.d, m.b, m.p = ambient.n, ambient.r, ambient.d, ambient.b, ambient.p
        m.names = list(names)
        m.space = VarSpace(m.names)
        n = ambient.n
        sinv = linalg.mat_inv(S)
        cols = [[S[i][j] for i in range(n)] for j in range(n)]
        tensor = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = linalg.mat_vec(sinv, ambient.mul(cols[i], cols[j]))
                entry = [(k, c) for k, c in enumerate(prod) if c]
                tensor[i][j] = entry
                tensor[j][i] = entry
        m._tensor = tensor
        m.gram = linalg.mat_mul([[S[k][i] for k in range(n)] for i in range(n)], linalg.mat_mul(ambient.gram, S))
        m.gram_inv = linalg.mat_inv(m.gram)
        m.frame = [linalg.mat_vec(sinv, f) for f in ambient.frame]
        m.unit = linalg.mat_vec(sinv, ambient.unit)
        m.det_poly = _sl(ambient.det_poly, S, m.space)
        sharp_sub = [_sl(p, S, m.space) for p in ambient.sharp_polys]
        m.sharp_polys = [
            sum((sharp_sub[k] * sinv[i][k] for k in range(n) if sinv[i][k]), Poly.zero(m.space))
            for i in range(n)
        ]
        m._transport = (ambient, [row[:] for row in S], sinv)
        m._sym_cache = {}
        return m

    # -- construction ------------------------------------------------------

    def _build(self):
        kind, size = self.kind, self.size
        if kind == "Sym":
            r = size
            if not 1 <= r <= 4:
                raise ValueError("Sym rank out of supported range")
            names = ["x%d%d" % (i + 1, j + 1) for i in range(r) for j in range(i, r)]
            self.n, self.r, self.d, self.b = r * (r + 1) // 2, r, 1, 0
            self._init_matrix_basis_sym(r)
        elif kind == "Full":
            r = size
            if not 1 <= r <= 4:
                raise ValueError("Full rank out of supported range")
            names = ["x%d%d" % (i + 1, j + 1) for i in range(r) for j in range(r)]
            self.n, self.r, self.d, self.b = r * r, r, 2, 0
            self._init_matrix_basis_full(r)
        elif kind == "AltQuat":
            r = size
            if not 2 <= r <= 4:
                raise ValueError("AltQuat rank out of supported range")
            names = ["z%d%d" % (p + 1, q + 1) for p in range(2 * r) for q in range(p + 1, 2 * r)]
            self.n, self.r, self.d, self.b = r * (2 * r - 1), r, 4, 0
            self._init_matrix_basis_alt(r)
        elif kind == "Herm3F":
            m = size  # dim of the composition algebra: 1, 2, 4, 8
            if m not in (1, 2, 4, 8):
                raise ValueError("Herm3F coefficient algebra must have dim 1,2,4,8")
            names = ["a1", "a2", "a3"]
            for s in (1, 2, 3):
                names += ["x%d_%d" % (s, c) for c in range(m)]
            self.n, self.r, self.d, self.b = 3 + 3 * m, 3, m, 0
        elif kind == "Spin":
            nn = size
            if not 3 <= nn <= 10:
                raise ValueError("Spin dimension out of supported range")
            names = ["x%d" % i for i in range(nn)]
            self.n, self.r, self.d, self.b = nn, 2, nn - 2, 0
        else:
            raise ValueError("unknown model kind %r" % kind)
        self.p = 2 + self.d * (self.r - 1) + self.b
        self.names = names
        self.space = VarSpace(names)
        self._init_tensor()
        self._init_gram()
        self._init_frame()
        self._init_det()
        self._check_classification()

    def _init_matrix_basis_sym(self, r):
        basis = []
        for i in range(r):
            for j in range(i, r):
                m = [[Q0] * r for _ in range(r)]
                m[i][j] = Q1
                m[j][i] = Q1
                basis.append(m)
        self._mats = basis
        self._matsize = r
        self._read = self._read_sym

    def _read_sym(self, m):
        r = self._matsize
        return [m[i][j] for i in range(r) for j in range(i, r)]

    def _init_matrix_basis_full(self, r):
        basis = []
        for i in range(r):
            for j in range(r):
                m = [[Q0] * r for _ in range(r)]
                m[i][j] = Q1
                basis.append(m)
        self._mats = basis
        self._matsize = r
        self._read = lambda m: [m[i][j] for i in range(r) for j in range(r)]

    def _init_matrix_basis_alt(self, r):
        nn = 2 * r
        basis = []
        for p in range(nn):
            for q in range(p + 1, nn):
                m = [[Q0] * nn for _ in range(nn)]
                m[p][q] = Q1
                m[q][p] = -Q1
                basis.append(m)
        self._mats = basis
        self._matsize = nn
        self._read = lambda m: [m[p][q] for p in range(nn) for q in range(p + 1, nn)]
        self._J = [[Q0] * nn for _ in range(nn)]
        for i in range(r):
            self._J[i][r + i] = Q1
            self._J[r + i][i] = -Q1

    def _coords_to_mat(self, coords):
        n = self._matsize
        m = [[Q0] * n for _ in range(n)]
        for c, bm in zip(coords, self._mats):
            if c:
                for i in range(n):
                    for j in range(n):
                        if bm[i][j]:
                            m[i][j] = m[i][j] + c * bm[i][j]
        return m

    def _herm_coords_to_fmat(self, coords):
        m = self.size
        a1, a2, a3 = coords[0], coords[1], coords[2]
        x1 = list(coords[3 : 3 + m])
        x2 = list(coords[3 + m : 3 + 2 * m])
        x3 = list(coords[3 + 2 * m : 3 + 3 * m])
        zero = [a1 * 0] * (m - 1)
        return [
            [[a1] + zero, x3, cd_conj(x2)],
            [cd_conj(x3), [a2] + zero, x1],
            [x2, cd_conj(x1), [a3] + zero],
        ]

    def _herm_fmat_to_coords(self, fm):
        return (
            [fm[0][0][0], fm[1][1][0], fm[2][2][0]]
            + list(fm[1][2])
            + list(fm[2][0])
            + list(fm[0][1])
        )

    def _mul_coords(self, xc, yc):
        """Jordan product on raw coordinate vectors (generic ring entries)."""
        kind = self.kind
        if kind in ("Sym", "Full"):
            mx = self._coords_to_mat(xc)
            my = self._coords_to_mat(yc)
            prod = linalg.mat_mul(mx, my)
            tprod = linalg.mat_mul(my, mx)
            half = Rational(1, 2)
            s = [[(a + b) * half for a, b in zip(ra, rb)] for ra, rb in zip(prod, tprod)]
            return self._read(s)
        if kind == "AltQuat":
            mx = self._coords_to_mat(xc)
            my = self._coords_to_mat(yc)
            xj = linalg.mat_mul(mx, self._J)
            yj = linalg.mat_mul(my, self._J)
            s = linalg.mat_add(linalg.mat_mul(xj, my), linalg.mat_mul(yj, mx))
            half = Rational(-1, 2)
            return self._read([[v * half for v in row] for row in s])
        if kind == "Herm3F":
            fx = self._herm_coords_to_fmat(xc)
            fy = self._herm_coords_to_fmat(yc)
            prod = self._fmat_mul(fx, fy)
            tprod = self._fmat_mul(fy, fx)
            half = Rational(1, 2)
            s = [
                [[(a + b) * half for a, b in zip(ea, eb)] for ea, eb in zip(ra, rb)]
                for ra, rb in zip(prod, tprod)
            ]
            return self._herm_fmat_to_coords(s)
        if kind == "Spin":
            x0, xv = xc[0], xc[1:]
            y0, yv = yc[0], yc[1:]
            dot = None
            for a, b in zip(xv, yv):
                t = a * b
                dot = t if dot is None else dot + t
            z0 = xc[0] * yc[0] + dot
            return [z0] + [x0 * b + y0 * a for a, b in zip(xv, yv)]
        raise AssertionError

    def _fmat_mul(self, fa, fb):
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = None
                for k in range(3):
                    t = cd_mul(fa[i][k], fb[k][j])
                    acc = t if acc is None else [a + b for a, b in zip(acc, t)]
                row.append(acc)
            out.append(row)
        return out

    def _init_tensor(self):
        """Sparse structure tensor T[i][j] = list of (k, coeff) with i<=j."""
        n = self.n
        basis = []
        for i in range(n):
            e = [Q0] * n
            e[i] = Q1
            basis.append(e)
        tensor = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = self._mul_coords(basis[i], basis[j])
                entry = [(k, c) for k, c in enumerate(prod) if c]
                tensor[i][j] = entry
                tensor[j][i] = entry
        self._tensor = tensor

    def mul(self, xc, yc):
        """Jordan product via the structure tensor (generic coordinates)."""
        n = self.n
        out = [None] * n
        tensor = self._tensor
        for i in range(n):
            xi = xc[i]
            if not xi:
                continue
            ti = tensor[i]
            for j in range(n):
                yj = yc[j]
                if not yj:
                    continue
                w = xi * yj
                for k, c in ti[j]:
                    v = w * c
                    out[k] = v if out[k] is None else out[k] + v
        zero = xc[0] * 0
        return [zero if v is None else v for v in out]

    def _trace_coords(self, coords):
        kind = self.kind
        if kind in ("Sym", "Full", "AltQuat"):
            # tr(x) = (x|e) computed after gram; during bootstrap use matrix trace
            if kind == "AltQuat":
                m = self._coords_to_mat(coords)
                xj = linalg.mat_mul(m, self._J)
                tr = sum((-xj[i][i] for i in range(self._matsize)), Q0)
                return tr * Rational(1, 2)
            m = self._coords_to_mat(coords)
            return sum((m[i][i] for i in range(self._matsize)), Q0)
        if kind == "Herm3F":
            return coords[0] + coords[1] + coords[2]
        if kind == "Spin":
            return coords[0] * 2
        raise AssertionError

    def _init_gram(self):
        n = self.n
        basis = []
        for i in range(n):
            e = [Q0] * n
            e[i] = Q1
            basis.append(e)
        g = [[Q0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = self._trace_coords(self.mul(basis[i], basis[j]))
                g[i][j] = v
                g[j][i] = v
        self.gram = g
        self.gram_inv = linalg.mat_inv(g)

    def _init_frame(self):
        kind, r = self.kind, self.r
        frame = []
        if kind in ("Sym", "Full"):
            for i in range(r):
                m = [[Q0] * r for _ in range(r)]
                m[i][i] = Q1
                frame.append(self._read(m))
        elif kind == "AltQuat":
            nn = self._matsize
            for i in range(r):
                m = [[Q0] * nn for _ in range(nn)]
                m[i][r + i] = Q1
                m[r + i][i] = -Q1
                frame.append(self._read(m))
        elif kind == "Herm3F":
            for i in range(3):
                c = [Q0] * self.n
                c[i] = Q1
                frame.append(c)
        elif kind == "Spin":
            half = Rational(1, 2)
            e1 = [half, half] + [Q0] * (self.n - 2)
            e2 = [half, -half] + [Q0] * (self.n - 2)
            frame = [e1, e2]
        self.frame = frame
        unit = [Q0] * self.n
        for f in frame:
            unit = [a + b for a, b in zip(unit, f)]
        self.unit = unit

    def _generic_coords(self, space=None, offset=0):
        sp = space if space is not None else self.space
        return [Poly.variable(sp, offset + i) for i in range(self.n)]

    def _init_det(self):
        kind = self.kind
        x = self._generic_coords()
        sp = self.space
        if kind in ("Sym", "Full"):
            m = self._coords_to_mat(x)
            det = _poly_mat_det(m)
        elif kind == "AltQuat":
            m = self._coords_to_mat(x)
            det = _poly_pfaffian(m)
            # normalize Pf(J) = 1
            val = det.eval(self.unit)
            det = det * (Q1 / val)
        elif kind == "Herm3F":
            sh = self._herm_sharp_coords(x)
            det = _pair_coords(self.gram, x, sh) * Rational(1, 3)
        elif kind == "Spin":
            det = x[0] * x[0]
            for v in x[1:]:
                det = det - v * v
        self.det_poly = det
        if kind == "Herm3F":
            self.sharp_polys = self._herm_sharp_coords(x)
        else:
            grad = [det.derivative(i) for i in range(self.n)]
            gi = self.gram_inv
            self.sharp_polys = [
                sum((grad[j] * gi[i][j] for j in range(self.n) if gi[i][j]), Poly.zero(sp))
                for i in range(self.n)
            ]

    def _herm_sharp_coords(self, coords):
        m = self.size
        a1, a2, a3 = coords[0], coords[1], coords[2]
        x1 = list(coords[3 : 3 + m])
        x2 = list(coords[3 + m : 3 + 2 * m])
        x3 = list(coords[3 + 2 * m : 3 + 3 * m])

        def norm(u):
            return cd_real(cd_mul(u, cd_conj(u)))

        b1 = a2 * a3 - norm(x1)
        b2 = a3 * a1 - norm(x2)
        b3 = a1 * a2 - norm(x3)
        y1 = [u - v for u, v in zip(cd_mul(cd_conj(x3), cd_conj(x2)), [a1 * w for w in x1])]
        y2 = [u - v for u, v in zip(cd_mul(cd_conj(x1), cd_conj(x3)), [a2 * w for w in x2])]
        y3 = [u - v for u, v in zip(cd_mul(cd_conj(x2), cd_conj(x1)), [a3 * w for w in x3])]
        return [b1, b2, b3] + y1 + y2 + y3

    def _check_classification(self):
        expected = {
            "Sym": (self.size * (self.size + 1) // 2, self.size, 1, 0, self.size + 1),
            "Full": (self.size**2, self.size, 2, 0, 2 * self.size),
            "AltQuat": (self.size * (2 * self.size - 1), self.size, 4, 0, 2 * (2 * self.size - 1)),
            "Herm3F": (3 + 3 * self.size, 3, self.size, 0, 2 + 2 * self.size),
            "Spin": (self.size, 2, self.size - 2, 0, self.size),
        }[self.kind]
        got = (self.n, self.r, self.d, self.b, self.p)
        if got != expected:
            raise AssertionError("classification row mismatch: %s vs %s" % (got, expected))
        if self.p != 2 * self.n // self.r or self.p != self.d * (self.r - 1) + 2:
            raise AssertionError("tube-type constant relation failed")

    # -- element operations (generic coordinates) ---------------------------

    def pair(self, xc, yc):
        return _pair_coords(self.gram, xc, yc)

    def trace(self, xc):
        return self.pair(xc, self.unit)

    def D(self, xc, yc, zc):
        """Triple product D(x,y)z = 2(x(yz) + z(yx) - (xz)y)."""
        a = self.mul(xc, self.mul(yc, zc))
        b = self.mul(zc, self.mul(yc, xc))
        c = self.mul(self.mul(xc, zc), yc)
        return [(u + v - w) * 2 for u, v, w in zip(a, b, c)]

    def P(self, xc, yc):
        """Quadratic map P(x)y = 2x(xy) - x^2 y."""
        a = self.mul(xc, self.mul(xc, yc))
        b = self.mul(self.mul(xc, xc), yc)
        return [u * 2 - v for u, v in zip(a, b)]

    def P2(self, xc, yc, zc):
        """Polarized quadratic map P(x,y)z = D(x,z)y."""
        return self.D(xc, zc, yc)

    def L_matrix(self, xc):
        return self._op_matrix(lambda e: self.mul(xc, e))

    def D_matrix(self, xc, yc):
        return self._op_matrix(lambda e: self.D(xc, yc, e))

    def P_matrix(self, xc):
        return self._op_matrix(lambda e: self.P(xc, e))

    def _op_matrix(self, op):
        n = self.n
        cols = []
        for i in range(n):
            e = [Q0] * n
            e[i] = Q1
            cols.append(op(e))
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def det(self, xc):
        return self.det_poly.eval(xc)

    def sharp(self, xc):
        return [p.eval(xc) for p in self.sharp_polys]

    def inverse(self, xc):
        dv = self.det(xc)
        if not dv:
            raise ZeroDivisionError("singular element")
        inv = 1 / dv
        return [s * inv for s in self.sharp(xc)]

    def cross(self, xc, yc):
        if self.r != 3:
            raise ValueError("Freudenthal product requires a rank-3 model")
        s = self.sharp([a + b for a, b in zip(xc, yc)])
        sx = self.sharp(xc)
        sy = self.sharp(yc)
        return [u - v - w for u, v, w in zip(s, sx, sy)]

    def bergman_matrix(self, xc, yc):
        """B(x,y) = I - D(x,y) + P(x)P(y) as an n x n matrix."""
        n = self.n
        dm = self.D_matrix(xc, yc)
        pp = linalg.mat_mul(self.P_matrix(xc), self.P_matrix(yc))
        ident = linalg.mat_identity(n)
        return linalg.mat_add(linalg.mat_sub(ident, dm), pp)

    def generic_norm(self, xc, yc):
        """h(x,y) as an exact scalar at rational points."""
        kind, r = self.kind, self.r
        if r == 1:
            return Q1 - self.pair(xc, yc)
        if r == 2:
            return Q1 - self.pair(xc, yc) + self.det(xc) * self.det(yc)
        if r == 3:
            return (
                Q1
                - self.pair(xc, yc)
                + self.pair(self.sharp(xc), self.sharp(yc))
                - self.det(xc) * self.det(yc)
            )
        if kind in ("Sym", "Full"):
            mm = linalg.mat_mul(self._coords_to_mat(xc), self._coords_to_mat(yc))
            return linalg.mat_det(linalg.mat_sub(linalg.mat_identity(self._matsize), mm))
        if kind == "AltQuat":
            xj = linalg.mat_mul(self._coords_to_mat(xc), self._J)
            yj = linalg.mat_mul(self._coords_to_mat(yc), self._J)
            m = linalg.mat_mul(xj, yj)
            # h^2 = det(I - xJyJ); take the series square root via power sums
            return _sqrt_char_poly(m, self.r)
        raise AssertionError

    def frame_idempotent(self, k):
        """e^k = e_1 + ... + e_k."""
        c = [Q0] * self.n
        for f in self.frame[:k]:
            c = [a + b for a, b in zip(c, f)]
        return c

    def peirce_projector(self, cc, j):
        """Projector onto the Peirce-j eigenspace of the idempotent c."""
        c2 = self.mul(cc, cc)
        if c2 != list(cc):
            raise ValueError("not an idempotent")
        dm = self.D_matrix(cc, cc)
        n = self.n
        ident = linalg.mat_identity(n)
        proj = ident
        for jp in (0, 1, 2):
            if jp == j:
                continue
            shifted = linalg.mat_sub(dm, linalg.mat_scale(ident, Rational(jp)))
            proj = linalg.mat_mul(proj, linalg.mat_scale(shifted, Q1 / Rational(j - jp)))
        return proj

    def peirce_det_poly(self, k):
        """det of the rank-k leading Peirce block, extended to the ambient
        space as det(proj_2(x) + e - e^k)."""
        key = ("minor", k)
        if key not in self._sym_cache:
            ek = self.frame_idempotent(k)
            proj = self.peirce_projector(ek, 2)
            x = self._generic_coords()
            shifted = []
            for i in range(self.n):
                row = proj[i]
                acc = Poly.const(self.space, self.unit[i] - ek[i])
                for j in range(self.n):
                    if row[j]:
                        acc = acc + x[j] * row[j]
                shifted.append(acc)
            self._sym_cache[key] = self.det_poly.substitute(shifted)
        return self._sym_cache[key]

    def casimir_coeffs(self):
        """Coefficient polynomials of the projection operator
        L = sum (P(x) dual_a | dual_b) d_a d_b: returns {(a,b): Poly, a<=b}
        including the symmetric doubling for a<b."""
        key = "casimir"
        if key not in self._sym_cache:
            x = self._generic_coords()
            n = self.n
            x2 = self.mul(x, x)
            cols = []
            for j in range(n):
                e = [Q0] * n
                e[j] = Q1
                a = self.mul(x, self.mul(x, e))
                bb = self.mul(x2, e)
                cols.append([u * 2 - v for u, v in zip(a, bb)])
            gi = self.gram_inv
            out = {}
            for beta in range(n):
                w = [None] * n
                for j in range(n):
                    cj = gi[beta][j]
                    if not cj:
                        continue
                    col = cols[j]
                    for i in range(n):
                        v = col[i] * cj
                        w[i] = v if w[i] is None else w[i] + v
                for alpha in range(beta + 1):
                    coef = w[alpha]
                    if coef is None or not coef:
                        continue
                    if alpha != beta:
                        coef = coef * 2
                    out[(alpha, beta)] = coef
            self._sym_cache[key] = out
        return self._sym_cache[key]

    def random_coords(self, rng, scale=3, den=(1, 2)):
        return [
            Rational(rng.randint(-scale, scale), rng.choice(den)) for _ in range(self.n)
        ]

    def random_invertible(self, rng, scale=2):
        while True:
            c = self.random_coords(rng, scale)
            if self.det(c):
                return c

    def random_rank_one(self, rng):
        """A nonzero element of rank 1: a structure-group conjugate P(a)e_1
        of the first frame idempotent."""
        while True:
            a = self.random_invertible(rng, 1)
            c = self.P(a, self.frame[0])
            if not any(c):
                continue
            if self.r == 2:
                if not self.det(c):
                    return c
            elif not any(self.sharp(c)):
                return c

    def _rank_one_from_vector(self, xi):
        """Hermitian rank-one t(conj(xi)) xi for a row vector over the
        composition algebra (Herm3F only)."""
        m = self.size
        conj = [cd_conj(v) for v in xi]
        diag = [cd_real(cd_mul(conj[i], xi[i])) for i in range(3)]
        x1 = cd_mul(conj[1], xi[2])  # entry (2,3)
        x2 = cd_mul(conj[2], xi[0])  # entry (3,1)
        x3 = cd_mul(conj[0], xi[1])  # entry (1,2)
        return diag + x1 + x2 + x3


def _pair_coords(gram, xc, yc):
    acc = None
    n = len(xc)
    for i in range(n):
        xi = xc[i]
        if not xi:
            continue
        row = gram[i]
        for j in range(n):
            if row[j] and yc[j]:
                v = xi * row[j] * yc[j]
                acc = v if acc is None else acc + v
    if acc is None:
        return xc[0] * 0
    return acc


def _poly_mat_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_mat_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else m[0][0] * 0


def _poly_pfaffian(m):
    idx = list(range(len(m)))

    def pf(ids):
        if not ids:
            return None
        i0 = ids[0]
        acc = None
        for t in range(1, len(ids)):
            j = ids[t]
            if not m[i0][j]:
                continue
            rest = [k for k in ids[1:] if k != j]
            sub = pf(rest)
            term = m[i0][j] if sub is None else m[i0][j] * sub
            if (t - 1) % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = m[ids[0]][ids[1]] * 0
        return acc

    return pf(idx)


def _sqrt_char_poly(m, r):
    """sqrt(det(I - M)) for M with doubled spectrum: exact series square root
    via power sums, truncated at degree r (the exact polynomial degree)."""
    n = len(m)
    power = linalg.mat_identity(n)
    psums = []
    for _ in range(r):
        power = linalg.mat_mul(power, m)
        psums.append(sum((power[i][i] for i in range(n)), Q0))
    # log h = -(1/2) sum_k p_k/k; h = exp of that, truncated at degree r
    logc = [Q0] * (r + 1)
    for k in range(1, r + 1):
        logc[k] = -psums[k - 1] / (2 * k)
    h = [Q0] * (r + 1)
    h[0] = Q1
    # h' = (log h)' h termwise in the grading variable
    for k in range(1, r + 1):
        acc = Q0
        for j in range(1, k + 1):
            acc += j * logc[j] * h[k - j]
        h[k] = acc / k
    return sum(h[1:], h[0])


_MODEL_CACHE = {}


def make_model(kind, size=0) -> AlgebraModel:
    """Construct (and cache) a model; kinds: Sym, Full, AltQuat, Herm3O, Spin.

    Herm3O is the 27-dimensional exceptional model; Herm3F with size in
    {1,2,4} gives the Cayley-Dickson coordinate versions of Sym(3)/Full(3)/
    AltQuat(3) used by the rank-3 split-formula checks.
    """
    if kind == "Herm3O":
        kind, size = "Herm3F", 8
    key = (kind, size)
    if key not in _MODEL_CACHE:
        _MODEL_CACHE[key] = AlgebraModel(kind, size)
    return _MODEL_CACHE[key]


class Element:
    """A model element: coordinate vector over any exact coefficient ring."""

    __slots__ = ("model", "coords")

    def __init__(self, model: AlgebraModel, coords):
        if len(coords) != model.n:
            raise ValueError("coordinate length mismatch")
        self.model = model
        self.coords = list(coords)

    def __add__(self, other):
        return Element(self.model, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return Element(self.model, [a - b for a, b in zip(self.coords, other.coords)])

    def __rmul__(self, s):
        return Element(self.model, [s * a for a in self.coords])

    def __eq__(self, other):
        return self.model is other.model and self.coords == other.coords


def generic_element(model: AlgebraModel, space=None, offset=0) -> Element:
    """Element whose coordinates are the coordinate variables themselves."""
    return Element(model, model._generic_coords(space, offset))


# -- spec operation surfaces -------------------------------------------------


def structure_maps(model: AlgebraModel, xc, yc, zc):
    """x o y, L(x)y, P(x)y, P(x,y)z, D(x,y)z for same-model coordinates."""
    return {
        "mul": model.mul(xc, yc),
        "L": model.mul(xc, yc),
        "P": model.P(xc, yc),
        "P2": model.P2(xc, yc, zc),
        "D": model.D(xc, yc, zc),
    }


def det_sharp_inv(model: AlgebraModel, xc):
    out = {"det": model.det(xc), "sharp": model.sharp(xc)}
    if out["det"]:
        out["inv"] = model.inverse(xc)
    return out


def freudenthal_cross(model: AlgebraModel, xc, yc):
    return model.cross(xc, yc)


def generic_norm_bergman(model: AlgebraModel, xc, yc):
    b = model.bergman_matrix(xc, yc)
    return {"h": model.generic_norm(xc, yc), "B": b, "detB": linalg.mat_det(b)}


def peirce(model: AlgebraModel, cc, j):
    return model.peirce_projector(cc, j)


def element_to_json(model: AlgebraModel, coords):
    from .scalars import rat_to_str

    return {"kind": model.kind, "size": model.size, "coords": [rat_to_str(c) for c in coords]}
