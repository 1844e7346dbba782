"""Partitions, generalized Pochhammer symbols, highest-weight polynomials,
and the exact isotypic projection of polynomials.

The primary projection algorithm applies the invariant second-order operator
L = sum (P(x) dual_a | dual_b) d_a d_b, whose eigenvalue on the component
indexed by a partition m is  sum_j m_j (m_j - 1 - d(j-1)).  Components are
recovered from a Krylov sequence by exact Lagrange interpolation in the
eigenvalues; eigenvalue collisions are resolved by a determinant shift
(multiplication by det raises the degree, where the eigenvalues separate)
with a Fischer-Gram projection onto orbit spans as the final fallback.
"""

from __future__ import annotations

from math import comb, factorial

from . import linalg
from .jordan import AlgebraModel
from .poly import EXP_BITS, DiffOp, Poly, VarSpace, exact_divide, fischer_pair, substitute_linear
from ._accel import iadd_scaled, iadd_terms, mul_terms, scale_terms
from .scalars import Q0, Q1, RatFunc, Rational, rf

# ---------------------------------------------------------------------------
# partitions


def partitions_of(total, maxlen):
    """Weakly decreasing tuples of length maxlen (padded with zeros)."""
    out = []

    def rec(rem, maxpart, acc):
        slots = maxlen - len(acc)
        if slots == 0:
            if rem == 0:
                out.append(tuple(acc))
            return
        for part in range(min(rem, maxpart), -1, -1):
            if part * slots < rem:
                break
            rec(rem - part, part, acc + [part])

    rec(total, total, [])
    return out


class GeneralizedPartition:
    """Weakly decreasing integer tuple plus an integer determinant shift;
    represents parts + shift * (1,...,1)."""

    __slots__ = ("parts", "shift")

    def __init__(self, parts, shift=0):
        parts = tuple(int(p) for p in parts)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        self.parts = parts
        self.shift = int(shift)

    def canonical(self):
        """Move the minimal entry into the shift (nonnegative parts, last 0)."""
        if not self.parts:
            return self
        m = self.parts[-1]
        return GeneralizedPartition([p - m for p in self.parts], self.shift + m)

    def total(self):
        return sum(self.parts) + self.shift * len(self.parts)

    def entries(self):
        return tuple(p + self.shift for p in self.parts)

    def __eq__(self, other):
        return self.canonical().parts == other.canonical().parts and (
            self.canonical().shift == other.canonical().shift
        )

    def __repr__(self):
        return "GP(%s%+d)" % (self.parts, self.shift)


def rising(a, m: int):
    """(a)_m = a(a+1)...(a+m-1); a exact scalar, m >= 0."""
    if m < 0:
        raise ValueError("negative Pochhammer count")
    acc = a * 0 + 1
    for i in range(m):
        acc = acc * (a + i)
    return acc


def pochhammer_gen(base, m, d):
    """Generalized Pochhammer (base)_{m,d} = prod_j (base_j - (d/2)(j-1))_{m_j}.

    base: a single scalar/RatFunc (used for every slot) or a sequence; the
    RatFunc lambda flows through exactly.  m: integer vector with
    nonnegative entries; d: rational parameter.
    """
    m = list(m)
    if any(int(mj) != mj or mj < 0 for mj in m):
        raise ValueError("Pochhammer counts must be nonnegative integers")
    half_d = Rational(d) / 2
    seq = base if isinstance(base, (list, tuple)) else [base] * len(m)
    acc = None
    for j, (bj, mj) in enumerate(zip(seq, m)):
        if isinstance(bj, int):
            bj = Rational(bj)
        term = rising(bj - half_d * j, int(mj))
        acc = term if acc is None else acc * term
    if acc is None:
        return Q1
    return acc


def poch_lambda(svec, mvec, d):
    """(lambda + s)_{m,d} as an exact polynomial RatFunc in lambda."""
    half_d = Rational(d) / 2
    acc = RatFunc.const(1)
    for j, (sj, mj) in enumerate(zip(svec, mvec)):
        acc = acc * RatFunc.from_roots_linear(1, Rational(sj) - half_d * j, int(mj))
    return acc


def poch_affine(alpha, beta, svec, mvec, d):
    """((alpha*lam+beta) + s)_{m,d} as a polynomial RatFunc in lambda."""
    half_d = Rational(d) / 2
    acc = RatFunc.const(1)
    for j, (sj, mj) in enumerate(zip(svec, mvec)):
        acc = acc * RatFunc.from_roots_linear(alpha, Rational(beta) + Rational(sj) - half_d * j, int(mj))
    return acc


def casimir_eigenvalue(parts, d):
    """Eigenvalue of L on the component of the partition: sum m(m-1-d(j-1))."""
    d = Rational(d)
    acc = Q0
    for j, mj in enumerate(parts):
        acc += Rational(mj) * (Rational(mj) - 1 - d * j)
    return acc


# ---------------------------------------------------------------------------
# polynomial block utilities


def shift_poly(p: Poly, offset: int, space: VarSpace) -> Poly:
    """Reindex variables by offset into a larger space (packed-key shift)."""
    if offset == 0 and space.names == p.space.names:
        return Poly(space, dict(p.terms))
    sh = EXP_BITS * offset
    return Poly(space, {k << sh: c for k, c in p.terms.items()})


class SpanTracker:
    """Sparse exact row reduction over monomial keys, with combination
    tracking for Krylov dependence detection."""

    def __init__(self):
        self.rows = {}  # pivot key -> (terms dict, combo list)

    def add(self, terms, combo=None):
        """Reduce terms; store if independent (returns None) or return the
        vanishing combination in terms of previously added vectors."""
        t = dict(terms)
        c = list(combo) if combo is not None else None
        while t:
            piv = max(t)
            row = self.rows.get(piv)
            if row is None:
                coef = t[piv]
                inv = 1 / coef
                t = scale_terms(t, inv)
                if c is not None:
                    c = [x * inv for x in c]
                self.rows[piv] = (t, c)
                return None
            rt, rc = row
            coef = t[piv]
            iadd_scaled(t, rt, -coef)
            if c is not None:
                n = max(len(c), len(rc))
                c = c + [Q0] * (n - len(c))
                for i, v in enumerate(rc):
                    c[i] = c[i] - coef * v
        return c if c is not None else []

    @property
    def rank(self):
        return len(self.rows)


class BlockAlgebra:
    """A Jordan-algebra variable block inside an ambient variable space;
    provides determinants, highest-weight polynomials, and the isotypic
    decomposition of polynomials in the block variables (other variables
    ride along as passive coefficients)."""

    def __init__(self, model: AlgebraModel, space: VarSpace = None, offset: int = 0):
        self.model = model
        self.space = space if space is not None else model.space
        self.offset = offset
        self.det = shift_poly(model.det_poly, offset, self.space)
        self._cache = {}

    # -- basic polynomials --

    def minor(self, k):
        key = ("minor", k)
        if key not in self._cache:
            self._cache[key] = shift_poly(self.model.peirce_det_poly(k), self.offset, self.space)
        return self._cache[key]

    def delta(self, parts):
        """Highest-weight polynomial: product of leading Peirce minors."""
        r = self.model.r
        parts = tuple(parts) + (0,) * (r - len(parts))
        key = ("delta", parts)
        if key not in self._cache:
            acc = Poly.const(self.space, 1)
            for k in range(1, r + 1):
                e = parts[k - 1] - (parts[k] if k < r else 0)
                if e:
                    acc = acc * self.minor(k) ** e
            self._cache[key] = acc
        return self._cache[key]

    def pairing_poly(self, coords):
        """(x | c) as a linear polynomial in the block variables."""
        g = self.model.gram
        n = self.model.n
        terms = {}
        for i in range(n):
            v = sum((g[i][j] * coords[j] for j in range(n) if coords[j]), Q0)
            if v:
                terms[1 << (EXP_BITS * (self.offset + i))] = v
        return Poly(self.space, terms)

    def pairing_poly_from(self, poly_coords, const_coords):
        """(v(x) | c) for a vector of polynomial coordinates."""
        g = self.model.gram
        n = self.model.n
        acc = Poly.zero(self.space)
        for i in range(n):
            w = sum((g[i][j] * const_coords[j] for j in range(n) if const_coords[j]), Q0)
            if w and poly_coords[i]:
                acc = acc + poly_coords[i] * w
        return acc

    def generic_coords(self):
        return [Poly.variable(self.space, self.offset + i) for i in range(self.model.n)]

    def subs_matrix(self, block_matrix):
        """Extend a block coordinate map to the ambient space (identity on
        the passive variables)."""
        n = self.space.n
        full = [[Q0] * n for _ in range(n)]
        for i in range(n):
            full[i][i] = Q1
        bn = self.model.n
        for i in range(bn):
            for j in range(bn):
                full[self.offset + i][self.offset + j] = block_matrix[i][j]
        return full

    def substitute_P(self, f: Poly, a_coords) -> Poly:
        """f composed with the quadratic map P(a) on the block."""
        return substitute_linear(f, self.subs_matrix(self.model.P_matrix(a_coords)))

    def block_degree(self, key):
        return self.space.degree_of_key(key, self.offset, self.offset + self.model.n)

    def deg(self, f: Poly):
        return f.degree_in(self.offset, self.offset + self.model.n)

    def sharp_subs(self, f: Poly) -> Poly:
        """f with the block variables replaced by the adjugate coordinate
        polynomials (the sharp pullback f(y#))."""
        images = []
        sp = self.space
        for i in range(sp.n):
            if self.offset <= i < self.offset + self.model.n:
                images.append(shift_poly(self.model.sharp_polys[i - self.offset], self.offset, sp))
            else:
                images.append(Poly.variable(sp, i))
        return f.substitute(images)

    # -- the casimir-type operator --

    def casimir_parts(self):
        key = "casimir"
        if key not in self._cache:
            coeffs = self.model.casimir_coeffs()
            parts = []
            for (a, b), cpoly in coeffs.items():
                parts.append((shift_poly(cpoly, self.offset, self.space), a + self.offset, b + self.offset))
            self._cache[key] = parts
        return self._cache[key]

    def casimir_apply(self, f: Poly) -> Poly:
        acc = {}
        for cpoly, a, b in self.casimir_parts():
            g = f.derivative(a).derivative(b)
            if g:
                iadd_terms(acc, mul_terms(cpoly.terms, g.terms))
        return Poly(self.space, acc)

    def casimir_diffop(self) -> DiffOp:
        return DiffOp(self.space, [(c, (a, b)) for c, a, b in self.casimir_parts()])

    def eigenvalue(self, parts):
        return casimir_eigenvalue(parts, self.model.d)

    # -- isotypic decomposition --

    def decompose(self, f: Poly, certify=False):
        """Decompose f (homogeneous in the block variables) into isotypic
        components: returns {partition: Poly}.  Passive variables ride along.
        """
        if not f:
            return {}
        deg = self.deg(f)
        if not f.is_homogeneous(self.offset, self.offset + self.model.n):
            raise ValueError("block-inhomogeneous input")
        comps = self._decompose_hom(f, deg, depth=0)
        if certify:
            total = Poly.zero(self.space)
            for parts, g in comps.items():
                lg = self.casimir_apply(g)
                eps = self.eigenvalue(parts)
                if lg != g * eps:
                    raise AssertionError("component certification failed for %s" % (parts,))
                total = total + g
            if total != f:
                raise AssertionError("decomposition does not sum back")
        return comps

    def _decompose_hom(self, f, deg, depth):
        cands = partitions_of(deg, self.model.r)
        eps_of = {parts: self.eigenvalue(parts) for parts in cands}
        # Krylov sequence with exact dependence detection
        tracker = SpanTracker()
        seq = [f]
        combo = [Q1]
        rel = tracker.add(f.terms, [Q1])
        while rel is None:
            nxt = self.casimir_apply(seq[-1])
            seq.append(nxt)
            combo = [Q0] * len(seq)
            combo[-1] = Q1
            rel = tracker.add(nxt.terms, combo)
            if len(seq) > len(cands) + 1:
                raise AssertionError("Krylov sequence failed to terminate")
        # rel is the monic annihilator: sum rel_i L^i f = 0, rel[-1] = 1
        ann = list(rel)
        if len(ann) < len(seq):
            ann += [Q0] * (len(seq) - len(ann))
        if ann[-1] != 1:
            raise AssertionError("annihilator is not monic")
        roots = self._integer_roots(ann, set(eps_of.values()))
        # Lagrange components per root
        out = {}
        for eps in roots:
            quot = _synth_div(ann, eps)
            scale = _poly_eval_list(quot, eps)
            comp_terms = {}
            for c, g in zip(quot, seq):
                if c and g:
                    iadd_scaled(comp_terms, g.terms, c / scale)
            comp = Poly(self.space, comp_terms)
            if not comp:
                continue
            labels = [p for p, e in eps_of.items() if e == eps]
            if len(labels) == 1:
                out[labels[0]] = comp
            else:
                out.update(self._split_collision(comp, labels, depth))
        return out

    def _integer_roots(self, ann, candidate_set):
        roots = []
        poly = list(ann)
        while len(poly) > 1:
            root = None
            for cand in sorted(candidate_set):
                if not _poly_eval_list(poly, cand):
                    root = cand
                    break
            if root is None:
                raise AssertionError("annihilator has a root outside the eigenvalue set")
            if root in roots:
                raise AssertionError("repeated eigenvalue in annihilator (non-semisimple)")
            roots.append(root)
            poly = _synth_div(poly, root)
        return roots

    def _split_collision(self, comp, labels, depth):
        """comp is a sum of components whose partitions share the eigenvalue;
        separate by determinant shift, with Gram projection as last resort."""
        if depth < 3:
            shifted = self.det * comp
            deg = self.deg(shifted)
            sub = self._decompose_hom(shifted, deg, depth + 1)
            out = {}
            residual = comp
            ok = True
            for parts in labels:
                up = tuple(p + 1 for p in parts)
                if up in sub:
                    try:
                        g = exact_divide(sub[up], self.det)
                    except ArithmeticError:
                        ok = False
                        break
                    out[parts] = g
                    residual = residual - g
            if ok and not residual:
                return out
        # Gram fallback on orbit spans
        out = {}
        residual = comp
        for parts in labels:
            g = self.gram_project(comp, parts)
            if g:
                out[parts] = g
                residual = residual - g
        if residual:
            raise AssertionError(
                "eigenvalue collision could not be resolved for %s" % (labels,)
            )
        return out

    def project(self, f: Poly, parts, certify=False) -> Poly:
        """Orthogonal projection onto the component of the partition."""
        parts = tuple(parts) + (0,) * (self.model.r - len(parts))
        if not f:
            return f
        deg = self.deg(f)
        if deg != sum(parts):
            raise ValueError("projection of a block-inhomogeneous or wrong-degree input")
        comps = self.decompose(f, certify=certify)
        return comps.get(parts, Poly.zero(self.space))

    # -- orbit spans, dimensions, Gram projection --

    def orbit_basis(self, parts, rng=None, stable_batches=3):
        """A spanning basis of the isotypic component, generated from the
        highest-weight polynomial by products of quadratic maps P(a)."""
        import random

        parts = tuple(parts) + (0,) * (self.model.r - len(parts))
        key = ("orbit", parts)
        if key in self._cache:
            return self._cache[key]
        rng = rng if rng is not None else random.Random(20240801 + sum(parts))
        seed = self.delta(parts)
        tracker = SpanTracker()
        basis = []
        tracker.add(seed.terms)
        basis.append(seed)
        stable = 0
        while stable < stable_batches:
            grew = False
            for _ in range(4):
                g = seed
                for _ in range(rng.randint(1, 3)):
                    a = self.model.random_invertible(rng, 2)
                    g = self.substitute_P(g, a)
                if tracker.add(g.terms) is None:
                    basis.append(g)
                    grew = True
            stable = 0 if grew else stable + 1
        self._cache[key] = basis
        return basis

    def dim_component(self, parts):
        return len(self.orbit_basis(parts))

    def gram_project(self, f: Poly, parts) -> Poly:
        """Fischer-Gram projection onto the orbit span of the component.
        Passive variables are carried through the linear solve."""
        basis = self.orbit_basis(parts)
        gram = [
            [self.fischer_block(bi, bj) for bj in basis] for bi in basis
        ]
        rhs = [self.fischer_block_poly(f, bi) for bi in basis]
        coeffs = _solve_poly_rhs(gram, rhs)
        acc = Poly.zero(self.space)
        for c, bi in zip(coeffs, basis):
            if c:
                acc = acc + Poly(self.space, mul_terms(c.terms, bi.terms))
        return acc

    def fischer_block(self, f: Poly, g: Poly):
        """Scalar Fischer pairing of two polynomials in the block variables."""
        return fischer_pair(
            f, g, self.model.gram_inv, self.offset, self.offset + self.model.n
        )

    def fischer_block_poly(self, f: Poly, g: Poly) -> Poly:
        """Fischer-contract the block variables of f against g (block-only);
        the result is a polynomial in the passive variables."""
        n = self.model.n
        sp = self.space
        gi = self.model.gram_inv
        full = [[Q0] * sp.n for _ in range(sp.n)]
        for i in range(sp.n):
            full[i][i] = Q1
        for i in range(n):
            for j in range(n):
                full[self.offset + i][self.offset + j] = gi[i][j]
        h = substitute_linear(g, full)
        lo, hi = self.offset, self.offset + n
        mask = 0
        for i in range(lo, hi):
            mask |= EXP_MASK_AT(i)
        out = {}
        for k, c in h.terms.items():
            kb = k & mask
            kp = k - kb
            w = Q1
            for i in range(lo, hi):
                e = sp.exponent(k, i)
                if e > 1:
                    w *= factorial(e)
            # match every f-term whose block part equals kb
            for fk, fc in f.terms.items():
                if fk & mask == kb:
                    pk = (fk - kb) + kp
                    v = fc * c * w
                    prev = out.get(pk)
                    out[pk] = v if prev is None else prev + v
        for k in [k for k, v in out.items() if not v]:
            del out[k]
        return Poly(sp, out)


def EXP_MASK_AT(i):
    return ((1 << EXP_BITS) - 1) << (EXP_BITS * i)


def _synth_div(coeffs, root):
    """Divide sum c_i t^i by (t - root); exact, remainder discarded."""
    n = len(coeffs)
    out = [Q0] * (n - 1)
    out[n - 2] = coeffs[n - 1]
    for i in range(n - 3, -1, -1):
        out[i] = coeffs[i + 1] + out[i + 1] * root
    return out


def _poly_eval_list(coeffs, x):
    acc = Q0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _solve_poly_rhs(gram, rhs):
    """Solve gram * c = rhs where gram is rational and rhs entries are
    polynomials (or scalars)."""
    n = len(gram)
    m = [row[:] for row in gram]
    b = list(rhs)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular Fischer Gram matrix")
        m[col], m[piv] = m[piv], m[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        b[col] = b[col] * inv
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                b[r] = b[r] - b[col] * f
    return b


# ---------------------------------------------------------------------------
# DetNormalized: polynomial divided by a determinant power


class DetNormalized:
    """numerator / det^power over a designated block determinant."""

    __slots__ = ("num", "power", "det")

    def __init__(self, num: Poly, power: int, det: Poly):
        self.num = num
        self.power = int(power)
        self.det = det

    @staticmethod
    def of(num: Poly, det: Poly, power=0):
        return DetNormalized(num, power, det)

    def align(self, other: "DetNormalized"):
        p = max(self.power, other.power)
        a = self.num * self.det ** (p - self.power)
        b = other.num * other.det ** (p - other.power)
        return a, b, p

    def __add__(self, other):
        if isinstance(other, Poly):
            other = DetNormalized(other, 0, self.det)
        a, b, p = self.align(other)
        return DetNormalized(a + b, p, self.det)

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = DetNormalized(other, 0, self.det)
        a, b, p = self.align(other)
        return DetNormalized(a - b, p, self.det)

    def __mul__(self, other):
        if isinstance(other, DetNormalized):
            return DetNormalized(self.num * other.num, self.power + other.power, self.det)
        return DetNormalized(self.num * other, self.power, self.det)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.num)

    def eq_cross(self, other) -> bool:
        if isinstance(other, Poly):
            other = DetNormalized(other, 0, self.det)
        a, b, _ = self.align(other)
        return a == b

    def reduce(self):
        num, power = self.num, self.power
        while power > 0 and num:
            try:
                num = exact_divide(num, self.det)
                power -= 1
            except ArithmeticError:
                break
        return DetNormalized(num, power, self.det)

    def derivative(self, i):
        dnum = self.num.derivative(i)
        if self.power == 0:
            return DetNormalized(dnum, 0, self.det)
        ddet = self.det.derivative(i)
        num = dnum * self.det - (self.num * ddet) * Rational(self.power)
        return DetNormalized(num, self.power + 1, self.det)

    def apply_diffop(self, op: DiffOp) -> "DetNormalized":
        acc = None
        for coef, idx in op.parts:
            g = self
            for i in idx:
                g = g.derivative(i)
            term = DetNormalized(coef * g.num if isinstance(coef, Poly) else g.num * coef, g.power, self.det)
            acc = term if acc is None else acc + term
        if acc is None:
            return DetNormalized(Poly.zero(self.num.space), 0, self.det)
        return acc.reduce()


# ---------------------------------------------------------------------------
# spec operation surfaces


def delta_m(model: AlgebraModel, m, space=None, offset=0):
    """Highest-weight polynomial for a (generalized) partition; negative
    shifts produce a DetNormalized."""
    block = BlockAlgebra(model, space, offset)
    if isinstance(m, GeneralizedPartition):
        gp = m.canonical()
        base = block.delta(gp.parts)
        if gp.shift >= 0:
            return base * block.det**gp.shift
        return DetNormalized(base, -gp.shift, block.det)
    return block.delta(tuple(m))


def casimir_L(model: AlgebraModel):
    """(operator, eigenvalue function) of the invariant projection operator."""
    block = BlockAlgebra(model)
    return block.casimir_diffop(), lambda parts: casimir_eigenvalue(parts, model.d)


def proj_m(model: AlgebraModel, f: Poly, parts, certify=False) -> Poly:
    block = BlockAlgebra(model, f.space, 0)
    parts = tuple(parts)
    full = tuple(parts) + (0,) * (model.r - len(parts))
    if f.total_degree() != sum(full):
        return Poly.zero(f.space)
    return block.project(f, full, certify=certify)


def dim_Pm(model: AlgebraModel, parts) -> int:
    return BlockAlgebra(model).dim_component(tuple(parts))


def graded_dimension_check(model: AlgebraModel, max_degree: int):
    """Certify sum of component dimensions against the full graded dimension."""
    block = BlockAlgebra(model)
    table = []
    for deg in range(max_degree + 1):
        total = 0
        for parts in partitions_of(deg, model.r):
            dim = block.dim_component(parts)
            table.append((deg, parts, dim))
            total += dim
        expect = comb(model.n + deg - 1, deg)
        if total != expect:
            raise AssertionError(
                "graded dimension mismatch at degree %d: %d vs %d" % (deg, total, expect)
            )
    return table


def proj_rank_one_products(model: AlgebraModel, k, l, m, y_coords, z_coords, variant):
    """Closed-form projections of (x|y)^l (x^inv|z)^k and (x|y)^l (x|z)^k
    (both sides returned in determinant-cleared polynomial form).

    variant 'inv':   target (l-m, 0,...,0, m-k), cleared by det^k;
    variant 'plain': target (k+l-m, m, 0,...,0).
    Returns (closed_form, brute_force) as Polys on the model space.
    """
    block = BlockAlgebra(model)
    sp = block.space
    d = Rational(model.d)
    r = model.r
    py = block.pairing_poly(y_coords)
    pz = block.pairing_poly(z_coords)
    if variant == "inv":
        psz = block.pairing_poly_from(model.sharp_polys, z_coords)
        prefac = Q1 / (rising(Rational(-k - l + m) - d / 2 * (r - 1), m) * factorial(m))
        if m % 2:
            prefac = -prefac
        acc = Poly.zero(sp)
        yz = model.pair(y_coords, z_coords)
        for j in range(m, min(k, l) + 1):
            c = (
                rising(Rational(-k), j)
                * rising(Rational(-l), j)
                / (rising(Rational(-k - l + 2 * m) - d / 2 * (r - 1) + 1, j - m) * factorial(j - m))
            )
            c = c * yz**j
            if c:
                acc = acc + c * (py ** (l - j) * psz ** (k - j) * block.det**j)
        closed = prefac * acc
        target = (k + l - m,) + (k,) * (r - 2) + (m,)
        brute = block.project(py**l * psz**k, target)
        return closed, brute
    if variant == "plain":
        prefac = Q1 / (rising(Rational(-k - l + m) - d / 2, m) * factorial(m))
        if m % 2:
            prefac = -prefac
        x = block.generic_coords()
        pxy_pxz = py * pz
        pPxyz = block.pairing_poly_from(model.P(x, y_coords), z_coords)
        mixed = pxy_pxz - pPxyz
        acc = Poly.zero(sp)
        for j in range(m, min(k, l) + 1):
            c = (
                rising(Rational(-k), j)
                * rising(Rational(-l), j)
                / (rising(Rational(-k - l + 2 * m) - d / 2 + 1, j - m) * factorial(j - m))
            )
            if c:
                acc = acc + c * (py ** (l - j) * pz ** (k - j) * mixed**j)
        closed = prefac * acc
        target = (k + l - m, m) + (0,) * (r - 2)
        brute = block.project(py**l * pz**k, target)
        return closed, brute
    raise ValueError("variant must be 'inv' or 'plain'")
