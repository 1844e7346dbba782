"""Sparse multivariate polynomials over exact scalars, with the linear
substitution, dual-basis differential operators, and Fischer pairing used by
the projection machinery.

Exponent vectors are packed into a single integer key (16 bits per variable),
so monomial multiplication is integer addition.  Coefficients are generic
exact scalars: gmpy2 rationals, RatFunc values, or anything with compatible
ring operators and falsy zero.
"""

from __future__ import annotations

from math import factorial

from ._accel import iadd_scaled, iadd_terms, mul_terms, scale_terms
from .scalars import Q1, Rational, rat_from_str, rat_to_str

EXP_BITS = 16
EXP_MASK = (1 << EXP_BITS) - 1


class VarSpace:
    """An ordered set of variables; owns the exponent-packing codec."""

    __slots__ = ("names", "n", "_shifts")

    def __init__(self, names):
        self.names = tuple(names)
        self.n = len(self.names)
        self._shifts = tuple(EXP_BITS * i for i in range(self.n))

    def pack(self, exps):
        key = 0
        for i, e in enumerate(exps):
            if e:
                key |= e << self._shifts[i]
        return key

    def unpack(self, key):
        return tuple((key >> s) & EXP_MASK for s in self._shifts)

    def degree_of_key(self, key, lo=0, hi=None):
        if hi is None:
            hi = self.n
        d = 0
        for i in range(lo, hi):
            d += (key >> self._shifts[i]) & EXP_MASK
        return d

    def exponent(self, key, i):
        return (key >> self._shifts[i]) & EXP_MASK

    def sort_key(self, key):
        # graded reverse lexicographic: higher degree first, ties broken by
        # smaller exponent in the last distinct variable
        e = self.unpack(key)
        return (sum(e),) + tuple(-e[j] for j in range(self.n - 1, -1, -1))

    def __repr__(self):
        return "VarSpace(%s)" % (",".join(self.names))


def _as_coeff(c):
    return Rational(c) if isinstance(c, int) else c


class Poly:
    """Immutable-by-convention sparse polynomial on a VarSpace."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms=None):
        self.space = space
        self.terms = {} if terms is None else terms

    # -- constructors --

    @staticmethod
    def zero(space):
        return Poly(space, {})

    @staticmethod
    def const(space, c):
        c = _as_coeff(c)
        return Poly(space, {0: c} if c else {})

    @staticmethod
    def variable(space, i):
        return Poly(space, {1 << (EXP_BITS * i): Q1})

    @staticmethod
    def monomial(space, exps, c=1):
        c = _as_coeff(c)
        return Poly(space, {space.pack(exps): c} if c else {})

    def copy(self):
        return Poly(self.space, dict(self.terms))

    # -- ring structure --

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.space is not other.space and self.space.names != other.space.names:
            raise ValueError("variable-space mismatch: %s vs %s" % (self.space, other.space))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.space, other)
        self._check(other)
        out = dict(self.terms)
        iadd_terms(out, other.terms)
        return Poly(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.space, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return Poly(self.space, mul_terms(self.terms, other.terms))
        other = _as_coeff(other)
        if not other:
            return Poly(self.space, {})
        return Poly(self.space, scale_terms(self.terms, other))

    def __rmul__(self, other):
        other = _as_coeff(other)
        if not other:
            return Poly(self.space, {})
        return Poly(self.space, {k: other * c for k, c in self.terms.items()})

    def __truediv__(self, scalar):
        return self * (Q1 / _as_coeff(scalar))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        acc = Poly.const(self.space, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.space.names == other.space.names and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space.names, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    # -- structure queries --

    def total_degree(self):
        sp = self.space
        return max((sp.degree_of_key(k) for k in self.terms), default=-1)

    def degree_in(self, lo, hi):
        sp = self.space
        return max((sp.degree_of_key(k, lo, hi) for k in self.terms), default=-1)

    def homogeneous_component(self, deg, lo=0, hi=None):
        sp = self.space
        return Poly(sp, {k: c for k, c in self.terms.items() if sp.degree_of_key(k, lo, hi) == deg})

    def is_homogeneous(self, lo=0, hi=None):
        sp = self.space
        degs = {sp.degree_of_key(k, lo, hi) for k in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps):
        return self.terms.get(self.space.pack(exps), 0)

    def sorted_terms(self):
        sp = self.space
        return sorted(self.terms.items(), key=lambda kv: sp.sort_key(kv[0]), reverse=True)

    def leading(self):
        sp = self.space
        key = max(self.terms, key=sp.sort_key)
        return key, self.terms[key]

    def map_coeffs(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return Poly(self.space, out)

    # -- calculus --

    def derivative(self, i):
        """Plain coordinate partial derivative."""
        shift = EXP_BITS * i
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & EXP_MASK
            if e:
                out[k - (1 << shift)] = c * e
        return Poly(self.space, out)

    def directional(self, vec):
        """Directional derivative along a coordinate vector of scalars."""
        out = {}
        for i, v in enumerate(vec):
            if v:
                iadd_scaled(out, self.derivative(i).terms, v)
        return Poly(self.space, out)

    def eval(self, point):
        sp = self.space
        acc = None
        for k, c in self.terms.items():
            v = c
            for i in range(sp.n):
                e = sp.exponent(k, i)
                if e:
                    v = v * point[i] ** e
            acc = v if acc is None else acc + v
        return acc if acc is not None else Rational(0)

    def substitute(self, images):
        """Full composition: variable i is replaced by images[i] (Poly)."""
        space_out = images[0].space
        sp = self.space
        pow_cache = [{} for _ in range(sp.n)]

        def power(i, e):
            cache = pow_cache[i]
            p = cache.get(e)
            if p is None:
                p = images[i] ** e
                cache[e] = p
            return p

        acc = {}
        for k, c in self.terms.items():
            prod = None
            for i in range(sp.n):
                e = sp.exponent(k, i)
                if e:
                    p = power(i, e)
                    prod = p if prod is None else prod * p
            if prod is None:
                iadd_terms(acc, {0: c})
            else:
                iadd_scaled(acc, prod.terms, c)
        return Poly(space_out, acc)

    def to_json(self):
        return {
            "vars": list(self.space.names),
            "terms": [
                {"exp": list(self.space.unpack(k)), "coef": _coef_json(c)}
                for k, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(obj, space=None):
        from .scalars import RatFunc

        if space is None:
            space = VarSpace(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            c = t["coef"]
            if isinstance(c, str):
                coef = rat_from_str(c)
            else:
                coef = RatFunc.from_json(c)
            terms[space.pack(t["exp"])] = coef
        return Poly(space, terms)

    def __repr__(self):
        items = self.sorted_terms()[:8]
        sp = self.space
        parts = []
        for k, c in items:
            mono = "*".join(
                "%s^%d" % (sp.names[i], sp.exponent(k, i)) if sp.exponent(k, i) > 1 else sp.names[i]
                for i in range(sp.n)
                if sp.exponent(k, i)
            )
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        tail = " + ..." if len(self.terms) > 8 else ""
        return " + ".join(parts) + tail if parts else "0"


def _coef_json(c):
    from .scalars import RatFunc

    if isinstance(c, RatFunc):
        return c.to_json()
    return rat_to_str(c)


def substitute_linear(f: Poly, matrix, space_out=None) -> Poly:
    """f(A y): variable i is replaced by the linear form sum_j A[i][j] y_j."""
    sp = space_out if space_out is not None else f.space
    images = []
    for i in range(f.space.n):
        row = matrix[i]
        terms = {}
        for j, a in enumerate(row):
            a = _as_coeff(a)
            if a:
                terms[1 << (EXP_BITS * j)] = a
        images.append(Poly(sp, terms))
    return f.substitute(images)


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Exact multivariate division (raises if the remainder is nonzero)."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    sp = f.space
    gkey, gc = g.leading()
    gexp = sp.unpack(gkey)
    rem = dict(f.terms)
    quot = {}
    while rem:
        key = max(rem, key=sp.sort_key)
        c = rem[key]
        e = sp.unpack(key)
        if any(e[i] < gexp[i] for i in range(sp.n)):
            raise ArithmeticError("inexact polynomial division")
        qc = c / gc
        qkey = key - gkey
        quot[qkey] = qc
        iadd_scaled(rem, mul_terms({qkey: qc}, g.terms), Rational(-1))
    return Poly(sp, quot)


class DiffOp:
    """Finite sum of (polynomial coefficient, plain partial-derivative
    multi-index) pairs acting on polynomials in the same variable space."""

    __slots__ = ("space", "parts")

    def __init__(self, space: VarSpace, parts):
        self.space = space
        self.parts = [(c, tuple(idx)) for c, idx in parts if c]

    def apply(self, f: Poly) -> Poly:
        acc = {}
        cache = {}
        for coef, idx in self.parts:
            g = cache.get(idx)
            if g is None:
                g = f
                for i in idx:
                    g = g.derivative(i)
                    if not g:
                        break
                cache[idx] = g
            if not g:
                continue
            if isinstance(coef, Poly):
                iadd_terms(acc, mul_terms(coef.terms, g.terms))
            else:
                iadd_scaled(acc, g.terms, coef)
        return Poly(self.space, acc)

    @staticmethod
    def from_symbol(g: Poly, gram_inv, var_offset=0, full_space=None) -> "DiffOp":
        """The operator g(d) with derivatives taken in the basis dual to the
        coordinate basis: substitute the Gram-inverse, then read monomials as
        plain partial derivative multi-indices.

        g lives on a block of n variables; gram_inv is the n x n Gram inverse
        of that block; var_offset places the block inside full_space.
        """
        h = substitute_linear(g, gram_inv)
        sp = full_space if full_space is not None else g.space
        parts = []
        for k, c in h.sorted_terms():
            e = h.space.unpack(k)
            idx = []
            for i, ei in enumerate(e):
                idx.extend([i + var_offset] * ei)
            parts.append((Poly.const(sp, 1) * c, tuple(idx)))
        return DiffOp(sp, parts)


def fischer_pair(f: Poly, g: Poly, gram_inv, lo=0, hi=None):
    """Bilinear Fischer pairing <f,g> = [g(d)f](0) with Gram-dual derivatives.

    Both inputs live on the same space; the pairing contracts the variables
    in [lo, hi) (all of them by default); remaining variables must not occur.
    """
    sp = f.space
    n = sp.n if hi is None else hi - lo
    if lo == 0 and (hi is None or hi == sp.n):
        h = substitute_linear(g, gram_inv)
    else:
        full = [[0] * sp.n for _ in range(sp.n)]
        for i in range(n):
            for j in range(n):
                full[lo + i][lo + j] = gram_inv[i][j]
        h = substitute_linear(g, full)
    acc = None
    for k, c in h.terms.items():
        fc = f.terms.get(k)
        if fc is None:
            continue
        w = Q1
        for i in range(sp.n):
            e = sp.exponent(k, i)
            if e > 1:
                w *= factorial(e)
        v = fc * c * w
        acc = v if acc is None else acc + v
    return acc if acc is not None else Rational(0)
