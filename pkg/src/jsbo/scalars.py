"""Exact scalar arithmetic: arbitrary-precision rationals and the field of
rational functions in one formal parameter lambda.

Rationals are gmpy2.mpq values (canonical by construction: reduced, positive
denominator).  fractions.Fraction is used as a drop-in fallback when gmpy2 is
unavailable.  RatFunc is a reduced quotient of dense univariate polynomials
over the rationals with monic denominator, so equality is structural.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rational

    _BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

    _BACKEND = "fractions"

Q0 = Rational(0)
Q1 = Rational(1)


def rat(p, q=1) -> Rational:
    return Rational(p, q)


def rat_from_str(s: str) -> Rational:
    return Rational(s)


def rat_to_str(x) -> str:
    """Serialize as "p/q" (explicit denominator, canonical form)."""
    x = Rational(x)
    return "%d/%d" % (x.numerator, x.denominator)


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a pole; carries the point."""

    def __init__(self, point):
        self.point = point
        super().__init__("pole at lambda = %s" % (point,))


# -- dense univariate polynomials over Rational (constant term first) --------


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _trim(out)


def _pneg(a):
    return [-x for x in a]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pscale(a, s):
    if not s:
        return []
    return [x * s for x in a]


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Q0] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        coef = a[-1] * inv
        deg = len(a) - len(b)
        if coef:
            q[deg] = coef
            for i, y in enumerate(b):
                a[deg + i] = a[deg + i] - coef * y
        a.pop()
    return _trim(q), _trim(a)


def _pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = [x * inv for x in a]  # monic
    return a


def _peval(a, x):
    acc = Q0
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RatFunc:
    """Rational function in lambda: reduced, monic denominator, immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = [Q1]
        num = _trim([Rational(c) for c in num])
        den = _trim([Rational(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = [Q1]
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    inv = 1 / lc
                    num = _pscale(num, inv)
                    den = _pscale(den, inv)
        self.num = tuple(num)
        self.den = tuple(den)
        self._hash = None

    # -- construction helpers --

    @staticmethod
    def const(x) -> "RatFunc":
        x = Rational(x)
        return RatFunc([x] if x else [], [Q1], _reduced=True)

    @staticmethod
    def lam() -> "RatFunc":
        return RatFunc([Q0, Q1], [Q1], _reduced=True)

    @staticmethod
    def from_roots_linear(alpha, beta, count: int) -> "RatFunc":
        """Product (alpha*lam + beta)(alpha*lam + beta + 1)...; count factors."""
        alpha, beta = Rational(alpha), Rational(beta)
        acc = [Q1]
        for i in range(count):
            acc = _pmul(acc, [beta + i, alpha])
        return RatFunc(acc, [Q1])

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == (Q1,)

    def poly_coeffs(self):
        if not self.is_polynomial():
            raise ValueError("not a polynomial: denominator %s" % (list(self.den),))
        return list(self.num)

    def degree_bounds(self):
        """(numerator degree, denominator degree); zero numerator gives (-1, d)."""
        return len(self.num) - 1, len(self.den) - 1

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        return RatFunc.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        num = _padd(_pmul(list(self.num), list(o.den)), _pmul(list(o.num), list(self.den)))
        return RatFunc(num, _pmul(list(self.den), list(o.den)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(list(self.num)), list(self.den), _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(_pmul(list(self.num), list(o.num)), _pmul(list(self.den), list(o.den)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_pmul(list(self.num), list(o.den)), _pmul(list(self.den), list(o.num)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.const(1) / self ** (-k)
        acc = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, type(Q0))):
            return self == RatFunc.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def eval(self, point) -> Rational:
        point = Rational(point)
        d = _peval(list(self.den), point)
        if not d:
            raise PoleError(point)
        return _peval(list(self.num), point) / d

    def poles(self):
        """Rational roots of the reduced denominator (all our denominators
        split into linear factors over Q, so this is the full pole set)."""
        den = list(self.den)
        roots = []
        # rational root extraction by repeated synthetic division
        while len(den) > 1:
            root = _rational_root(den)
            if root is None:
                break
            roots.append(root)
            den = _pdivmod(den, [-root, Q1])[0]
        return roots

    # -- serialization --

    def to_json(self):
        return {"num": [rat_to_str(c) for c in self.num], "den": [rat_to_str(c) for c in self.den]}

    @staticmethod
    def from_json(obj):
        return RatFunc([rat_from_str(c) for c in obj["num"]], [rat_from_str(c) for c in obj["den"]])

    def __repr__(self):
        def fmt(cs):
            parts = []
            for i, c in enumerate(cs):
                if not c:
                    continue
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append("%s*L" % c)
                else:
                    parts.append("%s*L^%d" % (c, i))
            return " + ".join(parts) if parts else "0"

        if self.is_polynomial():
            return fmt(self.num)
        return "(%s)/(%s)" % (fmt(self.num), fmt(self.den))


def _rational_root(den):
    """One rational root of a monic rational-coefficient polynomial, or None."""
    # clear denominators: integer polynomial a_n x^n + ... + a_0
    from math import gcd

    lcm = 1
    for c in den:
        lcm = lcm * c.denominator // gcd(lcm, int(c.denominator))
    ints = [int(c * lcm) for c in den]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return Q0
    cands = set()
    for p in _divisors(abs(a0)):
        for q in _divisors(abs(an)):
            cands.add(Rational(p, q))
            cands.add(Rational(-p, q))
    for r in sorted(cands):
        if not _peval(den, r):
            return r
    return None


def _divisors(n):
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return out


RF0 = RatFunc.const(0)
RF1 = RatFunc.const(1)
LAM = RatFunc.lam()


def rf(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc.const(x)


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field operation on rational functions; div rejects zero divisor."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def ratfunc_eval(a: RatFunc, point) -> Rational:
    """Exact evaluation; raises PoleError at poles of the reduced form."""
    return a.eval(point)


def sqrt_exact(x):
    """Exact square root of a rational that is a perfect square."""
    from math import isqrt

    x = Rational(x)
    if x < 0:
        raise ValueError("negative")
    n, d = int(x.numerator), int(x.denominator)
    pn, pd = isqrt(n), isqrt(d)
    if pn * pn != n or pd * pd != d:
        raise ValueError("%s is not a perfect square" % x)
    return Rational(pn, pd)
