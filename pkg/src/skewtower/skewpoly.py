"""Twisted polynomial rings h[t; s] with left coefficients.

Elements are finite sums ``a_i t^i`` with ``a_i`` in a subfield h of the
ambient field, multiplied with the commutation rule ``t a = s(a) t`` where
``s`` is a power of Frobenius.  Coefficients are stored sparsely as
``{degree: encoded field element}``; zero coefficients are never stored.
"""

from __future__ import annotations

import math

from .ffield import AutDescriptor, FieldElem


class SkewRing:
    """The ring h[t, Frob^twist] where h is the degree-``level`` subfield.

    ``order`` is the order of the twist on h, so ``t^order`` generates the
    centre together with the twist-fixed subfield of degree
    ``center_degree``.
    """

    def __init__(self, field, twist=1, level=None):
        self.field = field
        self.twist = twist % field.degree
        self.level = field.degree if level is None else level
        if field.degree % self.level:
            raise ValueError(f"level degree {self.level} does not divide {field.degree}")
        self.center_degree = math.gcd(self.twist, self.level)
        self.order = self.level // self.center_degree

    @property
    def aut(self):
        return AutDescriptor(self.twist, self.field.degree)

    def __eq__(self, other):
        return (
            isinstance(other, SkewRing)
            and self.field == other.field
            and self.twist == other.twist
            and self.level == other.level
        )

    def __hash__(self):
        return hash((self.field, self.twist, self.level))

    def __repr__(self):
        return f"SkewRing({self.field!r}, twist={self.twist}, level={self.level})"

    # -- constructors ----------------------------------------------------
    def __call__(self, coeffs):
        """Build a polynomial from a list (index = degree) or a dict."""
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        c = {}
        for i, a in items:
            v = self._encode(a)
            if v:
                c[i] = v
        return SkewPoly(self, c)

    def _encode(self, a):
        F = self.field
        if isinstance(a, FieldElem):
            if a.field != F:
                raise ValueError("coefficient from a different field")
            v = a.value
        elif isinstance(a, int):
            v = a % F.p
        else:
            v = F(a).value
        if v and not F.in_subfield(v, self.level):
            raise ValueError(f"coefficient {F.wrap(v)} is outside the level-{self.level} field")
        return v

    def zero(self):
        return SkewPoly(self, {})

    def one(self):
        return SkewPoly(self, {0: 1})

    def gen(self):
        return SkewPoly(self, {1: 1})

    def const(self, a):
        v = self._encode(a)
        return SkewPoly(self, {0: v} if v else {})

    def monomial(self, a, i):
        v = self._encode(a)
        return SkewPoly(self, {i: v} if v else {})

    def scalar_generator(self):
        """A generator of the coefficient field over F_p."""
        return self.field.subfield_generator(self.level)

    def random_coeff(self, rng):
        return self.field.random(rng, self.level).value

    def random(self, rng, max_degree, nonzero=False):
        while True:
            c = {}
            for i in range(max_degree + 1):
                v = self.random_coeff(rng)
                if v:
                    c[i] = v
            if c or not nonzero:
                return SkewPoly(self, c)


class SkewPoly:
    __slots__ = ("ring", "_c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self._c = coeffs

    # -- structure ---------------------------------------------------------
    @property
    def coeffs(self):
        F = self.ring.field
        return {i: F.wrap(v) for i, v in sorted(self._c.items())}

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    def valuation(self):
        return min(self._c) if self._c else None

    def __getitem__(self, i):
        return self.ring.field.wrap(self._c.get(i, 0))

    def leading(self):
        return self.ring.field.wrap(self._c[self.degree])

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return not self._c or set(self._c) == {0}

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return False
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return True

    def _lift(self, other):
        if isinstance(other, SkewPoly):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElem)):
            return self.ring.const(other)
        return None

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        add = self.ring.field.add
        c = dict(self._c)
        for i, v in other._c.items():
            w = add(c.get(i, 0), v)
            if w:
                c[i] = w
            else:
                c.pop(i, None)
        return SkewPoly(self.ring, c)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return SkewPoly(self.ring, {i: neg(v) for i, v in self._c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return SkewPoly(self.ring, _mul(self.ring, self._c, other._c))

    def __rmul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return SkewPoly(self.ring, _mul(self.ring, other._c, self._c))

    def __pow__(self, k):
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_left(self, a):
        """``a * self`` for an encoded field element ``a``."""
        if not a:
            return self.ring.zero()
        mul = self.ring.field.mul
        return SkewPoly(self.ring, {i: mul(a, v) for i, v in self._c.items()})

    def map_coeffs(self, fn):
        c = {}
        for i, v in self._c.items():
            w = fn(v)
            if w:
                c[i] = w
        return SkewPoly(self.ring, c)

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.ring == other.ring and self._c == other._c
        if isinstance(other, (int, FieldElem)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._c.items())))

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        F = self.ring.field
        terms = []
        for i in sorted(self._c, reverse=True):
            a = str(F.wrap(self._c[i]))
            if i == 0:
                terms.append(a)
            elif i == 1:
                terms.append(f"{a}*t")
            else:
                terms.append(f"{a}*t^{i}")
        return " + ".join(terms)

    # -- division, evaluation, centre -------------------------------------------
    def right_divmod(self, g):
        return right_divide(self, g)

    def left_divmod(self, g):
        return left_divide(self, g)

    def is_central(self):
        return is_central(self)

    def scalar(self, a):
        """Embed a field element as a constant of this ring."""
        return self.ring.const(a)

    def inverse(self):
        if self.degree != 0:
            raise ZeroDivisionError("only nonzero constants are units of a skew polynomial ring")
        return self.ring.const(self.ring.field.wrap(self.ring.field.inv(self._c[0])))


def _mul(ring, f, g):
    """Product of coefficient dicts under (a t^i)(b t^j) = a s^i(b) t^{i+j}."""
    if not f or not g:
        return {}
    F = ring.field
    e = ring.twist
    n = F.degree
    add = F.add
    res = {}
    if F.tables:
        exp, log = F._exp, F._log
        for i, a in f.items():
            la = log[a]
            s = (e * i) % n
            if s:
                ft = F.frob_table(s)
                for j, b in g.items():
                    c = exp[la + log[ft[b]]]
                    k = i + j
                    r = res.get(k)
                    res[k] = c if r is None else add(r, c)
            else:
                for j, b in g.items():
                    c = exp[la + log[b]]
                    k = i + j
                    r = res.get(k)
                    res[k] = c if r is None else add(r, c)
    else:
        mul, frob = F.mul, F.frob
        for i, a in f.items():
            s = (e * i) % n
            for j, b in g.items():
                c = mul(a, frob(b, s))
                k = i + j
                r = res.get(k)
                res[k] = c if r is None else add(r, c)
    return {k: v for k, v in res.items() if v}


def skew_mul(f, g):
    return f * g


def right_divide(f, g):
    """Return ``(q, r)`` with ``f = q*g + r`` and ``deg r < deg g``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("right division by the zero polynomial")
    ring = f.ring
    F = ring.field
    d = g.degree
    lead_inv = None
    q = {}
    r = f
    while r.degree >= d:
        n = r.degree
        s = n - d
        # (c t^s)(g_d t^d) = c s^s(g_d) t^n
        lead_inv = F.inv(F.frob(g._c[d], ring.twist * s))
        c = F.mul(r._c[n], lead_inv)
        q[s] = c
        r = r - SkewPoly(ring, {s: c}) * g
    return SkewPoly(ring, q), r


def left_divide(f, g):
    """Return ``(q, r)`` with ``f = g*q + r`` and ``deg r < deg g``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("left division by the zero polynomial")
    ring = f.ring
    F = ring.field
    d = g.degree
    ginv = F.inv(g._c[d])
    q = {}
    r = f
    while r.degree >= d:
        n = r.degree
        s = n - d
        # (g_d t^d)(c t^s) = g_d s^d(c) t^n
        c = F.frob(F.mul(ginv, r._c[n]), -ring.twist * d)
        q[s] = c
        r = r - g * SkewPoly(ring, {s: c})
    return SkewPoly(ring, q), r


def right_eval(P, x):
    """``sum a_i x^i`` with coefficients on the left, computed by Horner.

    ``x`` may be a field element or any ring element exposing ``scalar``
    (skew polynomials, fractions, series); this is not a ring homomorphism
    in ``x`` once either the twist or ``x`` fails to commute.
    """
    F = P.ring.field
    if isinstance(x, FieldElem):
        if x.field != F:
            raise ValueError("field mismatch")
        acc = 0
        for i in range(P.degree, -1, -1):
            acc = F.add(F.mul(acc, x.value), P._c.get(i, 0))
        return F.wrap(acc)
    acc = x.scalar(F.zero())
    for i in range(P.degree, -1, -1):
        acc = acc * x + x.scalar(F.wrap(P._c.get(i, 0)))
    return acc


def sigma_eval(P, y):
    """Remainder of ``P`` on right division by ``t - y`` (twisted evaluation).

    Equals ``sum a_i N_i(y)`` with ``N_0 = 1`` and ``N_{i+1} = s(N_i) y``.
    """
    F = P.ring.field
    e = P.ring.twist
    acc = 0
    norm = 1
    for i in range(P.degree + 1):
        if i in P._c:
            acc = F.add(acc, F.mul(P._c[i], norm))
        norm = F.mul(F.frob(norm, e), y.value)
    return F.wrap(acc)


def eval_product_identity_check(f, g, y):
    """Check ``(fg)(y) = f(g(y) y g(y)^-1) g(y)``.

    For an untwisted ring (central indeterminate) this is plain right
    evaluation and ``y`` may live in any noncommutative ring containing the
    coefficients.  For a twisted ring the evaluation is ``sigma_eval`` and
    the conjugate picks up the twist, ``s(g(y)) y g(y)^-1``.
    Raises ``ZeroDivisionError`` when ``g(y) = 0``.
    """
    f._check(g)
    fg = f * g
    if f.ring.twist == 0:
        gy = right_eval(g, y)
        if gy.is_zero():
            raise ZeroDivisionError("g(y) = 0: identity does not apply")
        lhs = right_eval(fg, y)
        conj = gy * y * gy.inverse()
        rhs = right_eval(f, conj) * gy
        return lhs == rhs
    if not isinstance(y, FieldElem):
        raise TypeError("twisted evaluation is defined at coefficient-field points")
    gy = sigma_eval(g, y)
    if gy.is_zero():
        raise ZeroDivisionError("g(y) = 0: identity does not apply")
    lhs = sigma_eval(fg, y)
    conj = gy.frobenius(f.ring.twist) * y * gy.inverse()
    rhs = sigma_eval(f, conj) * gy
    return lhs == rhs


def is_central(f):
    """Centre test by the monomial rule: ``a_i t^i`` is central iff the
    twist to the power i is trivial on the coefficient field and ``a_i`` is
    twist-fixed."""
    ring = f.ring
    F = ring.field
    for i, a in f._c.items():
        if i % ring.order:
            return False
        if F.frob(a, ring.twist) != a:
            return False
    return True


def commutes_with_generators(f):
    """Centre test by direct commutators against ``t`` and a field generator."""
    ring = f.ring
    t = ring.gen()
    g = ring.const(ring.scalar_generator())
    return f * t == t * f and f * g == g * f


def substitute(f, m, target):
    """``t -> t^m`` carried into ``target`` (coefficients unchanged)."""
    if target.field != f.ring.field:
        raise ValueError("substitution must stay in the ambient field")
    return SkewPoly(target, {i * m: v for i, v in f._c.items()})
