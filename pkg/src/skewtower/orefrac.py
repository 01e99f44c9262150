"""Fractions over a twisted polynomial ring with central denominators.

Every nonzero ``g`` in h[t; s] has a left multiple ``g*h`` lying in the
centre Z = F[T] (``T = t^r``, F the twist-fixed subfield), so each element of
the skew fraction field can be written ``num * den^-1`` with ``den`` central.
Normal form: ``den`` is monic in T and shares no factor with ``num`` in the
sense that no nonconstant central polynomial divides both.
"""

from __future__ import annotations

from . import linalg
from .ffield import FieldElem
from .skewpoly import SkewPoly, is_central, left_divide
from .tlaurent import TwistedLaurent


class InvariantError(AssertionError):
    """An internal invariant failed; this is a bug, not a user error."""


# -- dense commutative polynomials over the ambient field --------------------
def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _pdivmod(F, a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    add, mul = F.add, F.mul
    while len(a) >= len(b) and a:
        c = mul(a[-1], inv)
        s = len(a) - len(b)
        q[s] = c
        nc = F.neg(c)
        for i, y in enumerate(b):
            if y:
                a[s + i] = add(a[s + i], mul(nc, y))
        _trim(a)
    return _trim(q), a


def _pgcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(inv, v) for v in a]
    return a


def _central_coeffs(den):
    """T-coefficients of a central polynomial."""
    r = den.ring.order
    return [den._c.get(r * s, 0) for s in range(den.degree // r + 1)]


def _from_central(ring, c):
    r = ring.order
    return SkewPoly(ring, {r * s: v for s, v in enumerate(c) if v})


def centralize(g):
    """Return ``(h, c)`` with ``g*h = c``, ``c`` central and monic in T of least degree.

    The remainders of ``T^i`` on left division by ``g`` span a right module of
    dimension ``deg g`` over h, so a monic F-linear relation among them
    appears within ``deg g`` steps; that relation is ``c``.
    """
    ring = g.ring
    F = ring.field
    if g.is_zero():
        raise ZeroDivisionError("zero has no central multiple")
    d = g.degree
    if d == 0:
        return ring.const(F.wrap(F.inv(g._c[0]))), ring.one()
    p, n = F.p, F.degree
    r = ring.order
    beta = [b.value for b in F.fixed_subfield(ring.center_degree)]
    T = SkewPoly(ring, {r: 1})

    def vec(rem):
        out = []
        for i in range(d):
            out.extend(F.digits(rem._c.get(i, 0)))
        return out

    basis = linalg.IncrementalBasis(p)
    f = len(beta)
    cur = ring.one()
    for D in range(d + 1):
        residual, comb = basis.reduce(vec(cur))
        if D and not any(residual):
            # rem(T^D) = sum comb_i * column_i, so c = T^D - sum comb_i * column_i
            c = [0] * (D + 1)
            c[D] = 1
            for idx, coef in comb.items():
                i, k = divmod(idx, f)
                c[i] = F.sub(c[i], F.mul(coef, beta[k]))
            central = _from_central(ring, c)
            h, rem = left_divide(central, g)
            if not rem.is_zero():
                raise InvariantError("central multiple is not divisible")
            return h, central
        for b in beta:
            if not basis.add(vec(cur.scale_left(b))):
                raise InvariantError("remainders of lower powers are dependent")
        cur = left_divide(cur * T, g)[1]
    raise InvariantError(f"no central multiple of degree <= {d} in T")


def _normalize(num, den):
    ring = num.ring
    F = ring.field
    if num.is_zero():
        return ring.zero(), ring.one()
    c = _central_coeffs(den)
    if len(c) > 1:
        r, e = ring.order, ring.twist
        G = c
        for j in range(r):
            A = [num._c.get(j + r * s, 0) for s in range(num.degree // r + 1)]
            if not any(A):
                continue
            for u in range(r):
                G = _pgcd(F, G, [F.frob(v, e * u) for v in A])
                if len(G) == 1:
                    break
            if len(G) == 1:
                break
        if len(G) > 1:
            # G is fixed by the twist, so it lies in F[T] and is central
            Gp = _from_central(ring, G)
            num, rem = left_divide(num, Gp)
            if not rem.is_zero():
                raise InvariantError("content does not divide numerator")
            c = _pdivmod(F, c, G)[0]
    lead = c[-1]
    if lead != 1:
        inv = F.inv(lead)
        num = num.scale_left(inv)
        c = [F.mul(inv, v) for v in c]
    return num, _from_central(ring, c)


class OreFraction:
    """``num * den^-1`` with ``den`` central, kept in normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalized=False):
        if den is None:
            den = num.ring.one()
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not is_central(den):
            raise ValueError("denominator must be central; use frac() for general quotients")
        if normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, den)

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def scalar(self, a):
        return OreFraction(self.ring.const(a), self.ring.one(), normalized=True)

    def _lift(self, other):
        if isinstance(other, OreFraction):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, SkewPoly):
            return OreFraction(other)
        if isinstance(other, (int, FieldElem)):
            return OreFraction(self.ring.const(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return OreFraction(self.num + other.num, self.den)
        return OreFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + self

    def __neg__(self):
        return OreFraction(-self.num, self.den, normalized=True)

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
        # central denominators commute past everything
        return OreFraction(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        h, z = centralize(self.num)
        return OreFraction(self.den * h, z)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = OreFraction(self.ring.one())
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return frac_equal(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"OreFraction({self})"

    def to_laurent(self, prec):
        """Expansion in h((t, s)) with ``prec`` relative terms."""
        return TwistedLaurent.from_poly(self.num, prec) * TwistedLaurent.from_poly(self.den, prec).inverse()


def frac(num, den):
    """``num * den^-1`` for an arbitrary nonzero ``den``."""
    h, z = centralize(den)
    return OreFraction(num * h, z)


def frac_add(x, y):
    return x + y


def frac_mul(x, y):
    return x * y


def frac_inv(x):
    return x.inverse()


def frac_equal(x, y):
    """Cross-multiplication test; valid because denominators are central."""
    return x.num * y.den == y.num * x.den


def random_fraction(ring, rng, num_degree=3, den_degree=2, nonzero=False):
    num = ring.random(rng, num_degree, nonzero=nonzero)
    den = ring.random(rng, den_degree, nonzero=True)
    return frac(num, den)
