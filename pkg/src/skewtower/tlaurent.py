"""Precision-tracked twisted Laurent series h((t, s)).

A series stores its valuation ``val`` and the coefficients of exponents
``val .. val + prec - 1``; everything from ``val + prec`` on is unknown.
Arithmetic never extends precision: sums keep the smaller absolute cap,
products keep the smaller relative precision.  A series whose known window
is entirely zero has ``prec == 0`` and ``val`` equal to its absolute cap.
"""

from __future__ import annotations

from .ffield import FieldElem, finite_field
from .skewpoly import SkewRing


class PrecisionError(ArithmeticError):
    pass


class TwistedLaurent:
    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(self, ring, val, coeffs, prec=None):
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        coeffs = coeffs[:prec] + [0] * (prec - len(coeffs))
        # strip leading zeros; the known window shrinks accordingly
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        self.ring = ring
        self.val = val + k
        self.coeffs = coeffs[k:]
        self.prec = prec - k

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_poly(cls, f, prec):
        """Series of a skew polynomial, keeping ``prec`` terms from its valuation."""
        if f.is_zero():
            return cls(f.ring, prec, [], 0)
        v = f.valuation()
        return cls(f.ring, v, [f._c.get(v + i, 0) for i in range(prec)], prec)

    @classmethod
    def monomial(cls, ring, a, i, prec):
        v = ring._encode(a)
        return cls(ring, i, [v], prec)

    # -- inspection ----------------------------------------------------------
    @property
    def cap(self):
        return self.val + self.prec

    def valuation(self):
        if self.prec == 0:
            raise PrecisionError("valuation of a series that is zero to precision")
        return self.val

    def is_zero(self):
        """True when the series is zero to its precision."""
        return self.prec == 0

    def coefficient(self, k):
        if k >= self.cap:
            raise PrecisionError(f"coefficient t^{k} is beyond precision {self.cap}")
        if k < self.val:
            return self.ring.field.zero()
        return self.ring.field.wrap(self.coeffs[k - self.val])

    def _get(self, k):
        i = k - self.val
        if 0 <= i < self.prec:
            return self.coeffs[i]
        return 0

    def truncate(self, prec):
        return TwistedLaurent(self.ring, self.val, self.coeffs[:prec], min(prec, self.prec))

    def scalar(self, a):
        return TwistedLaurent.monomial(self.ring, a, 0, max(self.cap, 1))

    def agrees(self, other):
        """Equality to the common precision."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if not isinstance(other, TwistedLaurent):
            return NotImplemented
        return (self.ring, self.val, self.coeffs, self.prec) == (
            other.ring, other.val, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.ring, self.val, tuple(self.coeffs), self.prec))

    def __str__(self):
        F = self.ring.field
        terms = [f"{F.wrap(c)}*t^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms + [f"O(t^{self.cap})"])

    def __repr__(self):
        return f"TwistedLaurent({self})"

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, TwistedLaurent):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, FieldElem)):
            return self.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        add = self.ring.field.add
        cap = min(self.cap, other.cap)
        lo = min(self.val, other.val, cap)
        coeffs = [add(self._get(k), other._get(k)) for k in range(lo, cap)]
        return TwistedLaurent(self.ring, lo, coeffs, cap - lo)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return TwistedLaurent(self.ring, self.val, [neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _series_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _series_mul(other, self)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.scalar(self.ring.field.one()).truncate(self.prec)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self):
        """Two-sided inverse, solved coefficient by coefficient."""
        if self.prec == 0:
            raise PrecisionError("inversion of a series that is zero to precision")
        F = self.ring.field
        e = self.ring.twist
        v = self.val
        x = self.coeffs
        x0inv = F.inv(x[0])
        back = -e * v
        y = []
        for k in range(self.prec):
            s = 1 if k == 0 else 0
            for i in range(1, k + 1):
                if x[i]:
                    s = F.sub(s, F.mul(x[i], F.frob(y[k - i], e * (v + i))))
            y.append(F.frob(F.mul(x0inv, s), back))
        return TwistedLaurent(self.ring, -v, y, self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()


def _series_mul(x, y):
    ring = x.ring
    if x.prec == 0 or y.prec == 0:
        return TwistedLaurent(ring, x.val + y.val, [], 0)
    F = ring.field
    e = ring.twist
    add, mul, frob = F.add, F.mul, F.frob
    prec = min(x.prec, y.prec)
    out = [0] * prec
    xc, yc = x.coeffs, y.coeffs
    for i in range(prec):
        a = xc[i]
        if not a:
            continue
        s = e * (x.val + i)
        for j in range(prec - i):
            b = yc[j]
            if b:
                out[i + j] = add(out[i + j], mul(a, frob(b, s)))
    return TwistedLaurent(ring, x.val + y.val, out, prec)


def laurent_arith(x, y, op):
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[op](y)


def substitute(x, m):
    """Exponent dilation ``t -> t^m``; the known window scales by ``m``."""
    if m < 1:
        raise ValueError("substitution exponent must be positive")
    if x.prec == 0:
        return TwistedLaurent(x.ring, x.val * m, [], 0)
    coeffs = [0] * (x.prec * m)
    for i, c in enumerate(x.coeffs):
        coeffs[i * m] = c
    return TwistedLaurent(x.ring, x.val * m, coeffs, x.prec * m)


def prime_ring(p):
    return SkewRing(finite_field(p, 1), 0)


def artin_schreier_generator(p, prec, ring=None):
    """S = -(t + t^p + t^(p^2) + ...) to ``prec`` terms; S^p - S = t."""
    ring = ring or prime_ring(p)
    F = ring.field
    if F.p != p:
        raise ValueError("characteristic mismatch")
    minus_one = F.neg(1)
    coeffs = [0] * prec
    k = 1
    while k <= prec:
        coeffs[k - 1] = minus_one
        k *= p
    return TwistedLaurent(ring, 1, coeffs, prec)


def kummer_generator(p, prec, ring=None):
    """Square root of ``1 + t`` with constant term 1, by Newton iteration."""
    if p == 2:
        raise ValueError("the Kummer preset needs odd characteristic")
    ring = ring or prime_ring(p)
    F = ring.field
    half = F.inv(2 % p)
    target = TwistedLaurent(ring, 0, [1, 1], prec)
    y = TwistedLaurent(ring, 0, [1], 1)
    n = 1
    while n < prec:
        n = min(2 * n, prec)
        y = TwistedLaurent(ring, y.val, y.coeffs, n)
        y = (y + target.truncate(n) * y.inverse()) * half
    return y.truncate(prec)


def power_valuations(S, B):
    """Valuations of ``S^0 .. S^B``."""
    vals = []
    power = S.scalar(S.ring.field.one())
    for _ in range(B + 1):
        vals.append(power.valuation())
        power = power * S
    return vals


def power_independence_check(S, B):
    """Whether ``S^0, ..., S^B`` have pairwise distinct valuations ``i*val(S)``.

    Distinct valuations make the powers linearly independent on both sides
    over the coefficient field, so ``S`` satisfies no relation of degree
    at most ``B``.  Raises ``ValueError`` when ``val(S) == 0``; subtract the
    constant term first.
    """
    v = S.valuation()
    if v == 0:
        raise ValueError("series has valuation 0; subtract its constant term first")
    vals = power_valuations(S, B)
    return len(set(vals)) == len(vals) and all(w == i * v for i, w in enumerate(vals))
