"""Exact arithmetic in a single ambient finite field F_{p^n}.

Every coefficient field of a tower lives inside one ambient field; the
subfield of degree d is recognised as the set of elements fixed by the d-th
power of Frobenius.  Elements are encoded internally as integers
``sum(c_i * p**i)`` over the power basis of the defining modulus, and the
hot arithmetic paths (used by the skew polynomial kernels) work directly on
those integers.  :class:`FieldElem` is the user-facing wrapper.

Fields of order at most ``TABLE_LIMIT`` are backed by discrete log tables
(and Zech logarithms for odd p); larger fields fall back to schoolbook
polynomial arithmetic modulo the modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import linalg

TABLE_LIMIT = 1 << 16
MAX_ORDER = 1 << 64


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# -- polynomials over F_p as coefficient lists, lowest degree first --------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    return _ptrim(r)


def _pdivmod(a, b, p):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = (a[-1] * inv) % p
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        _ptrim(a)
    return _ptrim(q), a


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _ppow_x(k, f, p):
    """x**k mod f over F_p."""
    result = [1]
    base = [0, 1]
    base = _pdivmod(base, f, p)[1]
    while k:
        if k & 1:
            result = _pdivmod(_pmul(result, base, p), f, p)[1]
        base = _pdivmod(_pmul(base, base, p), f, p)[1]
        k >>= 1
    return result


def is_irreducible(f, p):
    """Rabin's test for a monic polynomial ``f`` (coefficient list) over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True

    def sub_x(g):
        g = list(g) + [0] * max(0, 2 - len(g))
        g[1] = (g[1] - 1) % p
        return _ptrim(g)

    if _ptrim(sub_x(_ppow_x(p**n, f, p))):
        return False
    for q in prime_factors(n):
        g = _pgcd(f, sub_x(_ppow_x(p ** (n // q), f, p)), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p, n):
    """Least monic irreducible of degree ``n`` over F_p.

    Candidates are ordered by the integer ``sum(c_i p**i)`` of their lower
    coefficients, which makes the choice deterministic.
    """
    for code in range(p**n):
        coeffs = []
        c = code
        for _ in range(n):
            c, d = divmod(c, p)
            coeffs.append(d)
        f = coeffs + [1]
        if n > 1 and f[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {n} over F_{p}")


class GF:
    """The finite field F_p[x]/(modulus).

    Use :func:`finite_field` to obtain cached instances.
    """

    def __init__(self, p, degree, modulus=None, tables=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if degree < 1:
            raise ValueError("degree must be positive")
        if p**degree > MAX_ORDER:
            raise ValueError(f"F_{p}^{degree} exceeds the 2^64 size cap")
        if modulus is None:
            modulus = least_irreducible(p, degree)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of the field degree")
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.degree = degree
        self.modulus = modulus
        self.order = p**degree
        self._mod_bits = sum(c << i for i, c in enumerate(modulus)) if p == 2 else None
        self._frob_tables = {}
        self._fixed = {}
        if tables is None:
            tables = self.order <= TABLE_LIMIT
        self.tables = tables
        if tables:
            self._build_tables()
            self.mul = self._tmul
            self.add = self._xor if p == 2 else self._tadd
            self.neg = self._ident if p == 2 else self._tneg
            self.inv = self._tinv
        else:
            self.mul = self._slow_mul
            self.add = self._xor if p == 2 else self._slow_add
            self.neg = self._ident if p == 2 else self._slow_neg
            self.inv = self._slow_inv

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    # -- encoding ------------------------------------------------------
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.degree):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def from_digits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + (d % self.p)
        return v

    # -- slow kernel ---------------------------------------------------
    @staticmethod
    def _xor(a, b):
        return a ^ b

    @staticmethod
    def _ident(a):
        return a

    def _slow_add(self, a, b):
        p = self.p
        res, mult = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            res += ((da + db) % p) * mult
            mult *= p
        return res

    def _slow_neg(self, a):
        return self.from_digits([-d for d in self.digits(a)])

    def _slow_mul(self, a, b):
        n = self.degree
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                a <<= 1
                b >>= 1
            m = self._mod_bits
            while r.bit_length() > n:
                r ^= m << (r.bit_length() - 1 - n)
            return r
        p = self.p
        da, db = self.digits(a), self.digits(b)
        r = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    r[i + j] += x * y
        mod = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = r[k] % p
            if c:
                for i in range(n):
                    r[k - n + i] -= c * mod[i]
            r[k] = 0
        return self.from_digits(r[:n])

    def _slow_pow(self, a, k):
        result = 1
        while k:
            if k & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return result

    def _slow_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self._slow_pow(a, self.order - 2)

    # -- table kernel --------------------------------------------------
    def _build_tables(self):
        q1 = self.order - 1
        factors = prime_factors(q1) if q1 > 1 else []
        g = None
        for cand in range(1, self.order):
            if all(self._slow_pow(cand, q1 // r) != 1 for r in factors):
                g = cand
                break
        exp = [0] * (2 * q1 + 1)
        log = [None] * self.order
        v = 1
        for i in range(q1):
            exp[i] = v
            log[v] = i
            v = self._slow_mul(v, g)
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        self._gen = g
        self._exp = exp
        self._log = log
        if self.p != 2:
            add = self._slow_add
            self._zech = [log[add(exp[k], 1)] if add(exp[k], 1) else None for k in range(q1)]
            self._half = q1 // 2

    def _tmul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _tadd(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z is None:
            return 0
        return self._exp[la + z]

    def _tneg(self, a):
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def _tinv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self._exp[(self.order - 1) - self._log[a]]

    # -- derived kernel operations ---------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        if self.tables:
            if a == 0:
                return 1 if k == 0 else 0
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        return self._slow_pow(a, k)

    def scalar(self, k):
        """Encoding of the integer ``k`` mod p."""
        return k % self.p

    def frob_table(self, e):
        """Permutation list realising x -> x^(p^e) (table fields only)."""
        e %= self.degree
        t = self._frob_tables.get(e)
        if t is None:
            q1 = self.order - 1
            pe = pow(self.p, e, q1) if q1 > 1 else 1
            exp, log = self._exp, self._log
            t = [0] + [exp[(log[a] * pe) % q1] for a in range(1, self.order)]
            self._frob_tables[e] = t
        return t

    def frob(self, a, e):
        e %= self.degree
        if e == 0 or a == 0:
            return a
        if self.tables:
            return self.frob_table(e)[a]
        for _ in range(e):
            a = self._slow_pow(a, self.p)
        return a

    # -- element construction ----------------------------------------------
    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.field != self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FieldElem(self, x % self.p)
        coords = list(x)
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        return FieldElem(self, self.from_digits(coords + [0] * (self.degree - len(coords))))

    def wrap(self, v):
        return FieldElem(self, v)

    def zero(self):
        return FieldElem(self, 0)

    def one(self):
        return FieldElem(self, 1)

    def gen(self):
        """The power-basis generator x (equal to a scalar when degree is 1)."""
        return FieldElem(self, self.p if self.degree > 1 else self._prime_root())

    def _prime_root(self):
        return self.primitive_element().value

    def elements(self):
        return (FieldElem(self, v) for v in range(self.order))

    def primitive_element(self):
        if self.tables:
            return FieldElem(self, self._gen)
        q1 = self.order - 1
        factors = prime_factors(q1)
        for cand in range(2, self.order):
            if all(self._slow_pow(cand, q1 // r) != 1 for r in factors):
                return FieldElem(self, cand)
        raise AssertionError("multiplicative group has no generator")

    def random(self, rng, subfield_degree=None):
        """Uniform element of the subfield of the given degree (default: all)."""
        d = self.degree if subfield_degree is None else subfield_degree
        if d == self.degree:
            return FieldElem(self, rng.randrange(self.order))
        basis = self.fixed_subfield(d)
        v = 0
        for b in basis:
            c = rng.randrange(self.p)
            if c:
                v = self.add(v, self.mul(self.scalar(c), b.value))
        return FieldElem(self, v)

    # -- subfields -----------------------------------------------------------
    def fixed_subfield(self, e):
        """F_p-basis of the subfield fixed by x -> x^(p^e).

        Solved as the kernel of ``Frob^e - Id`` on the power basis; the
        dimension is ``gcd(e, degree)``.
        """
        e %= self.degree
        if e in self._fixed:
            return self._fixed[e]
        n, p = self.degree, self.p
        cols = []
        for i in range(n):
            xi = self.pow(self.p, i) if n > 1 else 1
            img = self.digits(self.frob(xi, e))
            img[i] = (img[i] - 1) % p
            cols.append(img)
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        kernel = linalg.nullspace(rows, n, p)
        basis = [FieldElem(self, self.from_digits(v)) for v in kernel]
        self._fixed[e] = basis
        return basis

    def in_subfield(self, a, d):
        """Whether encoded element ``a`` lies in the degree-``d`` subfield."""
        return self.frob(a, d) == a

    def subfield_generator(self, d):
        """An element generating the degree-``d`` subfield over F_p."""
        if self.degree % d:
            raise ValueError(f"{d} does not divide {self.degree}")
        if self.tables:
            q1 = self.order - 1
            return FieldElem(self, self._exp[q1 // (self.p**d - 1)])
        maximal = [d // r for r in prime_factors(d)]
        basis = [b.value for b in self.fixed_subfield(d)]
        for code in range(1, self.p ** len(basis)):
            v = 0
            c = code
            for b in basis:
                c, k = divmod(c, self.p)
                if k:
                    v = self.add(v, self.mul(k, b))
            if all(self.frob(v, m) != v for m in maximal):
                return FieldElem(self, v)
        raise AssertionError("subfield has no generator")


@lru_cache(maxsize=None)
def finite_field(p, degree):
    """Cached ambient field F_{p^degree} with the least irreducible modulus."""
    return GF(p, degree)


class FieldElem:
    """An element of a :class:`GF`, with ordinary operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.sub(o, self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field.div(self.value, o))

    def __pow__(self, k):
        return FieldElem(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, e=1):
        return FieldElem(self.field, self.field.frob(self.value, e))

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    @property
    def coords(self):
        return tuple(self.field.digits(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"FieldElem({self.field!r}, {self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.value)
        return "(" + ",".join(map(str, self.coords)) + ")"


def frobenius(x, e):
    """x -> x^(p^e); the identity when ``e`` is a multiple of the degree."""
    return x.frobenius(e)


def fixed_subfield(field, e):
    return field.fixed_subfield(e)


def membership(x, level, schedule):
    """Whether ``x`` lies in the level-``level`` coefficient field of a tower."""
    return x.field.in_subfield(x.value, schedule.d[level])


@dataclass(frozen=True)
class AutDescriptor:
    """The Frobenius power x -> x^(p^exponent) of a field of given degree."""

    exponent: int
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.degree)

    def __call__(self, x):
        return x.frobenius(self.exponent)

    def compose(self, other):
        return AutDescriptor(self.exponent + other.exponent, self.degree)

    def power(self, k):
        return AutDescriptor(self.exponent * k, self.degree)

    def order_on(self, d):
        """Order of this automorphism restricted to the degree-``d`` subfield."""
        return d // math.gcd(self.exponent, d)
