"""The colimit H = lim h_n(t, s^{a_n}) along u_n : t -> t^{l_{n+1}/l_n}.

All levels share one ambient field F_{p^D} with D the lcm of the degrees
d_n; level n uses coefficients in the degree-d_n subfield and the twist
``Frob^{a_n}``.  An element of H is a fraction tagged with its level, and
two elements are compared after promotion to a common level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import AutDescriptor, FieldElem, finite_field
from .orefrac import OreFraction, frac
from .scheduler import validate_schedule
from .skewpoly import SkewPoly, SkewRing, is_central, substitute
from .tlaurent import power_independence_check, power_valuations


class TowerError(ValueError):
    pass


class Tower:
    def __init__(self, schedule, truncation=None, check=True):
        N = schedule.N if truncation is None else truncation
        if not 0 <= N <= schedule.N:
            raise TowerError(f"truncation {N} outside the schedule (0..{schedule.N})")
        if check:
            report = validate_schedule(schedule)
            if not report.ok:
                bad = report.failures[0]
                raise TowerError(f"invalid schedule at index {bad.index}: {bad.name} ({bad.text()})")
        self.schedule = schedule
        self.N = N
        self.field = finite_field(schedule.p, schedule.ambient_degree)
        self.rings = [
            SkewRing(self.field, schedule.a[n], schedule.d[n]) for n in range(N + 1)
        ]

    def __repr__(self):
        return f"Tower(p={self.schedule.p}, d={self.schedule.d[: self.N + 1]}, N={self.N})"

    def _level(self, n):
        if not 0 <= n <= self.N:
            raise TowerError(f"level {n} outside 0..{self.N}")
        return n

    def l(self, n):
        return self.schedule.l[self._level(n)]

    def ring(self, n):
        return self.rings[self._level(n)]

    # -- constructors ----------------------------------------------------------
    def elem(self, n, value):
        """Tag a fraction, polynomial or scalar with level ``n``."""
        R = self.ring(n)
        if isinstance(value, OreFraction):
            if value.ring != R:
                raise TowerError("fraction belongs to another ring")
        elif isinstance(value, SkewPoly):
            value = OreFraction(value)
        else:
            value = OreFraction(R.const(value))
        return ColimitElem(self, n, value)

    def t(self, n):
        return self.elem(n, self.ring(n).gen())

    def const(self, n, a):
        return self.elem(n, self.ring(n).const(a))

    def random(self, n, rng, num_degree=3, den_degree=2, nonzero=False):
        from .orefrac import random_fraction

        return ColimitElem(self, n, random_fraction(self.ring(n), rng, num_degree, den_degree, nonzero))

    # -- maps between levels ---------------------------------------------------
    def transition_exponent(self, n, j):
        if j < n:
            raise TowerError(f"cannot promote from level {n} down to {j}")
        return self.l(j) // self.l(n)

    def promote_fraction(self, x, n, j):
        if j == n:
            return x
        e = self.transition_exponent(n, j)
        R = self.ring(j)
        num = substitute(x.num, e, R)
        den = substitute(x.den, e, R)
        if is_central(den):
            return OreFraction(num, den)
        return frac(num, den)

    def psi_exponent(self, n, m):
        """Frobenius exponent of psi_n on h_m: ``a_m l_m / l_n``.

        Raises when the congruences ``a_u l_u/l_n = a_m l_m/l_n (mod d_u)``
        for ``n <= u <= m`` fail, i.e. psi_n is not well defined.
        """
        s = self.schedule
        if m < n:
            raise TowerError("psi_n is described on levels m >= n")
        self._level(m)
        e = s.a[m] * s.l[m] // s.l[n]
        for u in range(n, m + 1):
            eu = s.a[u] * s.l[u] // s.l[n]
            if (e - eu) % s.d[u]:
                raise TowerError(f"psi_{n} congruence fails on h_{u}: {eu} != {e} mod {s.d[u]}")
        return AutDescriptor(e % self.field.degree, self.field.degree)

    def psi_order_check(self, n):
        """psi_n^{l_n} is the identity on every h_m, checked on a generator."""
        F = self.field
        for m in range(n, self.N + 1):
            e = self.psi_exponent(n, m).exponent
            g = F.subfield_generator(self.schedule.d[m])
            if g.frobenius(e * self.l(n)) != g:
                return False
        return True

    def root_witness(self, m, n):
        """``(t_n, e)`` with ``t_m = t_n^e``, ``e = l_n / l_m``."""
        if n < m:
            raise TowerError("root witness needs n >= m")
        e = self.transition_exponent(m, n)
        tn = self.t(n)
        if self.t(m).promote(n) != tn ** e:
            raise AssertionError("root witness failed")
        return tn, e

    def basis_independence_check(self, n, family=None):
        """Valuations of the family are pairwise distinct modulo ``l_n``.

        Default family: ``t_n^0 .. t_n^{l_n - 1}``.  A family may mix
        exponents and elements of levels ``<= n``.
        """
        ln = self.l(n)
        if family is None:
            family = range(ln)
        vals = []
        for x in family:
            if isinstance(x, int):
                x = self.t(n) ** x
            x = x.promote(n)
            vals.append(x.value.to_laurent(1).valuation() % ln)
        return len(set(vals)) == len(vals)


@dataclass(frozen=True)
class SpotCheck:
    passed: bool
    branch: str
    valuations: tuple = ()

    def __bool__(self):
        return self.passed


def regularity_spot_check(x, B, prec=None):
    """Look for an algebraicity witness of ``x`` over h up to degree ``B``.

    Constants are reported as the "element of h" branch.  Otherwise the
    series of ``x`` (minus its constant term when the valuation is 0) must
    have powers of pairwise distinct valuation up to ``B``.
    """
    v = x.value
    if v.num.degree <= 0 and v.den.degree == 0:
        return SpotCheck(True, "element of h")
    prec = prec or 2 * (B + 1)
    S = v.to_laurent(prec)
    branch = "direct"
    if S.valuation() == 0:
        S = S - S.coefficient(0)
        branch = "constant term removed"
    return SpotCheck(power_independence_check(S, B), branch, tuple(power_valuations(S, B)))


class ColimitElem:
    __slots__ = ("tower", "level", "value")

    def __init__(self, tower, level, value):
        self.tower = tower
        self.level = level
        self.value = value

    def promote(self, j):
        if j == self.level:
            return self
        return ColimitElem(self.tower, j, self.tower.promote_fraction(self.value, self.level, j))

    def _pair(self, other):
        if isinstance(other, (int, FieldElem)):
            other = self.tower.const(self.level, other)
        if not isinstance(other, ColimitElem) or other.tower is not self.tower:
            return None
        j = max(self.level, other.level)
        return self.promote(j), other.promote(j), j

    def _binop(self, other, op):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y, j = pair
        return ColimitElem(self.tower, j, op(x.value, y.value))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __neg__(self):
        return ColimitElem(self.tower, self.level, -self.value)

    def __pow__(self, k):
        return ColimitElem(self.tower, self.level, self.value ** k)

    def inverse(self):
        return ColimitElem(self.tower, self.level, self.value.inverse())

    def is_zero(self):
        return self.value.is_zero()

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y, _ = pair
        return x.value == y.value

    def __hash__(self):
        # equal elements may sit at different levels
        return hash(self.tower)

    def __repr__(self):
        return f"ColimitElem(level={self.level}, {self.value})"


def promote(x, j):
    return x.promote(j)


def colimit_arith(x, y, op):
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)
