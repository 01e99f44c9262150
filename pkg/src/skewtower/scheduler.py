"""Divisibility schedules (d_n, a_n, l_n) for towers of skew fraction fields.

A schedule is valid when, for every index n,

    l_n | l_{n+1},    d_n | a_{n+1} l_{n+1} / l_n - a_n,    d_n | l_n a_n,

which is exactly what makes ``t -> t^(l_{n+1}/l_n)`` a ring morphism
between consecutive levels with ``t^(l_n)`` central at level n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache, reduce

from .ffield import is_prime


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class TowerSchedule:
    p: int
    primes: tuple
    d: tuple
    a: tuple
    l: tuple
    m: tuple = ()
    alpha: tuple = ()

    def __post_init__(self):
        n = len(self.d)
        if n == 0:
            raise ScheduleError("empty schedule")
        if len(self.a) != n or len(self.l) != n:
            raise ScheduleError("d, a and l must have the same length")
        if any(v < 1 for v in self.d + self.a + self.l):
            raise ScheduleError("schedule entries must be positive integers")

    @property
    def N(self):
        """Truncation level: the last valid index."""
        return len(self.d) - 1

    @property
    def ambient_degree(self):
        return reduce(math.lcm, self.d, 1)

    def to_dict(self):
        return {
            "p": self.p,
            "primes": list(self.primes),
            "d": list(self.d),
            "a": list(self.a),
            "l": list(self.l),
            "m": list(self.m),
            "alpha": list(self.alpha),
        }

    def with_overrides(self, d=None, a=None, l=None):
        """Replace whole sequences; derived m and alpha are dropped."""
        return replace(
            self,
            d=tuple(d) if d is not None else self.d,
            a=tuple(a) if a is not None else self.a,
            l=tuple(l) if l is not None else self.l,
            m=(),
            alpha=(),
        )


def _check_primes(primes):
    primes = tuple(int(q) for q in primes)
    if not primes:
        raise ScheduleError("at least one prime is required")
    bad = [q for q in primes if not is_prime(q)]
    if bad:
        raise ScheduleError(f"not prime: {bad}")
    if len(set(primes)) != len(primes):
        raise ScheduleError(f"primes must be pairwise distinct: {primes}")
    return primes


def schedule_example_a(p, primes, N=None):
    """Unit-twist schedule with d_n = p_1...p_{n+1}.

    ``m_n`` is the least positive inverse of ``p_{n+1}`` modulo ``d_n``,
    ``alpha_{n+1} = m_n alpha_n`` and ``l_n = alpha_n d_n``.
    """
    if not is_prime(p):
        raise ScheduleError(f"characteristic {p} is not prime")
    primes = _check_primes(primes)
    if N is None:
        N = len(primes) - 1
    if not 0 <= N < len(primes):
        raise ScheduleError(f"truncation {N} needs {N + 1} primes, got {len(primes)}")
    primes = primes[: N + 1]
    d = []
    acc = 1
    for q in primes:
        acc *= q
        d.append(acc)
    m, alpha = [], [1]
    for n in range(N):
        inv = pow(primes[n + 1], -1, d[n]) if d[n] > 1 else 1
        m.append(inv or d[n])
        alpha.append(m[-1] * alpha[-1])
    l = [x * y for x, y in zip(alpha, d)]
    return TowerSchedule(p, primes, tuple(d), (1,) * (N + 1), tuple(l), tuple(m), tuple(alpha))


@dataclass(frozen=True)
class Condition:
    index: int
    name: str
    divisor: int
    value: int | None

    @property
    def passed(self):
        return self.value is not None and self.value % self.divisor == 0

    def text(self):
        return f"{self.divisor}|{'undefined' if self.value is None else self.value}"

    def to_dict(self):
        return {
            "index": self.index,
            "condition": self.name,
            "divisor": self.divisor,
            "value": self.value,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ScheduleReport:
    conditions: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return all(c.passed for c in self.conditions)

    @property
    def failures(self):
        return [c for c in self.conditions if not c.passed]

    def first_failing_index(self):
        fails = self.failures
        return min(c.index for c in fails) if fails else None

    def to_dict(self):
        return {"ok": self.ok, "conditions": [c.to_dict() for c in self.conditions]}


def validate_schedule(s):
    """Evaluate the three divisibility families at every index."""
    out = []
    d, a, l = s.d, s.a, s.l
    for n in range(len(d)):
        if n + 1 < len(d):
            out.append(Condition(n, "l_n | l_n+1", l[n], l[n + 1]))
            # undefined (and failing) when l_n does not divide l_{n+1}
            value = a[n + 1] * (l[n + 1] // l[n]) - a[n] if l[n + 1] % l[n] == 0 else None
            out.append(Condition(n, "d_n | a_n+1 l_n+1/l_n - a_n", d[n], value))
        out.append(Condition(n, "d_n | l_n a_n", d[n], l[n] * a[n]))
    return ScheduleReport(tuple(out))


def lemma4_conditions(ord_k, ord_h, a, b, n, m):
    """The three morphism conditions as ``(divisor, value, holds)`` triples.

    The last entry is the congruence ``a m = b (mod ord_k)``, encoded as
    ``ord_k | a m - b``.
    """
    return (
        (ord_k, b * n, (b * n) % ord_k == 0),
        (ord_h, a * n * m, (a * n * m) % ord_h == 0),
        (ord_k, a * m - b, (a * m - b) % ord_k == 0),
    )


def lemma4_check(ord_k, ord_h, a, b, n, m):
    """Whether ``P(t) -> P(t^m)`` gives a morphism k(t, s^b) -> h(t, s^a) of
    k(t^n)-algebras, with ``ord_k``/``ord_h`` the orders of s on k and h."""
    for v in (ord_k, ord_h, n, m):
        if v < 1:
            raise ValueError("orders, n and m must be positive")
    return all(c[2] for c in lemma4_conditions(ord_k, ord_h, a, b, n, m))


def lemma4_brute_force(p, ord_k, ord_h, a, b, n, m, _cache={}):
    """Direct test of the same statement on explicit rings over F_p.

    k = F_{p^ord_k} inside h = F_{p^ord_h}, s = Frobenius.  The map must be
    multiplicative on monomials ``c t^i``, ``c' t^j`` with ``i + j <= 4``
    (``c'`` a generator of k), and ``t^n``,
    ``t^(nm)`` must be central in the source and target rings.
    """
    from .skewpoly import commutes_with_generators

    if ord_h % ord_k:
        raise ValueError("ord_k must divide ord_h")
    src = _ring(p, ord_h, b, ord_k)
    dst = _ring(p, ord_h, a, ord_h)

    key = ("central", src, n)
    if key not in _cache:
        _cache[key] = commutes_with_generators(src.monomial(1, n))
    c1 = _cache[key]
    key = ("central", dst, n * m)
    if key not in _cache:
        _cache[key] = commutes_with_generators(dst.monomial(1, n * m))
    c2 = _cache[key]
    key = ("hom", src, dst, m)
    if key not in _cache:
        _cache[key] = _monomial_hom(src, dst, m)
    return c1 and c2 and _cache[key]


@lru_cache(maxsize=None)
def _ring(p, degree, twist, level):
    from .ffield import finite_field
    from .skewpoly import SkewRing

    return SkewRing(finite_field(p, degree), twist, level)


def _monomial_hom(src, dst, m):
    from .skewpoly import substitute

    # a left coefficient passes through unchanged, so only the right factor
    # needs to range over a generator of k
    gen = src.scalar_generator()
    for i in range(5):
        for j in range(5 - i):
            for c in (src.field.one(), gen):
                x, y = src.monomial(c, i), src.monomial(gen, j)
                lhs = substitute(x * y, m, dst)
                rhs = substitute(x, m, dst) * substitute(y, m, dst)
                if lhs != rhs:
                    return False
    return True


def unit_twist_schedule(p, d):
    """Schedule with a_n = 1 for degrees ``d`` with gcd(d_{n+1}/d_n, d_n) = 1.

    ``l_0 = d_0`` and ``l_{n+1} = l_n rho_n`` with ``rho_n`` the least
    integer congruent to 1 mod d_n such that d_{n+1} | l_n rho_n; it exists
    by the Chinese remainder theorem under the coprimality hypothesis.
    """
    d = tuple(int(x) for x in d)
    for n in range(len(d) - 1):
        if d[n + 1] % d[n]:
            raise ScheduleError(f"d_{n} = {d[n]} does not divide d_{n + 1} = {d[n + 1]}")
        if math.gcd(d[n + 1] // d[n], d[n]) != 1:
            raise ScheduleError(f"d_{n + 1}/d_{n} and d_{n} are not coprime")
    l = [d[0]]
    for n in range(len(d) - 1):
        rho = _least_unit_ratio(d[n], d[n + 1], l[n], bound=d[n] * d[n + 1])
        if rho is None:
            raise ScheduleError(f"no ratio found at index {n}")
        l.append(l[n] * rho)
    return TowerSchedule(p, (), d, (1,) * len(d), tuple(l))


def _least_unit_ratio(dn, dn1, ln, bound):
    rho = 1
    while rho <= bound:
        if (ln * rho) % dn1 == 0:
            return rho
        rho += dn
    return None


def certify_no_unit_ratio(dn, dn1, ln, bound):
    """True when no rho <= bound with rho = 1 (mod dn) has dn1 | ln rho."""
    return _least_unit_ratio(dn, dn1, ln, bound) is None


def rebase_shift(s):
    """Return ``(N, g)``: the stabilisation index and the fixed-field degree."""
    d, a = s.d, s.a
    for n in range(len(d) - 1):
        if (a[n + 1] - a[n]) % d[n]:
            raise ScheduleError(f"twists are incompatible at index {n}: a_{n + 1} != a_{n} mod d_{n}")
    g = [math.gcd(x, y) for x, y in zip(a, d)]
    if len(g) > 1 and g[-1] != g[-2]:
        raise ScheduleError(f"fixed field does not stabilise within the truncation: gcds {g}")
    N = len(g) - 1
    while N > 0 and g[N - 1] == g[-1]:
        N -= 1
    return N, g[-1]


def rebase_schedule(s):
    """Re-express a schedule over the fixed field of the twists.

    With ``g_n = gcd(a_n, d_n)`` (non-decreasing once
    ``a_{n+1} = a_n (mod d_n)``), the twists fix a subfield of degree ``g``
    once ``g_n`` stabilises at some index N.  Over that subfield the twist
    becomes a generator, so the shifted schedule has degrees
    ``d_{n+N} / g``, ``a = 1`` and the same ``l``.
    """
    N, G = rebase_shift(s)
    d, l = s.d, s.l
    return TowerSchedule(
        s.p,
        s.primes[N:] if s.primes else (),
        tuple(x // G for x in d[N:]),
        (1,) * (len(d) - N),
        tuple(l[N:]),
    )
