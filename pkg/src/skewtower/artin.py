"""Existential-sentence compiler and finite Galois-correspondence checks.

An algebra L of dimension n over a prime field is given by structure
constants ``lam[i][j][k]`` (``e_i e_j = sum_k lam[i][j][k] e_k``).  For an
element x and a monic polynomial of degree N, the statement

    there is y in L with x y = y x and y^N + a_{N-1} y^{N-1} + ... + a_0 = 0

is compiled into 2n polynomial equations over the base in the coordinates
y_1..y_n of y.  Powers of the generic element are built by repeated
multiplication, which gives the same coefficients as expanding over all
index maps but at polynomial cost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .ffield import finite_field, is_prime, membership


class PresentationError(ValueError):
    pass


# -- sparse multivariate polynomials: {exponent tuple: coefficient mod p} -----
def _padd(a, b, p, scale=1):
    out = dict(a)
    for mono, c in b.items():
        v = (out.get(mono, 0) + scale * c) % p
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def _pmul(a, b, p):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = tuple(x + y for x, y in zip(m1, m2))
            v = (out.get(mono, 0) + c1 * c2) % p
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def format_poly(poly, names=None):
    if not poly:
        return "0"
    nvars = len(next(iter(poly)))
    names = names or [f"y{i + 1}" for i in range(nvars)]
    terms = []
    for mono in sorted(poly, key=lambda m: (-sum(m), [-e for e in m])):
        c = poly[mono]
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        if not body:
            terms.append(str(c))
        elif c == 1:
            terms.append(body)
        else:
            terms.append(f"{c}*{body}")
    return " + ".join(terms)


def eval_poly_batch(poly, Y, p):
    """Evaluate at every row of the integer array ``Y`` (points x variables)."""
    out = np.zeros(Y.shape[0], dtype=np.int64)
    for mono, c in poly.items():
        term = np.full(Y.shape[0], c, dtype=np.int64)
        for i, e in enumerate(mono):
            if e:
                term = term * (Y[:, i] ** e % p) % p
        out = (out + term) % p
    return out


class AlgebraPresentation:
    """Associative unital algebra over F_p with an element ``x`` and a monic
    polynomial ``y^N + a_{N-1} y^{N-1} + ... + a_0`` (``a_k`` as coordinate
    vectors in L)."""

    def __init__(self, p, lam, x=None, poly=None, check=True, name=""):
        if not is_prime(p):
            raise PresentationError(f"base characteristic {p} is not prime")
        lam = np.asarray(lam, dtype=np.int64) % p
        if lam.ndim != 3 or len(set(lam.shape)) != 1:
            raise PresentationError("structure constants must form an n x n x n array")
        self.p = p
        self.lam = lam
        self.dim = lam.shape[0]
        self.name = name
        if check and not self.is_associative():
            raise PresentationError("structure constants are not associative")
        self.unit = self._find_unit()
        self.x = tuple(int(v) % p for v in (x if x is not None else self.unit))
        if len(self.x) != self.dim:
            raise PresentationError("x has the wrong number of coordinates")
        self.poly = tuple(tuple(int(v) % p for v in a) for a in (poly or [[0] * self.dim]))
        if any(len(a) != self.dim for a in self.poly):
            raise PresentationError("polynomial coefficients have the wrong number of coordinates")

    @property
    def N(self):
        return len(self.poly)

    def __repr__(self):
        return f"AlgebraPresentation({self.name or 'dim ' + str(self.dim)}, p={self.p})"

    # -- construction ------------------------------------------------------------
    @classmethod
    def from_field(cls, p, n):
        """Power basis of F_{p^n} over F_p."""
        F = finite_field(p, n)
        lam = [[F.digits(F.mul(F.from_digits(_unit_vec(n, i)), F.from_digits(_unit_vec(n, j))))
                for j in range(n)] for i in range(n)]
        return cls(p, lam, name=f"F_{p}^{n}")

    @classmethod
    def matrix_algebra(cls, p, size=2):
        """M_size(F_p) on the basis of matrix units E_ab (row-major)."""
        n = size * size
        lam = np.zeros((n, n, n), dtype=np.int64)
        for a, b, c, d in itertools.product(range(size), repeat=4):
            if b == c:
                lam[a * size + b, c * size + d, a * size + d] = 1
        return cls(p, lam, name=f"M_{size}(F_{p})")

    def with_instance(self, x, poly):
        out = object.__new__(AlgebraPresentation)
        out.__dict__.update(self.__dict__)
        out.x = tuple(int(v) % self.p for v in x)
        out.poly = tuple(tuple(int(v) % self.p for v in a) for a in poly)
        return out

    def scalar(self, c):
        return tuple((c * u) % self.p for u in self.unit)

    def base_polynomial(self, coeffs):
        """Coordinates for ``y^N + sum c_k y^k`` with base scalars ``c_k``."""
        return [self.scalar(c) for c in coeffs]

    # -- arithmetic --------------------------------------------------------------
    def is_associative(self):
        L = self.lam
        left = np.einsum("ijs,skt->ijkt", L, L) % self.p
        right = np.einsum("jks,ist->ijkt", L, L) % self.p
        return bool(np.array_equal(left, right))

    def _find_unit(self):
        n, p, L = self.dim, self.p, self.lam
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                rows.append([int(L[i, j, k]) for i in range(n)])
                rhs.append(int(j == k))
                rows.append([int(L[j, i, k]) for i in range(n)])
                rhs.append(int(j == k))
        u, nullity = linalg.solve(rows, rhs, p)
        if u is None:
            raise PresentationError("the algebra has no unit")
        return tuple(u)

    def mul(self, u, v):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return tuple(int(c) for c in np.einsum("i,j,ijk->k", u, v, self.lam) % self.p)

    def mul_batch(self, U, V):
        return np.einsum("mi,mj,ijk->mk", U, V, self.lam) % self.p

    def elements(self):
        return np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)

    def minimal_polynomial(self, x):
        """Lower coefficients ``c_0 .. c_{N-1}`` in F_p of the monic minimal polynomial of ``x``."""
        p = self.p
        powers = [self.unit]
        while True:
            cur = self.mul(powers[-1], x)
            cols = powers
            rows = [list(r) for r in zip(*cols)]
            sol, nullity = linalg.solve(rows, [(-v) % p for v in cur], p)
            if sol is not None:
                return sol
            powers.append(cur)


def _unit_vec(n, i):
    return [int(j == i) for j in range(n)]


@dataclass
class CompiledSystem:
    p: int
    nvars: int
    commute_eqs: list
    root_eqs: list

    def equations(self):
        return self.commute_eqs + self.root_eqs

    def solutions(self):
        """Enumerate all points of F_p^n and keep the common zeros."""
        Y = np.array(list(itertools.product(range(self.p), repeat=self.nvars)), dtype=np.int64)
        ok = np.ones(Y.shape[0], dtype=bool)
        for eq in self.equations():
            if eq:
                ok &= eval_poly_batch(eq, Y, self.p) == 0
        return {tuple(int(v) for v in row) for row in Y[ok]}

    def format(self):
        return {
            "commute": [format_poly(e) for e in self.commute_eqs],
            "root": [format_poly(e) for e in self.root_eqs],
        }


_POWER_CACHE = {}


def _symbolic_powers(a, N):
    """Coordinates of Y^0..Y^N for the generic Y = sum y_j e_j."""
    key = (a.p, a.lam.tobytes(), a.dim)
    powers = _POWER_CACHE.setdefault(key, [])
    n, p, L = a.dim, a.p, a.lam
    zero = (0,) * n
    if not powers:
        powers.append([{zero: c} if c else {} for c in a.unit])
    while len(powers) <= N:
        prev = powers[-1]
        Y = [{tuple(int(i == j) for i in range(n)): 1} for j in range(n)]
        nxt = [{} for _ in range(n)]
        for i in range(n):
            if not prev[i]:
                continue
            for j in range(n):
                prod = _pmul(prev[i], Y[j], p)
                for k in range(n):
                    c = int(L[i, j, k])
                    if c:
                        nxt[k] = _padd(nxt[k], prod, p, c)
        powers.append(nxt)
    return powers[: N + 1]


def compile_sentence(a):
    """Emit the commutation and root equations for the presentation ``a``."""
    if not a.is_associative():
        raise PresentationError("structure constants are not associative")
    n, p, L = a.dim, a.p, a.lam
    x = a.x
    commute = []
    for k in range(n):
        eq = {}
        for j in range(n):
            c = sum(int(L[i, j, k] - L[j, i, k]) * x[i] for i in range(n)) % p
            if c:
                eq[tuple(int(v == j) for v in range(n))] = c
        commute.append(eq)
    powers = _symbolic_powers(a, a.N)
    root = [dict(c) for c in powers[a.N]]
    for k, coeff in enumerate(a.poly):
        # a_k Y^k, with a_k multiplying on the left
        for l, al in enumerate(coeff):
            if not al:
                continue
            for j in range(n):
                Pj = powers[k][j]
                if not Pj:
                    continue
                for t in range(n):
                    c = int(L[l, j, t]) * al % p
                    if c:
                        root[t] = _padd(root[t], Pj, p, c)
    return CompiledSystem(p, n, commute, root)


def brute_force_solutions(a, limit=1 << 16):
    """All y with x y = y x and y^N + ... + a_0 = 0, by direct arithmetic."""
    if a.p ** a.dim > limit:
        raise PresentationError(f"search space {a.p}^{a.dim} exceeds {limit}")
    p = a.p
    Y = a.elements()
    X = np.broadcast_to(np.asarray(a.x, dtype=np.int64), Y.shape)
    commute = np.all(a.mul_batch(X, Y) == a.mul_batch(Y, X), axis=1)
    power = np.broadcast_to(np.asarray(a.unit, dtype=np.int64), Y.shape).copy()
    total = np.zeros_like(Y)
    for k in range(a.N):
        coeff = np.broadcast_to(np.asarray(a.poly[k], dtype=np.int64), Y.shape)
        total = (total + a.mul_batch(coeff, power)) % p
        power = a.mul_batch(power, Y)
    total = (total + power) % p
    root = np.all(total == 0, axis=1)
    return {tuple(int(v) for v in row) for row in Y[commute & root]}


def equivalence_instances(a, degrees=(1, 2)):
    """Every x in ``a`` paired with every monic base polynomial of the given degrees."""
    for x in a.elements():
        for N in degrees:
            for coeffs in itertools.product(range(a.p), repeat=N):
                yield a.with_instance(tuple(int(v) for v in x), a.base_polynomial(coeffs))


def default_presentations():
    """All presentations of size at most 81 over F_2 and F_3 used by the suites."""
    out = [AlgebraPresentation.from_field(2, n) for n in range(1, 7)]
    out += [AlgebraPresentation.from_field(3, n) for n in range(1, 5)]
    out += [AlgebraPresentation.matrix_algebra(2), AlgebraPresentation.matrix_algebra(3)]
    return out


def f4_instance():
    """L = F_4 over F_2 on (1, w), x = w, polynomial y^2 + y + 1."""
    a = AlgebraPresentation.from_field(2, 2)
    return a.with_instance((0, 1), a.base_polynomial([1, 1]))


# -- finite Galois correspondence ------------------------------------------------
@dataclass
class ArtinReport:
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def finite_artin_check(e, ambient, exhaustive_limit=1 << 16):
    """Fixed field of <Frob^e>, its degree against the group order, and the
    subgroup / fixed-field correspondence for every divisor of the order."""
    import math

    Pi = ambient.degree
    e %= Pi
    order = Pi // math.gcd(e, Pi) if e else 1
    k_dim = len(ambient.fixed_subfield(e))
    degree_ok = Pi // k_dim == order and Pi % k_dim == 0
    lattice = []
    ok = degree_ok
    for s in sorted(d for d in range(1, order + 1) if order % d == 0):
        # the subgroup of order s is generated by Frob^(e * order / s)
        gen = (e * (order // s)) % Pi
        basis = ambient.fixed_subfield(gen)
        dim = len(basis)
        index_ok = Pi == s * dim
        fixed_ok = all(b.frobenius(gen) == b for b in basis)
        entry = {"subgroup_order": s, "fixed_dimension": dim, "index_ok": index_ok}
        if ambient.order <= exhaustive_limit:
            count = sum(1 for x in range(ambient.order) if ambient.frob(x, gen) == x)
            entry["fixed_points"] = count
            fixed_ok &= count == ambient.p ** dim
        ok &= index_ok and fixed_ok
        lattice.append(entry)
    # inclusion reversal: larger subgroups fix smaller fields
    for x in lattice:
        for y in lattice:
            if y["subgroup_order"] % x["subgroup_order"] == 0:
                ok &= x["fixed_dimension"] % y["fixed_dimension"] == 0
    return ArtinReport(ok, {
        "ambient_degree": Pi,
        "exponent": e,
        "group_order": order,
        "fixed_dimension": k_dim,
        "degree_equals_order": degree_ok,
        "lattice": lattice,
    })


def stabilizer_openness_check(x, schedule):
    """Least level whose field contains ``x``; its congruence subgroup fixes ``x``."""
    F = x.field
    if F.in_subfield(x.value, 1):
        return ArtinReport(True, {"level": "-inf", "stabilizer": "whole group"})
    level = None
    for n in range(len(schedule.d)):
        if membership(x, n, schedule):
            level = n
            break
    if level is None:
        return ArtinReport(False, {"level": None, "stabilizer": "not open within the truncation"})
    modulus = schedule.d[level]
    fixed = all(x.frobenius(modulus * k) == x for k in range(1, 4))
    below = all(not membership(x, n, schedule) for n in range(level))
    return ArtinReport(fixed and below, {
        "level": level,
        "stabilizer": f"contains exponents = 0 mod {modulus}",
        "modulus": modulus,
    })
