"""Galois extensions h_n(t, s^{a_n}) (x) L_{l_n} of the tower levels.

Level n is the quotient algebra ``B[X] / (P(X))`` over the skew fraction
field B = h_n(t, s^{a_n}) with a central indeterminate X standing for
S(t^{l_n}).  Two presets are provided:

* Artin-Schreier: ``X^p - X - t^{l_n}``, group Z/p acting by X -> X + c;
* Kummer (p odd): ``X^2 - 1 - t^{l_n}``, group Z/2 acting by X -> -X.

``t^{l_n}`` is central because d_n | l_n a_n, so both relations have
central coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .orefrac import OreFraction, random_fraction
from .tlaurent import artin_schreier_generator, kummer_generator, substitute

PRESETS = ("artin_schreier", "kummer")


class GextError(ValueError):
    pass


class FieldInvariantBreach(AssertionError):
    """A level algebra turned out not to be a field."""


@dataclass(frozen=True)
class CommExtSpec:
    """The commutative extension L = k(t)(S) used to build every level."""

    p: int
    preset: str = "artin_schreier"

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise GextError(f"unknown preset {self.preset!r}; choose from {PRESETS}")
        if self.preset == "kummer" and self.p == 2:
            raise GextError("the Kummer preset needs odd characteristic")

    @property
    def group_order(self):
        return self.p if self.preset == "artin_schreier" else 2

    @property
    def degree(self):
        return self.group_order

    @property
    def minpoly(self):
        return "X^p - X - t" if self.preset == "artin_schreier" else "X^2 - 1 - t"

    def generator_series(self, prec, ring=None):
        if self.preset == "artin_schreier":
            return artin_schreier_generator(self.p, prec, ring)
        return kummer_generator(self.p, prec, ring)


@dataclass(frozen=True)
class GaloisAut:
    """Element c of the cyclic group: X -> X + c, or X -> (-1)^c X for Kummer."""

    shift: int
    spec: CommExtSpec

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.spec.group_order)

    @property
    def order(self):
        q = self.spec.group_order
        return 1 if self.shift == 0 else q  # q is prime

    def compose(self, other):
        return GaloisAut(self.shift + other.shift, self.spec)

    def is_identity(self):
        return self.shift == 0

    def matrix(self):
        """F_p matrix M with ``coords(phi(x)) = M coords(x)``."""
        q, p, c = self.spec.degree, self.spec.p, self.shift
        M = [[0] * q for _ in range(q)]
        if self.spec.preset == "kummer":
            for i in range(q):
                M[i][i] = (-1) ** (c * i) % p
            return M
        # X^i -> (X + c)^i = sum_k C(i, k) c^(i-k) X^k
        for i in range(q):
            for k in range(i + 1):
                M[k][i] = comb(i, k) * pow(c, i - k, p) % p
        return M


class GextLevel:
    """The algebra at tower level ``n``."""

    def __init__(self, tower, n, spec=None):
        self.tower = tower
        self.n = n
        self.spec = spec or CommExtSpec(tower.schedule.p)
        if self.spec.p != tower.schedule.p:
            raise GextError("characteristic mismatch between tower and extension")
        self.base = tower.ring(n)
        self.l = tower.l(n)
        self.degree = self.spec.degree
        R = self.base
        self._powers = {}
        tl = OreFraction(R.monomial(1, self.l))
        # X^q = sum_k rel[k] X^k
        if self.spec.preset == "artin_schreier":
            self._rel = [tl, OreFraction(R.one())] + [OreFraction(R.zero())] * (self.degree - 2)
        else:
            self._rel = [tl + 1, OreFraction(R.zero())]

    def __repr__(self):
        return f"GextLevel(n={self.n}, l={self.l}, preset={self.spec.preset})"

    def __eq__(self, other):
        return isinstance(other, GextLevel) and (self.tower, self.n, self.spec) == (
            other.tower, other.n, other.spec)

    def __hash__(self):
        return hash((id(self.tower), self.n, self.spec))

    # -- constructors ----------------------------------------------------------
    def _frac(self, v):
        if isinstance(v, OreFraction):
            return v
        return OreFraction(self.base.const(v)) if not hasattr(v, "ring") else OreFraction(v)

    def __call__(self, coords):
        coords = [self._frac(c) for c in coords]
        zero = OreFraction(self.base.zero())
        coords += [zero] * (self.degree - len(coords))
        if len(coords) != self.degree:
            raise GextError(f"expected at most {self.degree} coordinates")
        return GextElem(self, tuple(coords))

    def embed(self, x):
        """Base element as ``x + 0 X + ...``."""
        return self([x])

    def zero(self):
        return self([])

    def one(self):
        return self([1])

    def X(self):
        return self([0, 1])

    def t(self):
        return self.embed(OreFraction(self.base.gen()))

    def scalar_generator(self):
        return self.embed(OreFraction(self.base.const(self.base.scalar_generator())))

    def random(self, rng, num_degree=2, den_degree=1, nonzero=False):
        while True:
            x = self([random_fraction(self.base, rng, num_degree, den_degree)
                      for _ in range(self.degree)])
            if not nonzero or not x.is_zero():
                return x

    def automorphisms(self):
        return [GaloisAut(c, self.spec) for c in range(self.spec.group_order)]

    # -- reduction -------------------------------------------------------------
    def _reduce(self, coeffs):
        """Reduce a list of coefficients of X^0.. modulo the relation."""
        q = self.degree
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, q - 1, -1):
            c = coeffs[k]
            if c.is_zero():
                continue
            # c X^k = c X^(k-q) X^q = sum_j c rel[j] X^(k-q+j)
            for j, r in enumerate(self._rel):
                if not r.is_zero():
                    coeffs[k - q + j] = coeffs[k - q + j] + c * r
        return coeffs[:q]

    def _power_coords(self, k):
        """Coordinates of X^k; all of them are central."""
        if k not in self._powers:
            R = self.base
            zero, one = OreFraction(R.zero()), OreFraction(R.one())
            self._powers[k] = self._reduce([zero] * k + [one])
        return self._powers[k]

    def transition(self, x):
        """v_n: coordinates promote, X_{l_n} -> X_{l_{n+1}}."""
        nxt = GextLevel(self.tower, self.n + 1, self.spec)
        return GextElem(nxt, tuple(self.tower.promote_fraction(c, self.n, self.n + 1)
                                   for c in x.coords))

    def generator_series(self, prec):
        return substitute(self.spec.generator_series(prec, self.base), self.l)


class GextElem:
    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        self.parent = parent
        self.coords = coords

    @property
    def level(self):
        return self.parent.n

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def _lift(self, other):
        if isinstance(other, GextElem):
            if other.parent != self.parent:
                raise GextError("elements of different levels; use transition first")
            return other
        try:
            return self.parent.embed(other)
        except Exception:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return GextElem(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return GextElem(self.parent, tuple(-a for a in self.coords))

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
        P = self.parent
        zero = OreFraction(P.base.zero())
        prod = [zero] * (2 * P.degree - 1)
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return GextElem(P, tuple(P._reduce(prod)))

    def __rmul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.parent.one()
        for _ in range(k):
            result = result * self
        return result

    def multiplication_matrix(self):
        """Matrix of ``y -> self * y`` on coordinates; entries act on the left."""
        P = self.parent
        q = P.degree
        zero = OreFraction(P.base.zero())
        M = [[zero] * q for _ in range(q)]
        for j in range(q):
            for i, a in enumerate(self.coords):
                if a.is_zero():
                    continue
                for k, r in enumerate(P._power_coords(i + j)):
                    if not r.is_zero():
                        M[k][j] = M[k][j] + a * r
        return M

    def inverse(self):
        """Solve ``self * y = 1``; a singular system would contradict field-ness."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        P = self.parent
        R = P.base
        rhs = [OreFraction(R.one())] + [OreFraction(R.zero())] * (P.degree - 1)
        try:
            y = linalg.solve_left(self.multiplication_matrix(), rhs)
        except linalg.SingularSystem as exc:
            raise FieldInvariantBreach(f"level {P.n} algebra has a zero divisor: {exc}") from exc
        return GextElem(P, tuple(y))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(self.parent)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if not c.is_zero():
                terms.append(f"[{c}]" + ("" if i == 0 else "*X" if i == 1 else f"*X^{i}"))
        return "GextElem(" + (" + ".join(terms) or "0") + ")"

    def to_laurent(self, prec):
        """Image under X -> S(t^{l_n}) in the twisted series field."""
        S = self.parent.generator_series(prec)
        acc = None
        power = None
        for c in self.coords:
            power = S.scalar(1) if power is None else power * S
            term = c.to_laurent(prec) * power
            acc = term if acc is None else acc + term
        return acc


def gext_arith(x, y, op):
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)


def galois_apply(phi, x):
    """Apply X -> X + c (or X -> -X) and re-expand in the power basis."""
    M = phi.matrix()
    P = x.parent
    zero = OreFraction(P.base.zero())
    out = []
    for k in range(P.degree):
        acc = zero
        for i, c in enumerate(x.coords):
            if M[k][i] and not c.is_zero():
                acc = acc + c * M[k][i]
        out.append(acc)
    return GextElem(P, tuple(out))


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"name": self.name, "pass": self.passed, "details": self.details}


def fixed_subfield_check(level, rng, sample_size=20):
    """Fixed set of the whole group equals the embedded base field.

    (i) embedded base elements are fixed by every automorphism;
    (ii) samples with a nonzero higher coordinate are moved by the generator;
    (iii) exact: the F_p-kernel of the stacked ``M_phi - I`` is spanned by e_0,
    so a fixed element has all higher coordinates zero.
    """
    from .linalg import nullspace

    p, q = level.spec.p, level.degree
    auts = level.automorphisms()
    gen = GaloisAut(1, level.spec)
    base_fixed = True
    for _ in range(sample_size):
        b = level.embed(random_fraction(level.base, rng, 2, 1))
        base_fixed &= all(galois_apply(phi, b) == b for phi in auts)
    for b in (level.t(), level.scalar_generator()):
        base_fixed &= all(galois_apply(phi, b) == b for phi in auts)
    moved = True
    tested = 0
    for _ in range(sample_size):
        x = level.random(rng)
        if any(not c.is_zero() for c in x.coords[1:]):
            tested += 1
            moved &= galois_apply(gen, x) != x
    rows = []
    for phi in auts:
        M = phi.matrix()
        rows += [[(M[i][j] - (i == j)) % p for j in range(q)] for i in range(q)]
    kernel = nullspace(rows, q, p)
    e0 = [1] + [0] * (q - 1)
    exact = len(kernel) == 1 and _proportional(kernel[0], e0, p)
    return CheckReport(
        f"gext.fixed_subfield.level{level.n}",
        base_fixed and moved and exact,
        {"base_fixed": base_fixed, "moved_samples": tested, "moved": moved,
         "kernel_dimension": len(kernel), "kernel_is_base": exact},
    )


def _proportional(u, v, p):
    from .linalg import rank

    return rank([u, v], p) == 1


def outerness_witness(level, prec=12):
    """X is central (in the algebra and as a series) yet moved by the generator."""
    gen = GaloisAut(1, level.spec)
    X = level.X()
    gens = [level.t(), level.scalar_generator()]
    central = all(X * g == g * X for g in gens)
    S = X.to_laurent(prec)
    central_series = all((S * g.to_laurent(prec)).agrees(g.to_laurent(prec) * S) for g in gens)
    image = galois_apply(gen, X)
    moved = image != X
    return CheckReport(
        f"gext.outerness.level{level.n}",
        central and central_series and moved,
        {"central": central, "central_in_series": central_series, "moved": moved,
         "image": repr(image)},
    )


def diagram_commutation_check(tower, n, rng, samples=300, spec=None):
    """Transition maps commute with embeddings and with the Galois action."""
    lo = GextLevel(tower, n, spec)
    hi = GextLevel(tower, n + 1, spec)
    auts = lo.automorphisms()
    gens = [lo.X(), lo.t(), lo.scalar_generator()]
    square = True
    for b in [tower.ring(n).gen(), tower.ring(n).const(tower.ring(n).scalar_generator())]:
        b = OreFraction(b)
        square &= lo.transition(lo.embed(b)) == hi.embed(tower.promote_fraction(b, n, n + 1))
    failures = 0
    for k in range(len(gens) + samples):
        x = gens[k] if k < len(gens) else lo.random(rng)
        tx = lo.transition(x)
        for phi in auts:
            if lo.transition(galois_apply(phi, x)) != galois_apply(GaloisAut(phi.shift, hi.spec), tx):
                failures += 1
    return CheckReport(
        f"gext.diagram.level{n}",
        square and failures == 0,
        {"square": square, "samples": samples + len(gens), "failures": failures},
    )


def colimit_action(phi, x):
    """Apply phi at the element's level; when a next level exists, also apply
    it there and require the two results to agree after transition."""
    P = x.parent
    y = galois_apply(phi, x)
    if P.n < P.tower.N:
        up = galois_apply(phi, P.transition(x))
        if P.transition(y) != up:
            raise AssertionError(f"Galois action is not level independent at level {P.n}")
    return y


def galois_group_check(level, rng, samples=20):
    """The automorphisms form a cyclic group of order q acting faithfully."""
    auts = level.automorphisms()
    q = level.spec.group_order
    law = True
    for phi in auts:
        for psi in auts:
            x = level.random(rng)
            law &= galois_apply(phi, galois_apply(psi, x)) == galois_apply(phi.compose(psi), x)
    X = level.X()
    images = {repr(galois_apply(phi, X)) for phi in auts}
    faithful = len(images) == q
    ring_hom = True
    for _ in range(samples):
        x, y = level.random(rng), level.random(rng)
        phi = auts[rng.randrange(q)]
        ring_hom &= galois_apply(phi, x * y) == galois_apply(phi, x) * galois_apply(phi, y)
    return CheckReport(
        f"gext.group.level{level.n}",
        law and faithful and ring_hom,
        {"order": q, "group_law": law, "faithful": faithful, "multiplicative": ring_hom},
    )
