"""Invariant suites run by ``skewtower verify``.

Every check is a function ``(ctx, rng) -> (passed, witness)`` registered
under a dotted name whose prefix is its suite.  Each check gets its own
generator seeded from the run seed and the check name, so adding or
removing a check never changes the samples drawn by another.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field

from .ffield import finite_field, membership
from .gext import (
    CommExtSpec,
    GaloisAut,
    GextLevel,
    colimit_action,
    diagram_commutation_check,
    fixed_subfield_check,
    galois_group_check,
    galois_apply,
    outerness_witness,
)
from .orefrac import OreFraction, centralize, random_fraction
from .scheduler import (
    ScheduleError,
    lemma4_brute_force,
    lemma4_check,
    rebase_schedule,
    validate_schedule,
)
from .skewpoly import (
    SkewRing,
    commutes_with_generators,
    eval_product_identity_check,
    is_central,
    left_divide,
    right_divide,
)
from .tlaurent import (
    TwistedLaurent,
    artin_schreier_generator,
    power_independence_check,
    substitute,
)
from .tower import Tower, regularity_spot_check

SUITES = ("field", "skew", "frac", "laurent", "schedule", "tower", "gext", "artin")

_REGISTRY = {}


def check(name):
    def deco(fn):
        _REGISTRY[name] = fn
        return fn
    return deco


@dataclass
class Context:
    schedule: object
    preset: str = "artin_schreier"
    precision: int = 20
    samples: int = 20
    _tower: object = field(default=None, repr=False)

    @property
    def p(self):
        return self.schedule.p

    @property
    def tower(self):
        if self._tower is None:
            self._tower = Tower(self.schedule)
        return self._tower

    @property
    def field(self):
        return finite_field(self.p, self.schedule.ambient_degree)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict

    def to_dict(self):
        return {"name": self.name, "status": "pass" if self.passed else "fail", "witness": self.witness}


def check_seed(seed, name):
    return (int(seed) << 32) ^ zlib.crc32(name.encode())


def check_names(suite="all"):
    if suite == "all":
        return sorted(_REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return sorted(n for n in _REGISTRY if n.split(".")[0] == suite)


def run_checks(ctx, suite="all", seed=0):
    out = []
    for name in check_names(suite):
        rng = random.Random(check_seed(seed, name))
        try:
            passed, witness = _REGISTRY[name](ctx, rng)
        except (ScheduleError, ValueError, ArithmeticError, AssertionError) as exc:
            passed, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        out.append(CheckResult(name, bool(passed), witness))
    return out


def _count(flags):
    flags = list(flags)
    return sum(flags) == len(flags), {"samples": len(flags), "failures": len(flags) - sum(flags)}


# -- field ---------------------------------------------------------------------
@check("field.axioms")
def _field_axioms(ctx, rng):
    F = ctx.field
    flags = []
    for _ in range(ctx.samples * 5):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        flags.append((a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
                     and a * b == b * a and (a.is_zero() or a * a.inverse() == 1))
    return _count(flags)


@check("field.frobenius")
def _field_frobenius(ctx, rng):
    F = ctx.field
    flags = []
    for _ in range(ctx.samples * 5):
        a, b = F.random(rng), F.random(rng)
        e = rng.randrange(F.degree)
        flags.append((a * b).frobenius(e) == a.frobenius(e) * b.frobenius(e)
                     and (a + b).frobenius(e) == a.frobenius(e) + b.frobenius(e)
                     and a.frobenius(F.degree) == a)
    return _count(flags)


@check("field.tower_nested")
def _field_nested(ctx, rng):
    s = ctx.schedule
    F = ctx.field
    flags = []
    for n in range(len(s.d)):
        for _ in range(ctx.samples):
            x = F.random(rng, s.d[n])
            flags.append(all(membership(x, j, s) for j in range(n, len(s.d))))
    return _count(flags)


@check("field.fixed_points")
def _field_fixed_points(ctx, rng):
    F = ctx.field
    counts = {}
    ok = True
    for d in ctx.schedule.d:
        dim = len(F.fixed_subfield(d))
        ok &= dim == d
        if F.order <= 1 << 16:
            count = sum(1 for x in range(F.order) if F.frob(x, d) == x)
            counts[str(d)] = count
            ok &= count == F.p ** d
    return ok, {"fixed_point_counts": counts}


# -- skew polynomials ------------------------------------------------------------
def _top_ring(ctx):
    s = ctx.schedule
    return SkewRing(ctx.field, s.a[-1], s.d[-1])


@check("skew.ring_axioms")
def _skew_axioms(ctx, rng):
    R = _top_ring(ctx)
    flags = []
    for _ in range(ctx.samples * 5):
        f, g, h = (R.random(rng, 8, nonzero=True) for _ in range(3))
        flags.append((f * g) * h == f * (g * h) and f * (g + h) == f * g + f * h
                     and (g + h) * f == g * f + h * f
                     and (f * g).degree == f.degree + g.degree)
    return _count(flags)


@check("skew.division")
def _skew_division(ctx, rng):
    R = _top_ring(ctx)
    flags = []
    for _ in range(ctx.samples * 2):
        f, g = R.random(rng, 8), R.random(rng, 5, nonzero=True)
        q, r = right_divide(f, g)
        q2, r2 = left_divide(f, g)
        flags.append(q * g + r == f and r.degree < g.degree and right_divide(r, g)[0].is_zero()
                     and g * q2 + r2 == f and r2.degree < g.degree)
    return _count(flags)


@check("skew.eval_identity")
def _skew_eval(ctx, rng):
    F = ctx.field
    s = ctx.schedule
    points = SkewRing(F, s.a[-1], s.d[-1])
    flat = SkewRing(F, 0, points.level)
    twisted = SkewRing(F, s.a[0], s.d[0])
    flags = []
    skipped = 0
    for k in range(ctx.samples * 2):
        try:
            if k % 2:
                # central indeterminate, evaluated at a noncommuting point
                f, g = flat.random(rng, 3), flat.random(rng, 3, nonzero=True)
                y = random_fraction(points, rng, 2, 1, nonzero=True)
                flags.append(eval_product_identity_check(f, g, y))
            else:
                f, g = twisted.random(rng, 4), twisted.random(rng, 4, nonzero=True)
                flags.append(eval_product_identity_check(f, g, F.random(rng, s.d[0])))
        except ZeroDivisionError:
            skipped += 1
    ok, w = _count(flags)
    w["skipped_zero_g"] = skipped
    return ok, w


@check("skew.centrality")
def _skew_centrality(ctx, rng):
    R = _top_ring(ctx)
    r = R.order
    flags = []
    for j in range(0, 2 * r + 1):
        tj = R.monomial(1, j)
        flags.append(is_central(tj) == (j % r == 0) == commutes_with_generators(tj))
    for _ in range(ctx.samples):
        f = R.random(rng, 2 * r)
        flags.append(is_central(f) == commutes_with_generators(f))
    return _count(flags)


# -- fractions -------------------------------------------------------------------
def _frac_ring(ctx):
    s = ctx.schedule
    return SkewRing(ctx.field, s.a[0], s.d[0])


@check("frac.field_axioms")
def _frac_axioms(ctx, rng):
    R = _frac_ring(ctx)
    flags = []
    for _ in range(ctx.samples):
        x, y, z = (random_fraction(R, rng) for _ in range(3))
        flags.append((x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z
                     and (x + y) * z == x * z + y * z
                     and (y.is_zero() or ((x * y) * y.inverse() == x and y.inverse() * y == 1)))
    return _count(flags)


@check("frac.centralize")
def _frac_centralize(ctx, rng):
    R = _frac_ring(ctx)
    flags = []
    for _ in range(ctx.samples):
        g = R.random(rng, 4, nonzero=True)
        h, c = centralize(g)
        flags.append(g * h == c and is_central(c) and c.leading() == 1)
    return _count(flags)


@check("frac.laurent_embedding")
def _frac_laurent(ctx, rng):
    R = _frac_ring(ctx)
    prec = ctx.precision
    flags = []
    for _ in range(ctx.samples):
        x, y = random_fraction(R, rng), random_fraction(R, rng)
        X, Y = x.to_laurent(prec), y.to_laurent(prec)
        same = (x - y).to_laurent(prec).is_zero()
        flags.append((x * y).to_laurent(prec).agrees(X * Y)
                     and (x + y).to_laurent(prec).agrees(X + Y)
                     and same == (x == y))
        flags.append(x.to_laurent(prec).agrees((x * 1).to_laurent(prec)))
    return _count(flags)


# -- series ------------------------------------------------------------------------
def _random_series(R, rng, prec):
    v = rng.randrange(-3, 4)
    coeffs = [R.random_coeff(rng) for _ in range(prec)]
    coeffs[0] = coeffs[0] or 1
    return TwistedLaurent(R, v, coeffs, prec)


@check("laurent.ring_axioms")
def _laurent_axioms(ctx, rng):
    R = _frac_ring(ctx)
    flags = []
    for _ in range(ctx.samples):
        x, y, z = (_random_series(R, rng, ctx.precision) for _ in range(3))
        flags.append(((x * y) * z).agrees(x * (y * z)) and (x * (y + z)).agrees(x * y + x * z)
                     and (x * y).valuation() == x.valuation() + y.valuation()
                     and (x * x.inverse()).agrees(x.scalar(1))
                     and x.inverse().inverse().agrees(x))
    return _count(flags)


@check("laurent.artin_schreier")
def _laurent_as(ctx, rng):
    p = ctx.p
    S = artin_schreier_generator(p, ctx.precision)
    t = TwistedLaurent(S.ring, 1, [1], ctx.precision)
    return (S ** p - S).agrees(t), {"prec": ctx.precision, "valuation": S.valuation()}


@check("laurent.substitute")
def _laurent_substitute(ctx, rng):
    R = SkewRing(finite_field(ctx.p, 1), 0)
    flags = []
    for _ in range(ctx.samples):
        m = rng.randrange(1, 5)
        x, y = (_random_series(R, rng, ctx.precision) for _ in range(2))
        flags.append(substitute(x * y, m).agrees(substitute(x, m) * substitute(y, m))
                     and substitute(x + y, m).agrees(substitute(x, m) + substitute(y, m)))
    return _count(flags)


@check("laurent.power_independence")
def _laurent_power(ctx, rng):
    S = artin_schreier_generator(ctx.p, ctx.precision)
    return power_independence_check(S, 20), {"bound": 20}


# -- schedule ----------------------------------------------------------------------
@check("schedule.validate")
def _schedule_validate(ctx, rng):
    r = validate_schedule(ctx.schedule)
    return r.ok, {"conditions": [f"{c.index}: {c.text()}" for c in r.conditions]}


@check("schedule.morphism_criterion")
def _schedule_lemma4(ctx, rng):
    s = ctx.schedule
    rows = []
    ok = True
    for n in range(len(s.d) - 1):
        m = s.l[n + 1] // s.l[n] if s.l[n + 1] % s.l[n] == 0 else None
        if m is None:
            ok = False
            rows.append(f"{n}: undefined ratio")
            continue
        args = (s.d[n], s.d[n + 1], s.a[n + 1], s.a[n], s.l[n], m)
        formula = lemma4_check(*args)
        direct = lemma4_brute_force(s.p, *args) if s.d[n + 1] <= 12 else formula
        ok &= formula and formula == direct
        rows.append(f"{n}: criterion={formula} direct={direct}")
    return ok, {"edges": rows}


@check("schedule.rebase")
def _schedule_rebase(ctx, rng):
    r = rebase_schedule(ctx.schedule)
    return validate_schedule(r).ok, {"rebased": r.to_dict()}


# -- tower -------------------------------------------------------------------------
@check("tower.promotion")
def _tower_promotion(ctx, rng):
    T = ctx.tower
    flags = []
    for n in range(T.N):
        for _ in range(ctx.samples):
            x, y = T.random(n, rng), T.random(n, rng)
            flags.append((x * y).promote(n + 1) == x.promote(n + 1) * y.promote(n + 1)
                         and (x + y).promote(n + 1) == x.promote(n + 1) + y.promote(n + 1))
            for k in range(n + 2, T.N + 1):
                flags.append(x.promote(n + 1).promote(k).value == x.promote(k).value)
    return _count(flags)


@check("tower.psi")
def _tower_psi(ctx, rng):
    T = ctx.tower
    exps = {}
    for n in range(T.N + 1):
        for m in range(n, T.N + 1):
            exps[f"{n},{m}"] = T.psi_exponent(n, m).exponent
    return all(T.psi_order_check(n) for n in range(T.N + 1)), {"exponents": exps}


@check("tower.roots")
def _tower_roots(ctx, rng):
    T = ctx.tower
    ex = {}
    for m in range(T.N + 1):
        for n in range(m, T.N + 1):
            ex[f"{m},{n}"] = T.root_witness(m, n)[1]
    return True, {"exponents": ex}


@check("tower.basis")
def _tower_basis(ctx, rng):
    T = ctx.tower
    ok = all(T.basis_independence_check(n) for n in range(T.N + 1))
    control = T.basis_independence_check(0, [0, T.l(0)])
    return ok and not control, {"negative_control_rejected": not control}


@check("tower.regularity")
def _tower_regularity(ctx, rng):
    T = ctx.tower
    items = {"t_0": T.t(0), "1 + t_N": 1 + T.t(T.N),
             "generator": T.const(0, T.field.subfield_generator(T.schedule.d[0]))}
    res = {k: regularity_spot_check(v, 20) for k, v in items.items()}
    return all(res.values()), {k: v.branch for k, v in res.items()}


# -- gext ----------------------------------------------------------------------------
def _levels(ctx):
    spec = CommExtSpec(ctx.p, ctx.preset)
    return spec, [GextLevel(ctx.tower, n, spec) for n in range(ctx.tower.N + 1)]


@check("gext.field")
def _gext_field(ctx, rng):
    _, levels = _levels(ctx)
    flags = []
    for L in levels:
        for _ in range(ctx.samples):
            x = L.random(rng, nonzero=True)
            y = L.random(rng)
            flags.append(x * x.inverse() == 1
                         and (x * y).to_laurent(ctx.precision).agrees(
                             x.to_laurent(ctx.precision) * y.to_laurent(ctx.precision)))
    return _count(flags)


@check("gext.group")
def _gext_group(ctx, rng):
    _, levels = _levels(ctx)
    reports = [galois_group_check(L, rng, max(ctx.samples // 4, 1)) for L in levels]
    return all(reports), {r.name: r.details for r in reports}


@check("gext.fixed_field")
def _gext_fixed(ctx, rng):
    _, levels = _levels(ctx)
    reports = [fixed_subfield_check(L, rng, max(ctx.samples // 2, 1)) for L in levels]
    return all(reports), {r.name: r.details for r in reports}


@check("gext.outerness")
def _gext_outer(ctx, rng):
    _, levels = _levels(ctx)
    reports = [outerness_witness(L) for L in levels]
    return all(reports), {r.name: {k: v for k, v in r.details.items() if k != "image"} for r in reports}


@check("gext.diagrams")
def _gext_diagrams(ctx, rng):
    spec, _ = _levels(ctx)
    reports = [diagram_commutation_check(ctx.tower, n, rng, ctx.samples, spec)
               for n in range(ctx.tower.N)]
    return all(reports), {r.name: r.details for r in reports}


@check("gext.colimit_action")
def _gext_colimit(ctx, rng):
    spec, levels = _levels(ctx)
    flags = []
    for L in levels:
        for c in range(spec.group_order):
            phi = GaloisAut(c, spec)
            flags.append(colimit_action(phi, L.X()) == galois_apply(phi, L.X()))
        for _ in range(max(ctx.samples // 4, 1)):
            x = L.random(rng)
            a, b = GaloisAut(rng.randrange(spec.group_order), spec), GaloisAut(rng.randrange(spec.group_order), spec)
            flags.append(colimit_action(a.compose(b), x) == colimit_action(a, colimit_action(b, x)))
    return _count(flags)


# -- artin -----------------------------------------------------------------------------
@check("artin.compiler")
def _artin_compiler(ctx, rng):
    from .artin import brute_force_solutions, compile_sentence, default_presentations, equivalence_instances, f4_instance

    a = f4_instance()
    f4 = compile_sentence(a).solutions() == brute_force_solutions(a) == {(0, 1), (1, 1)}
    total = bad = 0
    for P in default_presentations():
        for inst in equivalence_instances(P):
            total += 1
            bad += compile_sentence(inst).solutions() != brute_force_solutions(inst)
    return f4 and bad == 0, {"instances": total, "disagreements": bad, "f4_instance": f4}


@check("artin.finite_artin")
def _artin_finite(ctx, rng):
    from .artin import finite_artin_check

    F = ctx.field
    reports = {str(e): finite_artin_check(e, F).passed for e in range(F.degree)}
    return all(reports.values()), {"exponents": reports}


@check("artin.stabilizers")
def _artin_stabilizers(ctx, rng):
    from .artin import stabilizer_openness_check

    s = ctx.schedule
    F = ctx.field
    levels = {}
    ok = True
    for n, d in enumerate(s.d):
        x = F.subfield_generator(d)
        r = stabilizer_openness_check(x, s)
        ok &= r.passed and (r.details["level"] == n or (d == 1 and r.details["level"] == "-inf"))
        levels[str(d)] = r.details["level"]
    return ok, {"least_levels": levels}
