"""The twelve acceptance criteria, one test each.

Every test records a PASS/FAIL row that is printed in the terminal summary
(``pytest tests/test_acceptance.py``).  Time budgets are hard limits.
"""

import functools
import random
import time

from conftest import ACCEPTANCE

from skewtower import cli
from skewtower.artin import (
    brute_force_solutions,
    compile_sentence,
    default_presentations,
    equivalence_instances,
    f4_instance,
    finite_artin_check,
)
from skewtower.ffield import finite_field
from skewtower.gext import (
    GaloisAut,
    GextLevel,
    colimit_action,
    diagram_commutation_check,
    fixed_subfield_check,
    galois_group_check,
    outerness_witness,
)
from skewtower.orefrac import frac_equal, random_fraction
from skewtower.scheduler import (
    lemma4_brute_force,
    lemma4_check,
    schedule_example_a,
    validate_schedule,
)
from skewtower.skewpoly import (
    SkewRing,
    commutes_with_generators,
    eval_product_identity_check,
    is_central,
    right_divide,
)
from skewtower.tlaurent import artin_schreier_generator, power_independence_check
from skewtower.tower import Tower, regularity_spot_check


def criterion(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            passed = False
            try:
                fn(*args, **kwargs)
                passed = True
            finally:
                ACCEPTANCE.append((number, title, passed))
                print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {title}")
        return wrapper
    return deco


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.3f}s, budget {self.seconds}s"


@criterion(1, "schedule reproduction for p=2, primes (2,3,5)")
def test_c01_schedule_reproduction():
    schedule_example_a(2, (2, 3, 5))  # warm imports and caches
    with Budget(1e-3):
        s = schedule_example_a(2, (2, 3, 5))
        report = validate_schedule(s)
    assert s.m == (1, 5)
    assert s.alpha == (1, 1, 5)
    assert s.l == (2, 6, 150)
    assert report.ok
    assert {c.name for c in report.conditions} == {
        "l_n | l_n+1", "d_n | a_n+1 l_n+1/l_n - a_n", "d_n | l_n a_n"
    }


@criterion(2, "skew ring soundness in F_64[t; Frob]")
def test_c02_skew_ring_soundness():
    R = SkewRing(finite_field(2, 6), 1)
    rng = random.Random(2)
    with Budget(1.0):
        for _ in range(1000):
            f, g, h = (R.random(rng, 8, nonzero=True) for _ in range(3))
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert (g + h) * f == g * f + h * f
            assert (f * g).degree == f.degree + g.degree
        for _ in range(200):
            f, g = R.random(rng, 8), R.random(rng, 5, nonzero=True)
            q, r = right_divide(f, g)
            assert q * g + r == f and r.degree < g.degree


@criterion(3, "evaluation identity on 500+ samples with g(y) != 0")
def test_c03_evaluation_identity():
    F = finite_field(2, 6)
    twisted = SkewRing(F, 1)
    flat = SkewRing(F, 0)
    rng = random.Random(3)
    twisted_count = flat_count = 0
    with Budget(1.0):
        while twisted_count < 500:
            f, g = twisted.random(rng, 4), twisted.random(rng, 4, nonzero=True)
            try:
                assert eval_product_identity_check(f, g, F.random(rng))
            except ZeroDivisionError:
                continue
            twisted_count += 1
        # central indeterminate evaluated at points of the noncommutative k(t, Frob)
        while flat_count < 100:
            f, g = flat.random(rng, 3), flat.random(rng, 3, nonzero=True)
            y = random_fraction(twisted, rng, 1, 0, nonzero=True)
            try:
                assert eval_product_identity_check(f, g, y)
            except ZeroDivisionError:
                continue
            flat_count += 1


@criterion(4, "fraction/series consistency at precision 40")
def test_c04_fraction_series_consistency():
    R = SkewRing(finite_field(2, 6), 1)
    rng = random.Random(4)
    equal_pairs = 0
    with Budget(5.0):
        for k in range(100):
            x = random_fraction(R, rng)
            if k % 2:
                z = random_fraction(R, rng, nonzero=True)
                y = (x * z) / z
            else:
                y = random_fraction(R, rng)
            X, Y = x.to_laurent(40), y.to_laurent(40)
            assert (x * y).to_laurent(40).agrees(X * Y)
            assert (x - y).to_laurent(40).is_zero() == frac_equal(x, y)
            equal_pairs += frac_equal(x, y)
    assert equal_pairs >= 50


@criterion(5, "centrality of t^n in F_{p^n}(t, Frob)")
def test_c05_centrality():
    with Budget(1.0):
        for p, n in [(2, 2), (2, 6), (3, 3)]:
            F = finite_field(p, n)
            R = SkewRing(F, 1)
            consts = [R.const(F.wrap(v)) for v in range(1, F.order)]
            for j in range(0, 2 * n + 1):
                tj = R.monomial(1, j)
                central = all(tj * c == c * tj for c in consts)
                assert central == (j % n == 0)
                assert is_central(tj) == central == commutes_with_generators(tj)


@criterion(6, "morphism criterion matches the direct homomorphism test")
def test_c06_morphism_criterion():
    count = 0
    with Budget(30.0):
        for ord_h in range(1, 13):
            for ord_k in (k for k in range(1, ord_h + 1) if ord_h % k == 0):
                for a in range(1, 13):
                    for b in range(1, 13):
                        for n in range(1, 7):
                            for m in range(1, 7):
                                assert lemma4_check(ord_k, ord_h, a, b, n, m) == lemma4_brute_force(
                                    2, ord_k, ord_h, a, b, n, m
                                ), (ord_k, ord_h, a, b, n, m)
                                count += 1
    assert count == 181440


def _coherence(tower, rng):
    N = tower.N
    for _ in range(10):
        x, y = tower.random(0, rng), tower.random(0, rng)
        for j in range(N + 1):
            # u_n is a ring homomorphism
            assert (x * y).promote(j) == x.promote(j) * y.promote(j)
            assert (x + y).promote(j) == x.promote(j) + y.promote(j)
            # path independence
            for i in range(j + 1):
                assert x.promote(i).promote(j).value == x.promote(j).value
    for n in range(N + 1):
        for m in range(n, N + 1):
            tower.psi_exponent(n, m)
        assert tower.psi_order_check(n)
        assert tower.basis_independence_check(n)
        assert not tower.basis_independence_check(n, [0, tower.l(n)])
    for n in range(1, N + 1):
        tn, e = tower.root_witness(n - 1, n)
        assert e == tower.l(n) // tower.l(n - 1)
        assert tower.t(n - 1) == tn ** e


@criterion(7, "tower coherence for (2,(2,3)) and (3,(3,2))")
def test_c07_tower_coherence():
    rng = random.Random(7)
    with Budget(5.0):
        for p, primes in [(2, (2, 3)), (3, (3, 2))]:
            _coherence(Tower(schedule_example_a(p, primes)), rng)


@criterion(8, "Galois suite on the (2,(2,3)) Artin-Schreier tower")
def test_c08_galois_suite():
    tower = Tower(schedule_example_a(2, (2, 3)))
    rng = random.Random(8)
    with Budget(10.0):
        for n in range(tower.N + 1):
            level = GextLevel(tower, n)
            group = galois_group_check(level, rng, 20)
            assert group and group.details["order"] == 2 and group.details["faithful"]
            fixed = fixed_subfield_check(level, rng, 20)
            assert fixed and fixed.details["kernel_is_base"]
            assert outerness_witness(level)
        for n in range(tower.N):
            diagram = diagram_commutation_check(tower, n, rng, samples=300)
            assert diagram and diagram.details["samples"] >= 300
            lo = GextLevel(tower, n)
            for _ in range(30):
                x = lo.random(rng)
                for phi in lo.automorphisms():
                    colimit_action(phi, x)
        # the generator moves X at every level
        for n in range(tower.N + 1):
            level = GextLevel(tower, n)
            assert GaloisAut(1, level.spec).order == 2


@criterion(9, "compiled sentence equals brute force on every presentation of size <= 81")
def test_c09_compiler_equivalence():
    instances = 0
    with Budget(30.0):
        for a in default_presentations():
            assert a.p ** a.dim <= 81
            for inst in equivalence_instances(a):
                assert compile_sentence(inst).solutions() == brute_force_solutions(inst)
                instances += 1
        f4 = f4_instance()
        assert compile_sentence(f4).solutions() == brute_force_solutions(f4) == {(0, 1), (1, 1)}
    assert instances == 3264


@criterion(10, "finite Galois correspondence up to F_{2^12} and F_{3^6}")
def test_c10_finite_artin():
    with Budget(10.0):
        for p, top in [(2, 12), (3, 6)]:
            for n in range(1, top + 1):
                ambient = finite_field(p, n)
                for e in range(n):
                    report = finite_artin_check(e, ambient)
                    assert report, report.details
                    assert report.details["degree_equals_order"]


@criterion(11, "regularity spot checks to bound 20")
def test_c11_regularity():
    tower = Tower(schedule_example_a(2, (2, 3)))
    with Budget(1.0):
        t0 = regularity_spot_check(tower.t(0), 20)
        assert t0 and t0.branch == "direct"
        shifted = regularity_spot_check(1 + tower.t(1), 20)
        assert shifted and shifted.branch == "constant term removed"
        assert power_independence_check(artin_schreier_generator(2, 42), 20)
        assert power_independence_check(artin_schreier_generator(3, 42), 20)


@criterion(12, "byte-identical verify reports for identical spec and seed")
def test_c12_determinism(tmp_path):
    spec = tmp_path / "tower.ini"
    spec.write_text("[tower]\np = 2\nprimes = 2, 3\ntruncation = 1\n\n[checks]\nseed = 11\n")
    outs = [tmp_path / "run1.json", tmp_path / "run2.json"]
    codes = [cli.main(["verify", "--spec", str(spec), "--suite", "all", "--out", str(o)]) for o in outs]
    assert codes == [0, 0]
    first, second = (o.read_bytes() for o in outs)
    assert first == second
    assert first.endswith(b"\n")
