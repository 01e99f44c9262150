import random

import pytest
from hypothesis import given, settings, strategies as st

from skewtower.gext import (
    CommExtSpec,
    GaloisAut,
    GextError,
    GextLevel,
    colimit_action,
    diagram_commutation_check,
    fixed_subfield_check,
    galois_apply,
    galois_group_check,
    outerness_witness,
)
from skewtower.orefrac import OreFraction


@pytest.fixture(scope="module")
def level0(tower23):
    return GextLevel(tower23, 0)


def test_relation_x_squared(level0, tower23):
    X = level0.X()
    t2 = level0.embed(OreFraction(tower23.ring(0).monomial(1, 2)))
    assert X * X == X + t2


def test_shift_action_char_2(level0, tower23):
    phi = GaloisAut(1, level0.spec)
    a = OreFraction(tower23.ring(0).gen())
    b = OreFraction(tower23.ring(0).one())
    x = level0([a, b])
    assert galois_apply(phi, x) == level0([a + b, b])
    assert galois_apply(phi, level0.embed(a)) == level0.embed(a)
    assert galois_apply(phi, level0.X()) == level0.X() + 1


def test_group_law_exhaustive():
    for spec in (CommExtSpec(2), CommExtSpec(3), CommExtSpec(5, "kummer")):
        q = spec.group_order
        for c in range(q):
            for d in range(q):
                assert GaloisAut(c, spec).compose(GaloisAut(d, spec)) == GaloisAut(c + d, spec)


def test_kummer_needs_odd_characteristic():
    with pytest.raises(GextError):
        CommExtSpec(2, "kummer")
    with pytest.raises(GextError):
        CommExtSpec(3, "bogus")


@pytest.mark.parametrize("sched,preset", [("tower23", "artin_schreier"), ("tower32", "artin_schreier"),
                                          ("tower32", "kummer")])
def test_level_checks(request, sched, preset):
    tower = request.getfixturevalue(sched)
    spec = CommExtSpec(tower.schedule.p, preset)
    rng = random.Random(1)
    for n in range(tower.N + 1):
        level = GextLevel(tower, n, spec)
        assert galois_group_check(level, rng, 5)
        assert fixed_subfield_check(level, rng, 5).details["kernel_is_base"]
        assert outerness_witness(level)
    assert diagram_commutation_check(tower, 0, rng, 20, spec)


def test_colimit_action_level_independent(tower23):
    lo = GextLevel(tower23, 0)
    for c in range(2):
        phi = GaloisAut(c, lo.spec)
        image = colimit_action(phi, lo.X())
        assert image == lo.X() + c


def test_series_realisation(level0):
    # X acts as S(t^{l_0}) with S^2 + S = t
    S = level0.generator_series(20)
    t_l = level0.t() ** level0.l
    assert (S * S + S).agrees(t_l.to_laurent(20))
    x = level0.X() * level0.t() + 1
    assert x.to_laurent(20).agrees(level0.X().to_laurent(20) * level0.t().to_laurent(20) + 1)


@settings(max_examples=15)
@given(st.integers(0, 2 ** 32))
def test_level_is_a_field(tower23, seed):
    level = GextLevel(tower23, 0)
    rng = random.Random(seed)
    x, y = level.random(rng, nonzero=True), level.random(rng)
    assert x * x.inverse() == level.one()
    assert (y * x) / x == y
