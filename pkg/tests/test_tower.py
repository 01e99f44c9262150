import random

import pytest
from hypothesis import given, strategies as st

from skewtower.orefrac import OreFraction
from skewtower.scheduler import schedule_example_a, unit_twist_schedule
from skewtower.tower import Tower, TowerError, regularity_spot_check


def test_promotion_of_t(tower23):
    t0, t1 = tower23.t(0), tower23.t(1)
    assert t0.promote(1).value == OreFraction(tower23.ring(1).monomial(1, 3))
    assert t0 == t1 ** 3
    assert (t0 * t1).level == 1 and t0 * t1 == t1 ** 4


def test_inverse_commutes_with_promotion(tower23):
    t0 = tower23.t(0)
    assert t0.inverse().promote(1) == t0.promote(1).inverse()


def test_psi_exponents(tower23):
    assert tower23.psi_exponent(0, 1).exponent == 3
    assert tower23.psi_exponent(0, 0).exponent == 1
    assert tower23.psi_order_check(0) and tower23.psi_order_check(1)


def test_root_witness():
    tower = Tower(schedule_example_a(2, (2, 3, 5)), truncation=1)
    assert tower.root_witness(0, 1)[1] == 3
    assert Tower(schedule_example_a(2, (2, 3, 5)), check=False).transition_exponent(0, 2) == 75


def test_basis_independence(tower23):
    assert tower23.basis_independence_check(1)
    assert not tower23.basis_independence_check(1, [0, 6])
    assert tower23.basis_independence_check(1, [tower23.t(0), 1, 2])


def test_regularity_branches(tower23):
    assert regularity_spot_check(tower23.t(0), 20).branch == "direct"
    check = regularity_spot_check(1 + tower23.t(1), 20)
    assert check and check.branch == "constant term removed"
    assert regularity_spot_check(tower23.const(1, tower23.field.gen()), 20).branch == "element of h"


def test_invalid_schedule_rejected():
    bad = schedule_example_a(2, (2, 3)).with_overrides(l=(2, 4))
    with pytest.raises(TowerError):
        Tower(bad)
    with pytest.raises(TowerError):
        Tower(schedule_example_a(2, (2, 3)), truncation=3)


def test_path_independence_three_levels():
    tower = Tower(unit_twist_schedule(2, (1, 2, 6)))
    rng = random.Random(9)
    for _ in range(10):
        x = tower.random(0, rng)
        assert x.promote(1).promote(2).value == x.promote(2).value


@given(st.integers(0, 2 ** 32), st.sampled_from([(2, (2, 3)), (3, (3, 2))]))
def test_transition_is_ring_homomorphism(seed, sched):
    tower = Tower(schedule_example_a(*sched))
    rng = random.Random(seed)
    x, y = tower.random(0, rng), tower.random(0, rng)
    assert (x * y).promote(1) == x.promote(1) * y.promote(1)
    assert (x - y).promote(1) == x.promote(1) - y.promote(1)
    z = tower.random(1, rng)
    assert (x + z) - z == x
