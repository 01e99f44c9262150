import pytest
from hypothesis import given, strategies as st

from skewtower.artin import (
    AlgebraPresentation,
    PresentationError,
    brute_force_solutions,
    compile_sentence,
    f4_instance,
    finite_artin_check,
    stabilizer_openness_check,
)
from skewtower.ffield import finite_field
from skewtower.scheduler import schedule_example_a


def test_f4_compiled_system():
    system = compile_sentence(f4_instance())
    assert system.format() == {"commute": ["0", "0"], "root": ["y1^2 + y2^2 + y1 + 1", "y2^2 + y2"]}
    assert system.solutions() == {(0, 1), (1, 1)}
    assert brute_force_solutions(f4_instance()) == {(0, 1), (1, 1)}


def test_central_element_has_trivial_commutation_equations():
    a = AlgebraPresentation.matrix_algebra(2)
    inst = a.with_instance(a.unit, a.base_polynomial([0]))
    system = compile_sentence(inst)
    assert all(not eq for eq in system.commute_eqs)


def test_linear_zero_polynomial_forces_zero():
    a = AlgebraPresentation.from_field(3, 2)
    inst = a.with_instance((0, 1), a.base_polynomial([0]))
    assert compile_sentence(inst).solutions() == {(0, 0)}


def test_minimal_polynomial_root():
    a = AlgebraPresentation.from_field(2, 3)
    x = (0, 1, 1)
    inst = a.with_instance(x, a.base_polynomial(a.minimal_polynomial(x)))
    assert x in brute_force_solutions(inst)
    assert compile_sentence(inst).solutions() == brute_force_solutions(inst)


def test_noncommutative_instance():
    a = AlgebraPresentation.matrix_algebra(2)
    x = tuple(int(v) for v in a.elements()[6])
    inst = a.with_instance(x, a.base_polynomial([1, 1]))
    assert compile_sentence(inst).solutions() == brute_force_solutions(inst)


def test_perturbed_structure_constants_rejected():
    a = AlgebraPresentation.matrix_algebra(2)
    lam = a.lam.copy()
    lam[1, 1, 0] = (lam[1, 1, 0] + 1) % 2
    with pytest.raises(PresentationError):
        AlgebraPresentation(2, lam)


def test_finite_artin_examples():
    r = finite_artin_check(2, finite_field(2, 4))
    assert r and r.details["group_order"] == 2 and r.details["fixed_dimension"] == 2
    r = finite_artin_check(0, finite_field(2, 4))
    assert r and r.details["group_order"] == 1
    r = finite_artin_check(1, finite_field(2, 6))
    assert [(e["subgroup_order"], e["fixed_dimension"]) for e in r.details["lattice"]] == [
        (1, 6), (2, 3), (3, 2), (6, 1)
    ]


def test_stabilizer_openness():
    s = schedule_example_a(2, (2, 3))
    F = finite_field(2, 6)
    r = stabilizer_openness_check(F.subfield_generator(2), s)
    assert r and r.details["level"] == 0 and r.details["modulus"] == 2
    assert stabilizer_openness_check(F.one(), s).details["level"] == "-inf"
    assert stabilizer_openness_check(F.primitive_element(), s).details["level"] == 1


@given(st.integers(1, 9), st.integers(0, 8))
def test_degree_equals_group_order(n, e):
    assert finite_artin_check(e, finite_field(2, n))
