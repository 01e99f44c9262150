import numpy as np
from hypothesis import given, strategies as st

from skewtower.linalg import IncrementalBasis, nullspace, rank, solve, solve_left

rows = st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=1, max_size=5)


@given(rows)
def test_nullspace_vectors_are_killed(m):
    for v in nullspace(m, 4, 3):
        assert all(sum(a * b for a, b in zip(r, v)) % 3 == 0 for r in m)
    assert rank(m, 3) + len(nullspace(m, 4, 3)) == 4


@given(rows, st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_solve_reproduces_rhs(m, x):
    rhs = [sum(a * b for a, b in zip(r, x)) % 3 for r in m]
    sol, _ = solve(m, rhs, 3)
    assert sol is not None
    assert [sum(a * b for a, b in zip(r, sol)) % 3 for r in m] == rhs


def test_inconsistent_system_has_no_solution():
    assert solve([[1, 0], [1, 0]], [0, 1], 2)[0] is None


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=1, max_size=6))
def test_incremental_basis_tracks_combinations(vectors):
    basis = IncrementalBasis(5)
    inserted = []
    for v in vectors:
        residual, comb = basis.reduce(v)
        # v = residual + sum comb_i * inserted_i
        recon = np.array(residual)
        for i, c in comb.items():
            recon = (recon + c * np.array(inserted[i])) % 5
        assert list(recon % 5) == [x % 5 for x in v]
        if basis.add(v):
            inserted.append(v)
    assert len(inserted) == rank(vectors, 5)


def test_solve_left_over_field_elements():
    from skewtower.ffield import finite_field

    F = finite_field(2, 2)
    w = F.gen()
    x = solve_left([[w, F.one()], [F.zero(), w]], [F.one(), w])
    assert w * x[0] + x[1] == F.one() and w * x[1] == w
