"""Linear-algebra kernel: canonical solves, kernels, complements, quotients."""

from fractions import Fraction

import pytest

from superext.gvs import (
    GradedLinearMap,
    SuperVectorSpace,
    complement_basis,
    identity,
    kernel_basis,
    mat,
    mat_vec,
    quotient_space,
    rank,
    rref,
    solve_linear,
    unit_vec,
    zeros,
)

F = Fraction


def test_solve_identity():
    assert solve_linear(identity(2), (1, F(1, 2))) == (1, F(1, 2))


def test_solve_zero():
    assert solve_linear(zeros(2, 2), (0, 0)) == (0, 0)


def test_solve_canonical_particular():
    # rank-1 system: canonical solution has the free coordinate zero
    A = mat([[1, 2], [2, 4]])
    sol = solve_linear(A, (1, 2))
    assert sol == (1, 0)
    assert mat_vec(A, sol) == (1, 2)


def test_solve_inconsistent():
    assert solve_linear(mat([[1, 2], [2, 4]]), (1, 3)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear(mat([[1, 2]]), (1, 2))


def test_kernel_identity_empty():
    assert kernel_basis(identity(3)) == []


def test_kernel_zero_full():
    assert kernel_basis(zeros(3, 3)) == [unit_vec(3, i) for i in range(3)]


def test_kernel_rank_one():
    ker = kernel_basis(mat([[1, 2], [2, 4]]))
    assert ker == [(-2, 1)]
    assert mat_vec(mat([[1, 2], [2, 4]]), ker[0]) == (0, 0)


def test_kernel_empty_matrix_needs_ncols():
    assert kernel_basis((), ncols=2) == [unit_vec(2, 0), unit_vec(2, 1)]


def test_rank_nullity(rng):
    for _ in range(30):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        A = mat([[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)])
        ker = kernel_basis(A)
        for v in ker:
            assert mat_vec(A, v) == tuple(F(0) for _ in range(nrows))
        # independent rank: count nonzero rows after elimination
        assert len(ker) + len(rref(A)[0]) == ncols


def test_solutions_are_exact(rng):
    for _ in range(30):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        A = mat([[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)])
        x = tuple(F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(ncols))
        rhs = mat_vec(A, x)
        sol = solve_linear(A, rhs)
        assert sol is not None
        assert mat_vec(A, sol) == rhs


def test_complement_empty_subspace():
    assert complement_basis([], 2) == [unit_vec(2, 0), unit_vec(2, 1)]


def test_complement_of_e1():
    assert complement_basis([unit_vec(2, 0)], 2) == [unit_vec(2, 1)]


def test_complement_pivot_rule():
    # pivot of (1,1,0) is column 0, so the complement is {e2, e3}
    assert complement_basis([(1, 1, 0)], 3) == [unit_vec(3, 1), unit_vec(3, 2)]


def test_complement_rejects_dependent():
    with pytest.raises(ValueError):
        complement_basis([(1, 2), (2, 4)], 2)


def test_quotient_by_nothing():
    amb = SuperVectorSpace(("a", "b"), (0, 1))
    q, proj = quotient_space(amb, [])
    assert q == amb
    assert proj.matrix == identity(2)


def test_quotient_by_everything():
    amb = SuperVectorSpace(("a", "b"), (0, 1))
    q, proj = quotient_space(amb, [unit_vec(2, 0), unit_vec(2, 1)])
    assert q.dim == 0


def test_quotient_parities():
    amb = SuperVectorSpace(("a", "b", "c"), (0, 0, 1))
    q, proj = quotient_space(amb, [unit_vec(3, 0)])
    assert (q.dim_even, q.dim_odd) == (1, 1)
    assert proj.degree == 0


def test_quotient_rejects_mixed_parity_vector():
    amb = SuperVectorSpace(("a", "b"), (0, 1))
    with pytest.raises(ValueError):
        quotient_space(amb, [(1, 1)])


def test_projection_retracts_complement(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        amb = SuperVectorSpace(tuple(f"x{i}" for i in range(n)),
                               tuple(rng.randint(0, 1) for _ in range(n)))
        k = rng.randint(0, n)
        sub = []
        for _ in range(k):
            p = rng.randint(0, 1)
            v = tuple(F(rng.randint(-2, 2)) if amb.parities[i] == p else F(0)
                      for i in range(n))
            sub.append(v)
        sub = [v for v in sub if any(c != 0 for c in v)]
        if rank(sub) != len(sub):
            continue
        q, proj = quotient_space(amb, sub)
        # projection of each quotient representative is the matching unit vector
        reps = complement_basis(sub, n) if sub else [unit_vec(n, i) for i in range(n)]
        for idx, r in enumerate(reps):
            assert proj.apply(r) == unit_vec(q.dim, idx)
        for v in sub:
            assert all(c == 0 for c in proj.apply(v))


def test_homogeneity_enforced():
    dom = SuperVectorSpace(("x",), (0,))
    cod = SuperVectorSpace(("y",), (1,))
    with pytest.raises(ValueError):
        GradedLinearMap(dom, cod, 0, mat([[1]]))
    GradedLinearMap(dom, cod, 1, mat([[1]]))  # degree 1 is fine


def test_determinism_bit_for_bit():
    A = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    runs = {(*solve_linear(mat(A), (1, 2, 3)),) for _ in range(5)}
    assert len(runs) == 1
    kers = {tuple(map(tuple, kernel_basis(mat([[1, 2, 3]])))) for _ in range(5)}
    assert len(kers) == 1
