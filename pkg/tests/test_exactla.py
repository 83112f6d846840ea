import random

import pytest

from figmod.exactla import (QQ, FieldSpec, FieldError, Matrix, EchelonBasis,
                            rref, rank, kernel, image, solve, inverse,
                            sum_subspaces, intersect_subspaces, preimage,
                            quotient_map, in_subspace, invariant_span,
                            hnf, lattice_rank, lattice_equal, lattice_contains)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def rand_matrix(field, m, n, rng):
    return Matrix(field, [[field.of(rng.randrange(-4, 5)) for _ in range(n)]
                          for _ in range(m)], (m, n))


def test_field_coercion():
    assert QQ.of("3/4") * 4 == 3
    assert F5.of("1/2") == 3
    assert F3.of(-1) == 2
    with pytest.raises(FieldError):
        F2.of("1/2")
    with pytest.raises(FieldError):
        FieldSpec(6)


@pytest.mark.parametrize("field", [QQ, F2, F3, F5])
def test_rref_properties(field):
    rng = random.Random(hash(field.p) & 0xffff)
    for trial in range(30):
        m, n = rng.randrange(1, 7), rng.randrange(1, 7)
        A = rand_matrix(field, m, n, rng)
        R, piv = rref(A)
        assert len(piv) == rank(A)
        # pivot columns carry the identity pattern
        for r, c in enumerate(piv):
            col = [R.rows[i][c] for i in range(R.m)]
            assert col[r] == field.one()
            assert all(col[i] == 0 for i in range(R.m) if i != r)
        # row space is preserved: every row of R solves against A's rows
        assert rank(A) == rank(R)


@pytest.mark.parametrize("field", [QQ, F2, F3])
def test_kernel_and_image(field):
    rng = random.Random(11)
    for trial in range(30):
        m, n = rng.randrange(1, 6), rng.randrange(1, 6)
        A = rand_matrix(field, m, n, rng)
        K = kernel(A)
        assert (A @ K).is_zero()
        assert K.n + rank(A) == n
        B = image(A)
        assert rank(B) == B.n == rank(A)


def test_rank_against_exhaustive_span_over_f2():
    # oracle: the rank of an F_2 matrix is log2 of the size of its row span
    rng = random.Random(3)
    for trial in range(20):
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        A = rand_matrix(F2, m, n, rng)
        span = {tuple([0] * n)}
        for row in A.rows:
            for v in list(span):
                span.add(tuple((a + b) % 2 for a, b in zip(v, row)))
        assert 2 ** rank(A) == len(span)


@pytest.mark.parametrize("field", [QQ, F3])
def test_solve_and_inverse(field):
    rng = random.Random(5)
    for trial in range(20):
        n = rng.randrange(1, 5)
        A = rand_matrix(field, n + 1, n, rng)
        X = rand_matrix(field, n, 2, rng)
        B = A @ X
        Y = solve(A, B)
        assert Y is not None and A @ Y == B
        M = rand_matrix(field, n, n, rng)
        if rank(M) == n:
            Minv = inverse(M)
            assert M @ Minv == Matrix.identity(field, n)
        else:
            with pytest.raises(ValueError):
                inverse(M)


@pytest.mark.parametrize("field", [QQ, F2, F5])
def test_subspace_operations(field):
    rng = random.Random(13)
    for trial in range(20):
        dim = rng.randrange(1, 6)
        U = image(rand_matrix(field, dim, rng.randrange(1, 4), rng))
        W = image(rand_matrix(field, dim, rng.randrange(1, 4), rng))
        S = sum_subspaces(dim, field, [U, W])
        I = intersect_subspaces(U, W)
        assert S.n == U.n + W.n - I.n
        for v in I.cols():
            assert in_subspace(U, v) and in_subspace(W, v)
        Q, sec = quotient_map(field, dim, U)
        assert Q.m == dim - U.n
        assert (Q @ U).is_zero()
        assert Q @ sec == Matrix.identity(field, Q.m)


def test_preimage():
    A = Matrix(QQ, [[QQ.of(1), QQ.of(0)], [QQ.of(0), QQ.of(0)]], (2, 2))
    U = Matrix(QQ, [[QQ.of(1)], [QQ.of(0)]], (2, 1))
    P = preimage(A, U)
    assert P.n == 2  # e1 maps into U, e2 maps to zero


@pytest.mark.parametrize("field", [F2, F3, F5])
def test_echelon_basis_matches_rref(field):
    # the incremental echelon structure and plain rref must agree on span
    rng = random.Random(field.p)
    for trial in range(30):
        dim = rng.randrange(1, 8)
        A = rand_matrix(field, dim, rng.randrange(1, 8), rng)
        ech = EchelonBasis(field, dim)
        for v in A.cols():
            ech.insert(v)
        assert ech.rank == rank(A)
        B = ech.basis_matrix()
        for v in A.cols():
            assert in_subspace(B, v)
        # block insertion gives the same basis
        ech2 = EchelonBasis(field, dim)
        ech2.insert_block(A)
        assert ech2.basis_matrix() == B


def test_echelon_basis_reduce_and_contains():
    ech = EchelonBasis(F3, 3)
    ech.insert([1, 2, 0])
    ech.insert([0, 1, 1])
    assert ech.contains([1, 0, 1])  # (1,2,0) + (0,1,1) twice mod 3
    assert not ech.contains([0, 0, 1])
    clone = ech.clone()
    clone.insert([0, 0, 1])
    assert clone.rank == 3 and ech.rank == 2


def test_invariant_span_stability():
    swap = Matrix(QQ, [[QQ.of(0), QQ.of(1)], [QQ.of(1), QQ.of(0)]], (2, 2))
    W = invariant_span(QQ, 2, [swap], [[QQ.of(1), QQ.of(0)]])
    assert W.n == 2
    sym = invariant_span(QQ, 2, [swap], [[QQ.of(1), QQ.of(1)]])
    assert sym.n == 1
    assert invariant_span(QQ, 2, [swap], [[QQ.of(1), QQ.of(0)]], cap=1) is None


def test_hnf_membership():
    rows = [[2, 0], [0, 3]]
    form = hnf(rows)
    assert lattice_rank(rows) == 2
    assert lattice_contains(form, [4, 3])
    assert not lattice_contains(form, [1, 0])
    assert lattice_equal([[2, 0], [0, 3]], [[2, 3], [0, 3], [2, 0]])


def test_determinism():
    rng = random.Random(99)
    A = rand_matrix(QQ, 5, 5, rng)
    assert rref(A) == rref(A)
    assert hnf([[3, 1, 4], [1, 5, 9], [2, 6, 5]]) == \
        hnf([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
