import random

import pytest

from sgm_topo.abelian import FinAbGroup
from sgm_topo.zlinalg import (
    IntMatrix,
    cokernel,
    column_hermite,
    det,
    hermite_normal_form,
    hstack,
    image_rank,
    kernel_basis,
    kernel_rank,
    lattice_contains,
    smith_normal_form,
)

from oracles import laplace_det, minor_gcd_diagonal


def random_matrix(rng, max_dim=5, lo=-9, hi=9):
    rows = rng.randint(0, max_dim)
    cols = rng.randint(0, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols
    )


def random_unimodular(rng, n, steps=6):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        return IntMatrix.from_rows(m, n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        m[i] = [x + q * y for x, y in zip(m[i], m[j])]
    return IntMatrix.from_rows(m, n)


def check_snf_contract(a):
    res = smith_normal_form(a)
    assert res.U @ a @ res.V == res.S
    assert abs(laplace_det([list(r) for r in res.U.entries])) == 1
    assert abs(laplace_det([list(r) for r in res.V.entries])) == 1
    diag = res.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d != 0]
    assert list(diag[: len(nonzero)]) == nonzero  # trailing zeros come last
    assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
    for i in range(res.S.rows):
        for j in range(res.S.cols):
            if i != j:
                assert res.S.entries[i][j] == 0
    return res


class TestIntMatrix:
    def test_validation(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2, ((1, 2),))
        with pytest.raises(ValueError):
            IntMatrix(-1, 0, ())

    def test_empty_shapes(self):
        a = IntMatrix.zeros(0, 3)
        b = IntMatrix.zeros(3, 0)
        assert (b @ a).rows == 3 and (b @ a).cols == 3
        assert (a @ b).rows == 0 and (a @ b).cols == 0

    def test_mul_and_transpose(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b) == IntMatrix.from_rows([[2, 1], [4, 3]])
        assert a.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])


class TestSmith:
    def test_identity(self):
        a = IntMatrix.identity(3)
        assert smith_normal_form(a).S == a

    def test_known_2x2(self):
        # oracle: gcd of entries is 2; |det| = 8, so the diagonal is (2, 4)
        a = IntMatrix.from_rows([[2, 4], [6, 8]])
        assert minor_gcd_diagonal([[2, 4], [6, 8]]) == [2, 4]
        res = check_snf_contract(a)
        assert res.diagonal == (2, 4)

    def test_zero_matrix(self):
        a = IntMatrix.zeros(2, 3)
        res = check_snf_contract(a)
        assert res.S == a

    def test_empty_matrices(self):
        for shape in ((0, 0), (0, 4), (4, 0)):
            check_snf_contract(IntMatrix.zeros(*shape))

    def test_random_against_minor_gcd_oracle(self):
        rng = random.Random(23)
        for _ in range(150):
            a = random_matrix(rng)
            res = check_snf_contract(a)
            assert list(res.diagonal) == minor_gcd_diagonal(a.to_lists())

    def test_rank_agreement_with_hermite(self):
        rng = random.Random(29)
        for _ in range(100):
            a = random_matrix(rng)
            h, _ = hermite_normal_form(a)
            hermite_rank = sum(1 for row in h.entries if any(x != 0 for x in row))
            assert hermite_rank == image_rank(a)


class TestHermite:
    def test_column_gcd(self):
        a = IntMatrix.from_rows([[2], [4]])
        h, u = hermite_normal_form(a)
        assert h == IntMatrix.from_rows([[2], [0]])
        assert u @ a == h

    def test_identity(self):
        a = IntMatrix.identity(4)
        h, _ = hermite_normal_form(a)
        assert h == a

    def test_row_swap(self):
        a = IntMatrix.from_rows([[0, 1], [1, 0]])
        h, u = hermite_normal_form(a)
        assert h == IntMatrix.identity(2)
        assert abs(laplace_det(u.to_lists())) == 1

    def test_random_contract(self):
        rng = random.Random(31)
        for _ in range(150):
            a = random_matrix(rng)
            h, u = hermite_normal_form(a)
            assert u @ a == h
            assert abs(laplace_det(u.to_lists())) == 1
            # echelon shape with positive pivots, reduced entries above
            last_pivot = -1
            for row in h.entries:
                nz = [j for j, x in enumerate(row) if x != 0]
                if not nz:
                    continue
                pivot_col = nz[0]
                assert pivot_col > last_pivot
                last_pivot = pivot_col
                assert row[pivot_col] > 0
            for i, row in enumerate(h.entries):
                nz = [j for j, x in enumerate(row) if x != 0]
                if not nz:
                    continue
                p = row[nz[0]]
                for above in range(i):
                    assert 0 <= h.entries[above][nz[0]] < p


class TestCokernel:
    def test_examples(self):
        assert cokernel(IntMatrix.diagonal([2, 3])) == FinAbGroup(0, (6,))
        assert cokernel(IntMatrix.zeros(2, 0)) == FinAbGroup(2)
        assert cokernel(IntMatrix.from_rows([[1]])) == FinAbGroup()

    def test_unimodular_invariance(self):
        rng = random.Random(37)
        for _ in range(60):
            a = random_matrix(rng, max_dim=4)
            left = random_unimodular(rng, a.rows)
            right = random_unimodular(rng, a.cols)
            assert cokernel(left @ a @ right) == cokernel(a)


class TestRanks:
    def test_examples(self):
        eye = IntMatrix.identity(4)
        assert kernel_rank(eye) == 0 and image_rank(eye) == 4
        z = IntMatrix.zeros(2, 3)
        assert kernel_rank(z) == 3 and image_rank(z) == 0
        a = IntMatrix.from_rows([[2, 4], [6, 8]])
        assert kernel_rank(a) == 0 and image_rank(a) == 2

    def test_ranks_sum_to_cols(self):
        rng = random.Random(41)
        for _ in range(80):
            a = random_matrix(rng)
            assert kernel_rank(a) + image_rank(a) == a.cols


class TestKernelBasis:
    def test_columns_annihilated_and_saturated(self):
        rng = random.Random(43)
        for _ in range(80):
            a = random_matrix(rng)
            kb = kernel_basis(a)
            assert kb.cols == kernel_rank(a)
            assert (a @ kb).is_zero
            # a basis of the full kernel lattice spans a saturated sublattice
            assert cokernel(kb).invariant_factors == ()


class TestLattices:
    def test_containment(self):
        amb = IntMatrix.from_rows([[2, 0], [0, 2]])
        inside = IntMatrix.from_rows([[4], [2]])
        outside = IntMatrix.from_rows([[1], [0]])
        assert lattice_contains(amb, inside)
        assert not lattice_contains(amb, outside)

    def test_presentation_independence(self):
        # 2Z presented with one or with three generators
        a = IntMatrix.from_rows([[-2]])
        b = IntMatrix.from_rows([[-2, 2, 4]])
        assert column_hermite(a) == column_hermite(b)


class TestDet:
    def test_against_laplace(self):
        rng = random.Random(47)
        for _ in range(100):
            n = rng.randint(0, 5)
            a = IntMatrix.from_rows(
                [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)], n
            )
            assert det(a) == laplace_det(a.to_lists())

    def test_hstack_mismatch(self):
        with pytest.raises(ValueError):
            hstack(IntMatrix.zeros(2, 1), IntMatrix.zeros(3, 1))
