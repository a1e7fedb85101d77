import random
from itertools import product

import pytest

from woundlab.field_core import GF
from woundlab.field_core.gf import FieldCeilingError
from woundlab.field_core.linalg import nullspace, rank
from woundlab.field_core.tower import Embedding
from woundlab.hassewitt import (
    BinaryForm, DegreeMismatch, SemilinearMatrix, build_matrix, cohomology_report, fixed_point_basis,
    fixed_points, iterate_oracle, random_matrix, stable_rank, stable_rank_certified, truncated_image,
)

from oracles import expand_oracle, iterate_rank

F3 = GF(3)
FERMAT = BinaryForm.from_terms(F3, 12, {2: 1, 10: 1})
K3 = BinaryForm.from_terms(F3, 12, {2: 1, 5: 1, 8: 1, 10: 1})


def lifted(A, FQ):
    E = Embedding.find(A.field, FQ)
    return SemilinearMatrix.from_rows(FQ, [[E(x) for x in r] for r in A.entries], A.twist)


def random_form(F, p, n, m, k, rng, density=0.4):
    N = k * p**n * (p**m - 1)
    return BinaryForm.from_terms(F, N, {i: rng.randrange(1, F.q) for i in range(N + 1) if rng.random() < density})


class TestBuildMatrix:
    def test_fermat_entries(self):
        A = build_matrix(3, 1, 1, 2, FERMAT)
        ones = {(r + 1, c + 1) for r, row in enumerate(A.entries) for c, x in enumerate(row) if x}
        assert A.d == 5
        assert ones == {(1, 1), (4, 2), (2, 4), (5, 5)}
        assert all(x in (0, 1) for row in A.entries for x in row)

    def test_k1_example(self):
        a = BinaryForm.from_terms(F3, 6, {2: 1})
        assert build_matrix(3, 1, 1, 1, a).rows() == [[1, 0], [0, 0]]

    def test_zero_form(self):
        A = build_matrix(3, 1, 1, 2, BinaryForm.zero(F3, 12))
        assert all(not x for row in A.entries for x in row)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            build_matrix(3, 1, 1, 2, BinaryForm.zero(F3, 10))

    def test_columns_match_expansion_exhaustive(self):
        rng = random.Random(1)
        cases = [(3, 1, 1, 2, FERMAT), (3, 1, 1, 2, K3)]
        for p, n, m, k, F in [(3, 1, 1, 1, F3), (3, 1, 1, 3, GF(3, 2)), (2, 1, 1, 3, GF(2, 2)),
                              (2, 2, 1, 2, GF(2)), (2, 1, 2, 2, GF(2)), (5, 1, 1, 1, GF(5))]:
            for _ in range(3):
                cases.append((p, n, m, k, random_form(F, p, n, m, k, rng)))
        for p, n, m, k, a in cases:
            A = build_matrix(p, n, m, k, a)
            oracle = expand_oracle(p, n, m, k, a)
            for i in range(1, A.d + 1):
                col = {j: A.entries[j - 1][i - 1] for j in range(1, A.d + 1) if A.entries[j - 1][i - 1]}
                assert col == oracle[i - 1]
                assert truncated_image(p, n, m, k, a, i) == oracle[i - 1]


class TestStableRank:
    def test_identity_and_jordan(self):
        I3 = SemilinearMatrix.from_rows(F3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1)
        assert stable_rank(I3) == iterate_oracle(I3) == 3
        J = SemilinearMatrix.from_rows(F3, [[0, 1], [0, 0]], 1)
        assert stable_rank(J) == iterate_oracle(J) == 0

    def test_fermat_and_second_k3(self):
        for a in (FERMAT, K3):
            A = build_matrix(3, 1, 1, 2, a)
            assert stable_rank(A) == iterate_oracle(A) == 4
            assert stable_rank_certified(A) == (4, True)

    def test_twist_over_f9(self):
        F9 = GF(3, 2)
        w = F9.from_digits([0, 1])
        rows = [[0, 1], [w, 0]]
        for tw in (1, 2):
            A = SemilinearMatrix.from_rows(F9, rows, tw)
            assert stable_rank(A) == iterate_oracle(A) == 2

    def test_oracle_on_random_matrices(self):
        rng = random.Random(2)
        fields = [(GF(3), 1), (GF(3, 2), 1), (GF(3, 2), 2), (GF(2, 2), 1)]
        for i in range(200):
            F, tw = fields[i % len(fields)]
            A = random_matrix(F, rng.randint(1, 8), tw, rng, density=rng.choice([0.2, 0.4, 0.7]))
            r, stable = stable_rank_certified(A)
            assert stable
            assert r == iterate_oracle(A) == iterate_rank(F, A.rows(), tw)

    def test_decomposition(self):
        rng = random.Random(3)
        for i in range(40):
            F = (GF(3), GF(3, 2), GF(2, 2))[i % 3]
            A = random_matrix(F, rng.randint(2, 6), 1, rng, density=0.3)
            d = A.d
            Pd = A.product(d)
            # image of phi^d is the column span of Pi_d
            W = [list(c) for c in zip(*Pd)]
            Wb = []
            for w in W:
                if rank(F, Wb + [w]) > len(Wb):
                    Wb.append(w)
            if Wb:
                images = [A.apply(w) for w in Wb]
                assert rank(F, images) == len(Wb)                  # bijective on V_ss
                assert rank(F, Wb + images) == len(Wb)             # and stable
            # phi^d kills x exactly when x^(q^d) lies in ker Pi_d
            inv = (-d * A.twist) % F.e
            for v in nullspace(F, Pd, d):
                x = [F.frob(c, inv) for c in v]
                for _ in range(d):
                    x = A.apply(x)
                assert not any(x)


class TestFixedPoints:
    def test_brute_force_count(self):
        rng = random.Random(4)
        checked = 0
        for _ in range(30):
            A = random_matrix(F3, rng.randint(1, 3), 1, rng, density=0.5)
            for e in (1, 2):
                FQ, basis = fixed_points(A, e)
                M = lifted(A, FQ)
                count = sum(1 for x in product(range(FQ.q), repeat=A.d) if M.apply(list(x)) == list(x))
                assert count == 3 ** len(basis)
                checked += 1
            r = stable_rank(A)
            assert len(fixed_points(A, 1)[1]) <= r
        assert checked == 60

    def test_count_reaches_p_to_mr(self):
        rng = random.Random(5)
        for _ in range(20):
            A = random_matrix(F3, rng.randint(1, 4), 1, rng, density=0.5)
            try:
                FQ, basis = fixed_point_basis(A)
            except FieldCeilingError:
                continue
            assert len(basis) == stable_rank(A)
            M = lifted(A, FQ)
            assert all(M.apply(v) == v for v in basis)
            assert len(fixed_points(A, FQ.e)[1]) == A.twist * len(basis)

    def test_fermat_kernel(self):
        rep = cohomology_report(3, 1, 1, 2, FERMAT, kernel=True)
        assert len(rep.kernel_basis) == 4
        FQ = rep.kernel_field
        M = lifted(build_matrix(3, 1, 1, 2, FERMAT), FQ)
        assert all(M.apply(v) == v for v in rep.kernel_basis)
        assert rank(FQ, rep.kernel_basis) == 4


class TestReport:
    def test_fermat(self):
        rep = cohomology_report(3, 1, 1, 2, FERMAT)
        assert (rep.d, rep.r, rep.h2, rep.h1L_dim) == (5, 4, 0, 1)
        assert rep.h1G == {"torsion": 3, "rank": 4}
        assert rep.h1G_str() == "(Z/3Z)^4"
        assert not rep.experimental and rep.certified

    def test_second_k3(self):
        assert cohomology_report(3, 1, 1, 2, K3).r == 4

    def test_zero(self):
        rep = cohomology_report(3, 1, 1, 2, BinaryForm.zero(F3, 12))
        assert rep.r == 0 and rep.h1G_str() == "0"

    def test_experimental_flag(self):
        a = BinaryForm.from_terms(GF(2), 4, {1: 1, 3: 1})
        assert cohomology_report(2, 1, 1, 2, a).experimental
