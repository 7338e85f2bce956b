import random
from fractions import Fraction

import pytest

from sl2cox.exactmath import (
    EmptySolutionSet,
    FinAbGroup,
    GaussianRational,
    IntMatrix,
    cokernel,
    gauss,
    gcd_of_minors,
    smith_normal_form,
    solve_integer,
    solve_nonneg,
)


def snf_oracle_factors(M: IntMatrix):
    """Independent invariant-factor oracle: d_k = gcd(k-minors)/gcd((k-1)-minors)."""
    out = []
    prev = 1
    for k in range(1, min(M.rows, M.cols) + 1):
        g = gcd_of_minors(M, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def brute_force_nonneg(A: IntMatrix, b, bound, moduli=None):
    from itertools import product

    mods = list(moduli) if moduli else [0] * A.rows
    sols = []
    for x in product(range(bound + 1), repeat=A.cols):
        vals = A.mulvec(list(x))
        if all((v - t) % m == 0 if m else v == t for v, t, m in zip(vals, b, mods)):
            sols.append(tuple(x))
    return sols


# the 4x8 presentation matrix of the four-point example
P4x8 = IntMatrix([
    [-1, -2, 1, 3, 0, 0, 0, 0],
    [-1, -2, 0, 0, 1, 1, 0, 0],
    [-1, -2, 0, 0, 0, 0, 1, 5],
    [1, -1, 0, -5, 0, -1, 0, -4],
])

# the 3x4 affine matrix for (n, h, l) = (3, 1, -1), u = 1
P3x4 = IntMatrix([
    [-1, 3, 1, 0],
    [-1, 0, 0, 3],
    [1, -1, -1, -1],
])


class TestSmithNormalForm:
    def test_identity(self):
        s = smith_normal_form(IntMatrix.identity(2))
        assert s.invariant_factors == (1, 1)
        assert s.D == IntMatrix.identity(2)

    def test_example_4x8(self):
        s = smith_normal_form(P4x8)
        assert (s.U * P4x8 * s.V) == s.D
        assert s.invariant_factors == (1, 1, 1, 1)
        assert s.invariant_factors == snf_oracle_factors(P4x8)

    def test_example_affine(self):
        s = smith_normal_form(P3x4)
        assert s.invariant_factors == snf_oracle_factors(P3x4)
        grp, _ = cokernel(P3x4)
        # cokernel Z x Z/1 = Z, consistent with d = gcd(3, 1) = 1
        assert grp == FinAbGroup(1)

    def test_empty_and_zero(self):
        s = smith_normal_form(IntMatrix([], cols=3))
        assert s.invariant_factors == ()
        s = smith_normal_form(IntMatrix.zero(2, 2))
        assert s.invariant_factors == ()

    def test_random_properties(self):
        rng = random.Random(1729)
        for _ in range(200):
            rows = rng.randint(1, 8)
            cols = rng.randint(1, 8)
            M = IntMatrix([[rng.randint(-20, 20) for _ in range(cols)]
                           for _ in range(rows)])
            s = smith_normal_form(M)
            assert (s.U * M * s.V) == s.D
            assert abs(s.U.det()) == 1
            assert abs(s.V.det()) == 1
            for a, b in zip(s.invariant_factors, s.invariant_factors[1:]):
                assert b % a == 0
            for i in range(s.D.rows):
                for j in range(s.D.cols):
                    if i != j:
                        assert s.D.data[i][j] == 0

    def test_minor_oracle_agreement(self):
        rng = random.Random(31337)
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            M = IntMatrix([[rng.randint(-20, 20) for _ in range(cols)]
                           for _ in range(rows)])
            assert smith_normal_form(M).invariant_factors == snf_oracle_factors(M)


class TestCokernel:
    def test_zero_matrix(self):
        grp, proj = cokernel(IntMatrix([[0, 0, 0]], cols=3))
        assert grp == FinAbGroup(3)
        # projection must be unimodular on Z^3
        assert abs(proj.det()) == 1

    def test_single_relation(self):
        grp, proj = cokernel(IntMatrix([[2]], cols=1))
        assert grp == FinAbGroup(0, (2,))

    def test_row_operations_invariance(self):
        rng = random.Random(207)
        for _ in range(40):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            data = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
            M = IntMatrix(data)
            g1, _ = cokernel(M)
            # permute rows, negate one, add one row to another
            perm = data[:]
            rng.shuffle(perm)
            perm = [row[:] for row in perm]
            perm[0] = [-x for x in perm[0]]
            if rows > 1:
                perm[1] = [a + b for a, b in zip(perm[1], perm[0])]
            g2, _ = cokernel(IntMatrix(perm))
            assert g1 == g2

    def test_images_kill_relations(self):
        grp, proj = cokernel(P4x8)
        n = grp.free_rank + len(grp.torsion)
        for row in P4x8.data:
            img = [0] * n
            for j, c in enumerate(row):
                col = [proj.data[i][j] for i in range(n)]
                img = [a + c * x for a, x in zip(img, col)]
            assert grp.reduce(img) == tuple([0] * n)


class TestSolveNonneg:
    def test_zero_rhs_contains_origin(self):
        A = IntMatrix([[1, 2], [3, 4]])
        sols = solve_nonneg(A, [0, 0], 5)
        assert (0, 0) in sols

    def test_unique_solution(self):
        A = IntMatrix([[1, 0], [0, 1]])
        assert solve_nonneg(A, [3, 4], 10) == [(3, 4)]

    def test_empty_raises(self):
        A = IntMatrix([[2]])
        with pytest.raises(EmptySolutionSet):
            solve_nonneg(A, [3], 10)

    def test_brute_force_agreement(self):
        rng = random.Random(99)
        for _ in range(50):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            A = IntMatrix([[rng.randint(-4, 4) for _ in range(cols)]
                           for _ in range(rows)])
            mods = [rng.choice([0, 0, 2, 3]) for _ in range(rows)]
            x0 = [rng.randint(0, 6) for _ in range(cols)]
            b = A.mulvec(x0)
            try:
                got = solve_nonneg(A, b, 12, mods)
            except EmptySolutionSet:
                got = []
            assert got == brute_force_nonneg(A, b, 12, mods)

    def test_lexicographic_order(self):
        A = IntMatrix([[1, 1]])
        sols = solve_nonneg(A, [3], 3)
        assert sols == sorted(sols)
        assert sols == [(0, 3), (1, 2), (2, 1), (3, 0)]


class TestSolveInteger:
    def test_roundtrip(self):
        rng = random.Random(5)
        for _ in range(60):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            A = IntMatrix([[rng.randint(-6, 6) for _ in range(cols)]
                           for _ in range(rows)])
            x0 = [rng.randint(-5, 5) for _ in range(cols)]
            mods = [rng.choice([0, 0, 4]) for _ in range(rows)]
            b = A.mulvec(x0)
            got = solve_integer(A, b, mods)
            assert got is not None
            vals = A.mulvec(list(got))
            assert all((v - t) % m == 0 if m else v == t
                       for v, t, m in zip(vals, b, mods))

    def test_no_solution(self):
        assert solve_integer(IntMatrix([[2]]), [3]) is None


class TestGaussianRational:
    def test_field_ops(self):
        i = GaussianRational(Fraction(0), Fraction(1))
        assert i * i == gauss(-1)
        z = gauss("3/2") + i
        assert z * z.inverse() == gauss(1)
        assert (z - z) == gauss(0)
        assert str(gauss({"re": "1", "im": "-2"})) == "1-2i"

    def test_ipow(self):
        from sl2cox.exactmath import gauss_ipow

        assert gauss_ipow(0) == gauss(1)
        assert gauss_ipow(2) == gauss(-1)
        assert gauss_ipow(-1) == gauss_ipow(3)
