from fractions import Fraction

import pytest

from sl2cox import classgroup as cg
from sl2cox.embedding import EmbeddingData, GStableDivisorSpec, affine_embedding
from sl2cox.exactmath import EmptySolutionSet, FinAbGroup, IntMatrix
from sl2cox.groups import ICOSA, OCTA, TETRA, cyclic, dihedral
from sl2cox.hyperspace import Section, X0, XE, XF, XINF, XV, point

from test_embedding import mu3_example, trivial_four_points

PRINTED_P = [
    [-1, -2, 1, 3, 0, 0, 0, 0],
    [-1, -2, 0, 0, 1, 1, 0, 0],
    [-1, -2, 0, 0, 0, 0, 1, 5],
    [1, -1, 0, -5, 0, -1, 0, -4],
]


class TestPresentationMatrix:
    def test_trivial_example_entry_for_entry(self):
        gens, P = cg.presentation_matrix(trivial_four_points())
        assert [g.label for g in gens] == [
            "E[x1]", "X[x1,0]", "E[x2]", "X[x2,0]",
            "E[x3]", "X[x3,0]", "E[x4]", "X[x4,0]"]
        assert P.data == PRINTED_P

    def test_affine_matrix(self):
        E = affine_embedding(3, 1, -1)
        gens, P = cg.presentation_matrix(E)
        assert [g.label for g in gens] == ["Dxd", "E[x0]", "X[x0,0]", "E[xinf]"]
        assert P.data == [[-1, 3, 1, 0], [-1, 0, 0, 3], [1, -1, -1, -1]]

    def test_affine_matrix_even(self):
        # n = 4: nbar = 2, u = 2, l = -3/2; the l-row is cleared by u
        E = affine_embedding(4, 1, Fraction(-3, 2))
        gens, P = cg.presentation_matrix(E)
        assert P.data == [[-1, 2, 1, 0], [-1, 0, 0, 2], [2, -1, -3, -1]]

    def test_single_point_no_divisors(self):
        # X = G/mu_n with no boundary: Cl = Z/n
        for n in (1, 2, 3, 5, 6):
            E = EmbeddingData(cyclic(n))
            R = cg.class_group(E)
            expected = FinAbGroup(0, (n,)) if n > 1 else FinAbGroup(0)
            assert R.group == expected, n


class TestClassGroup:
    def test_trivial_example_group_and_identities(self):
        R = cg.class_group(trivial_four_points())
        assert R.group == FinAbGroup(4)
        basis = ["X[x1,0]", "X[x2,0]", "X[x3,0]", "X[x4,0]"]
        expected = {
            "E[x1]": (1, 5, 1, 4),
            "E[x2]": (3, 2, 1, 4),
            "E[x3]": (3, 5, 0, 4),
            "E[x4]": (3, 5, 1, -1),
        }
        for lbl, coeffs in expected.items():
            assert cg.express_in_basis(R, {lbl: 1}, basis) == coeffs

    def test_mu3_free_rank_3(self):
        R = cg.class_group(mu3_example())
        assert R.group == FinAbGroup(3)

    def test_affine_d_formula(self):
        from math import gcd

        for n in range(1, 13):
            nb = n if n % 2 else n // 2
            u = 1 if n % 2 else 2
            for h in range(1, 11):
                lo = -Fraction(h, 2) - Fraction(h, 2 * nb)
                hi = -Fraction(h, 2)
                l = hi
                while l > lo:
                    if (u * l).denominator == 1:
                        E = affine_embedding(n, h, l)
                        if not E.validate():
                            R = cg.class_group(E)
                            if n % 2 or (h + 2 * l) % 2 == 0:
                                d = gcd(n, h)
                            else:
                                d = gcd(nb + h, nb - h)
                            tor = (d,) if d > 1 else ()
                            assert R.group == FinAbGroup(1, tor), (n, h, l)
                    l -= Fraction(1, u)

    def test_images_satisfy_presentation_rows(self):
        for E in (trivial_four_points(), mu3_example(), affine_embedding(4, 6, Fraction(-7, 2))):
            R = cg.class_group(E)
            n = R.group.free_rank + len(R.group.torsion)
            labels = [g.label for g in R.generators]
            for row in R.presentation.data:
                combo = {lbl: c for lbl, c in zip(labels, row)}
                assert R.image_of(combo) == tuple([0] * n)

    def test_invariant_under_extra_point_permutation(self):
        E1 = mu3_example()
        x1 = point(2, 3)
        x2 = point(1, 1)
        Ea = EmbeddingData(cyclic(3), (x1, x2), (
            GStableDivisorSpec(X0, 1, -1), GStableDivisorSpec(XINF, 1, -1),
            GStableDivisorSpec(x1, 1, -1), GStableDivisorSpec(x2, 2, -1)))
        Eb = EmbeddingData(cyclic(3), (x2, x1), (
            GStableDivisorSpec(X0, 1, -1), GStableDivisorSpec(XINF, 1, -1),
            GStableDivisorSpec(x1, 1, -1), GStableDivisorSpec(x2, 2, -1)))
        assert cg.class_group(Ea).group == cg.class_group(Eb).group

    def test_torsion_free_for_trivial_and_icosahedral(self):
        cases = [
            EmbeddingData(cyclic(1), (point(1, 1),),
                          (GStableDivisorSpec(point(1, 1), 3, -2),)),
            EmbeddingData(ICOSA, (), (GStableDivisorSpec(XV, 1, -2),)),
            EmbeddingData(ICOSA, (point(1, 2),), (
                GStableDivisorSpec(XV, 1, -2), GStableDivisorSpec(point(1, 2), 2, -3))),
        ]
        for E in cases:
            assert not E.validate()
            assert cg.class_group(E).group.is_torsion_free


class TestExpress:
    def test_affine_exponent(self):
        for (n, h, l) in [(5, 7, -4), (3, 2, Fraction(-3, 2)) if False else (5, 7, -4),
                          (7, 9, -5)]:
            E = affine_embedding(n, h, l)
            if E.validate():
                continue
            R = cg.class_group(E)
            labels, sols = cg.express_in_invariant_divisors(
                R, {"E[x0]": 1, "E[xinf]": 1})
            assert labels == ["X[x0,0]"]
            assert sols == [(-(h + 2 * l),)]

    def test_trivial_example_pairs(self):
        R = cg.class_group(trivial_four_points())
        labels, sols = cg.express_in_invariant_divisors(R, {"E[x1]": 1, "E[x2]": 1})
        assert sols == [(4, 7, 2, 8)]
        labels, sols = cg.express_in_invariant_divisors(R, {"E[x1]": 1, "E[x3]": 1})
        assert sols == [(4, 10, 1, 8)]

    def test_mu3_with_prescribed_powers(self):
        # [E^{x0}] + [E^{x1}] - 2[E^{xinf}] = r0 + 2 rinf + r1
        R = cg.class_group(mu3_example())
        labels, sols = cg.express_in_invariant_divisors(
            R, {"E[x0]": 1, "E[x1]": 1, "E[xinf]": -2})
        assert labels == ["X[x0,0]", "X[xinf,0]", "X[x1,0]"]
        assert sols == [(1, 2, 1)]

    def test_zero_target(self):
        R = cg.class_group(mu3_example())
        _, sols = cg.express_in_invariant_divisors(R, {})
        assert (0, 0, 0) in sols

    def test_empty_with_torsion_diagnostic(self):
        E = affine_embedding(4, 6, Fraction(-7, 2))  # Cl = Z x Z/4
        R = cg.class_group(E)
        with pytest.raises(EmptySolutionSet):
            cg.express_in_invariant_divisors(R, {"E[x0]": 1})


class TestRestriction:
    def test_invariant_divisors_restrict_to_zero(self):
        E = mu3_example()
        assert cg.restrict_to_Fhat(E, {"X[x0,0]": 1, "X[x1,0]": 5}) == (0,)

    def test_cyclic_weights(self):
        E = mu3_example()
        assert cg.restrict_to_Fhat(E, {"E[x0]": 1}) == (1,)
        assert cg.restrict_to_Fhat(E, {"E[xinf]": 1}) == (2,)
        assert cg.restrict_to_Fhat(E, {"E[x1]": 1}) == (0,)  # nbar mod n

    def test_tetrahedral_weights(self):
        E = EmbeddingData(TETRA, (), (GStableDivisorSpec(XV, 1, -2),))
        assert cg.restrict_to_Fhat(E, {"E[xv]": 1}) == (1,)
        assert cg.restrict_to_Fhat(E, {"E[xe]": 1}) == (0,)
        assert cg.restrict_to_Fhat(E, {"E[xf]": 1}) == (2,)

    def test_torsion_injects_into_Fhat(self):
        # exactness of 0 -> Z^{N+N'} -> Cl(X) -> F-hat -> 0 on torsion
        from sl2cox.iteration import torsion_characters

        sweep = []
        for n in range(2, 13):
            nb = n if n % 2 else n // 2
            u = 1 if n % 2 else 2
            for h in (1, 2, 3, 5):
                l = -Fraction(h, 2)
                if (u * l).denominator != 1:
                    l -= Fraction(1, u)
                E = affine_embedding(n, h, l)
                if not E.validate():
                    sweep.append(E)
        for F, divs in [
            (dihedral(2), ((XF, 1, -1),)),
            (dihedral(3), ((XF, 1, -2),)),
            (dihedral(4), ((XV, 1, -2),)),
            (TETRA, ((XV, 1, -2),)),
            (OCTA, ((XV, 1, -2),)),
        ]:
            sweep.append(EmbeddingData(
                F, (), tuple(GStableDivisorSpec(p, h, Fraction(l)) for p, h, l in divs)))
        for E in sweep:
            assert not E.validate(), E
            R = cg.class_group(E)
            chars = torsion_characters(E)
            assert len(chars) == R.group.torsion_order(), (E.group, R.group)
