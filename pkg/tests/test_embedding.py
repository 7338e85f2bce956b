import json
from fractions import Fraction

import pytest

from sl2cox.embedding import (
    EmbeddingData,
    GStableDivisorSpec,
    SchemaError,
    affine_embedding,
    derive_ap0_input,
    embedding_from_dict,
    embedding_to_dict,
)
from sl2cox.exactmath import gauss
from sl2cox.groups import ICOSA, TETRA, cyclic, dihedral
from sl2cox.hyperspace import Section, X0, XE, XF, XINF, XV, point


def trivial_four_points() -> EmbeddingData:
    pts = (point(1, 0), point(0, 1), point(1, 1), point(2, 1))
    divs = tuple(GStableDivisorSpec(p, h, l) for p, h, l in [
        (pts[0], 2, -1), (pts[1], 3, -5), (pts[2], 1, -1), (pts[3], 5, -4)])
    return EmbeddingData(cyclic(1), pts, divs, Section.at(pts[0]))


def mu3_example(alpha=2, beta=3) -> EmbeddingData:
    x1 = point(alpha, beta)
    return EmbeddingData(cyclic(3), (x1,), (
        GStableDivisorSpec(X0, 1, -1),
        GStableDivisorSpec(XINF, 1, -1),
        GStableDivisorSpec(x1, 1, -1),
    ))


class TestValidate:
    def test_examples_valid(self):
        assert trivial_four_points().validate() == []
        assert mu3_example().validate() == []

    def test_valuation_outside_cone(self):
        E = EmbeddingData(cyclic(5), (), (GStableDivisorSpec(X0, 1, 1),))
        codes = [v.code for v in E.validate()]
        assert "ValuationOutsideCone" in codes

    def test_two_dominating(self):
        E = EmbeddingData(cyclic(3), (), (
            GStableDivisorSpec(None, 0, Fraction(-1)),
            GStableDivisorSpec(None, 0, Fraction(-2))))
        codes = [v.code for v in E.validate()]
        assert "TooManyDominating" in codes

    def test_half_integer_l_needs_even_n(self):
        E = EmbeddingData(cyclic(5), (), (GStableDivisorSpec(X0, 1, Fraction(-1, 2)),))
        assert "FractionalL" in [v.code for v in E.validate()]
        E = EmbeddingData(cyclic(4), (), (GStableDivisorSpec(X0, 1, Fraction(-1, 2)),))
        assert E.validate() == []

    def test_extra_point_needs_divisor(self):
        E = EmbeddingData(cyclic(3), (point(1, 1),), (
            GStableDivisorSpec(X0, 1, -1),))
        assert "ExtraPointWithoutDivisor" in [v.code for v in E.validate()]

    def test_clash_with_canonical(self):
        p = point(0, 1)  # the coordinates of x0 for n >= 3
        E = EmbeddingData(cyclic(3), (p,), (GStableDivisorSpec(p, 1, -1),))
        assert "PointClashesCanonical" in [v.code for v in E.validate()]

    def test_idempotent_and_sorted(self):
        E = EmbeddingData(cyclic(5), (), (
            GStableDivisorSpec(X0, 1, 1), GStableDivisorSpec(None, 1, Fraction(1))))
        v1 = E.validate()
        v2 = E.validate()
        assert v1 == v2 == sorted(v1, key=lambda x: (x.code, x.detail))


class TestCounts:
    def test_trivial_example(self):
        assert trivial_four_points().counts() == (0, 4)

    def test_mu3_example(self):
        assert mu3_example().counts() == (2, 1)

    def test_affine(self):
        assert affine_embedding(5, 7, -4).counts() == (1, 0)

    def test_dominating_counts_into_n(self):
        E = EmbeddingData(cyclic(3), (), (
            GStableDivisorSpec(X0, 1, -1), GStableDivisorSpec(None, 0, Fraction(-1))))
        assert E.counts() == (2, 0)


class TestDeriveAP0:
    def test_trivial_example(self):
        A, vectors, m = derive_ap0_input(trivial_four_points())
        assert [(c[0], c[1]) for c in A] == [
            (gauss(1), gauss(0)), (gauss(0), gauss(1)),
            (gauss(1), gauss(1)), (gauss(2), gauss(1))]
        assert vectors == [(1, 2), (1, 3), (1, 1), (1, 5)]
        assert m == 0

    def test_mu3_example(self):
        A, vectors, m = derive_ap0_input(mu3_example())
        assert vectors == [(3, 1), (3, 1), (1, 1)]
        assert A[0] == (gauss(0), gauss(1))    # x0 = [0:1]
        assert A[1] == (gauss(-1), gauss(0))   # xinf = [-1:0]

    def test_tetrahedral_coordinates(self):
        E = EmbeddingData(TETRA, (), ())
        A, vectors, m = derive_ap0_input(E)
        assert A == [(gauss(0), gauss(1)), (gauss(1), gauss(0)), (gauss(-1), gauss(-1))]
        assert vectors == [(3,), (2,), (3,)]

    def test_degenerate_no_points(self):
        A, vectors, m = derive_ap0_input(EmbeddingData(cyclic(2)))
        assert A == [] and vectors == [] and m == 0

    def test_columns_pairwise_independent(self):
        A, _, _ = derive_ap0_input(trivial_four_points())
        for i in range(len(A)):
            for j in range(i + 1, len(A)):
                det = A[i][0] * A[j][1] - A[i][1] * A[j][0]
                assert det

    def test_dominating_flag(self):
        E = EmbeddingData(cyclic(3), (), (GStableDivisorSpec(None, 0, Fraction(-1)),))
        assert derive_ap0_input(E)[2] == 1


class TestJson:
    def test_roundtrip(self):
        for E in (trivial_four_points(), mu3_example(), affine_embedding(4, 6, Fraction(-7, 2))):
            doc = embedding_to_dict(E)
            E2 = embedding_from_dict(json.loads(json.dumps(doc)))
            assert E2 == E

    def test_unknown_keys_rejected(self):
        with pytest.raises(SchemaError):
            embedding_from_dict({"group": {"type": "cyclic", "n": 3}, "bogus": 1})
        with pytest.raises(SchemaError):
            embedding_from_dict({"group": {"type": "cyclic", "n": 3, "x": 0}})

    def test_bad_group(self):
        with pytest.raises(SchemaError):
            embedding_from_dict({"group": {"type": "quaternionic"}})
        with pytest.raises(SchemaError):
            embedding_from_dict({"group": {"type": "cyclic"}})

    def test_gaussian_point(self):
        E = embedding_from_dict({
            "group": {"type": "cyclic", "n": 1},
            "extra_points": [{"alpha": {"re": "0", "im": "1"}, "beta": "1"}],
            "divisors": [{"over": "extra:0", "h": 1, "l": "-1"}],
        })
        assert E.extra_points[0].alpha == gauss({"re": 0, "im": 1})

    def test_bad_reference(self):
        with pytest.raises(SchemaError):
            embedding_from_dict({
                "group": {"type": "cyclic", "n": 3},
                "divisors": [{"over": "extra:0", "h": 1, "l": "-1"}],
            })
