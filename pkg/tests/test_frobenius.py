"""Algebra assembly, trace normalization, pairing and the axiom suite."""

import random
from fractions import Fraction

import pytest

from lgfrob import frobenius as frob
from lgfrob import jacobian as jac
from lgfrob.errors import DegreeMismatch, HessianGeneratorZero, SocleNotOneDimensional
from lgfrob.fixtures import get_fixture
from lgfrob.poly import parse_polynomial
from lgfrob.toric import class_group


def make_system(name):
    fx = get_fixture(name)
    grading = class_group(fx.fan)
    return jac.jacobian_system(fx.fan, grading, fx.polynomial)


@pytest.fixture(scope="module")
def cubic_algebra():
    return frob.build_algebra(make_system("projective-3"), frob.GENERIC)


@pytest.fixture(scope="module")
def quartic_algebra():
    return frob.build_algebra(make_system("projective-4"), frob.GENERIC)


@pytest.fixture(scope="module")
def bundle_algebra():
    return frob.build_algebra(make_system("bundle-p2"), frob.GENERIC)


class TestBuild:
    def test_cubic_layout(self, cubic_algebra):
        D = cubic_algebra
        assert D.dims() == [1, 1]
        assert D.volume == 9
        assert D.bases[1].basis == [(1, 1, 1)]
        assert D.generator_monomial == (2, 2, 2)
        # the only product with a + b >= m was verified zero-dimensional
        assert D.zero_sums_checked == [2]

    def test_degenerate_rejected(self):
        with pytest.raises(SocleNotOneDimensional):
            frob.build_algebra(make_system("degenerate-cube"), frob.GENERIC)

    def test_p1xp1_rejected(self):
        # socle dimension is forced to 2 on P^1 x P^1 (failed middle
        # cup-product hypothesis); the builder must refuse
        with pytest.raises(SocleNotOneDimensional):
            frob.build_algebra(make_system("p1xp1"), frob.GENERIC)

    def test_hessian_strategy_needs_projective_fan(self):
        with pytest.raises(HessianGeneratorZero):
            frob.build_algebra(make_system("weighted-p112"), frob.PROJECTIVE_HESSIAN)

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError):
            frob.build_algebra(make_system("projective-3"), "newton")


class TestTrace:
    def test_cubic_generic_value(self, cubic_algebra):
        t = frob.trace([Fraction(1)], cubic_algebra)
        assert t.rational == 9
        assert t.unit_exponent == 1

    def test_linearity_and_zero(self, cubic_algebra):
        assert frob.trace([Fraction(0)], cubic_algebra).rational == 0
        t2 = frob.trace([Fraction(-2, 3)], cubic_algebra)
        assert t2.rational == Fraction(-6)

    def test_sign_convention(self, cubic_algebra, quartic_algebra, bundle_algebra):
        # -(-1)^(m(m-1)/2): +1 for m = 2 and 3, -1 for m = 4 and 5
        assert cubic_algebra.sign == 1
        assert quartic_algebra.sign == 1
        assert bundle_algebra.sign == 1
        for m, expected in ((2, 1), (3, 1), (4, -1), (5, -1), (7, 1)):
            assert -((-1) ** (m * (m - 1) // 2)) == expected

    def test_strategy_proportionality_cubic(self, cubic_algebra):
        """Generic and projective-hessian traces differ by one global
        nonzero rational ratio on all inputs; the ratio is recorded."""
        hess = frob.build_algebra(make_system("projective-3"), frob.PROJECTIVE_HESSIAN)
        rng = random.Random(7)
        ratio = None
        for _ in range(10):
            u = [Fraction(rng.randint(-5, 5))]
            a = frob.trace(u, cubic_algebra).rational
            b = frob.trace(u, hess).rational
            if b == 0:
                assert a == 0
                continue
            if ratio is None:
                ratio = a / b
            assert a == ratio * b
        assert ratio is not None and ratio != 0
        # the detected ratio equals the hessian generator coordinate
        assert ratio == hess.generator_coord

    def test_strategy_proportionality_quintic_socle(self):
        system = make_system("projective-5")
        gen = frob.build_algebra(system, frob.GENERIC)
        hess = frob.build_algebra(system, frob.PROJECTIVE_HESSIAN)
        u = [Fraction(1)]
        a = frob.trace(u, gen).rational
        b = frob.trace(u, hess).rational
        assert a != 0 and b != 0
        assert a / b == hess.generator_coord

    def test_gram_proportionality_across_degrees(self, quartic_algebra):
        """The strategy ratio is one global factor shared by every degree."""
        hess = frob.build_algebra(make_system("projective-4"), frob.PROJECTIVE_HESSIAN)
        ratio = hess.generator_coord
        for a in range(quartic_algebra.m):
            g1 = frob.pairing_gram(quartic_algebra, a)
            g2 = frob.pairing_gram(hess, a)
            for row1, row2 in zip(g1, g2):
                for e1, e2 in zip(row1, row2):
                    assert e1.rational == ratio * e2.rational

    def test_wrong_coordinate_count(self, cubic_algebra):
        with pytest.raises(DegreeMismatch):
            frob.trace([Fraction(1), Fraction(2)], cubic_algebra)


class TestPairing:
    def test_cubic_gram(self, cubic_algebra):
        g0 = frob.pairing_gram(cubic_algebra, 0)
        assert g0[0][0].rational == 9
        g1 = frob.pairing_gram(cubic_algebra, 1)
        assert g1[0][0].rational == 9

    def test_transpose_symmetry(self, bundle_algebra):
        m = bundle_algebra.m
        for a in range(m):
            g = frob.pairing_gram(bundle_algebra, a)
            h = frob.pairing_gram(bundle_algebra, m - 1 - a)
            assert len(g) == len(h[0]) and len(g[0]) == len(h)
            for i in range(len(g)):
                for j in range(len(g[0])):
                    assert g[i][j].rational == h[j][i].rational

    def test_out_of_range(self, cubic_algebra):
        with pytest.raises(DegreeMismatch):
            frob.pairing_gram(cubic_algebra, 5)


class TestMulTwisted:
    def test_unit_times_socle(self, cubic_algebra):
        # m = 2: mul(1, v) = (-1)^1 v
        out = frob.mul_twisted(0, [Fraction(1)], 1, [Fraction(1)], cubic_algebra)
        assert out == [Fraction(-1)]

    def test_symmetry_law(self, bundle_algebra):
        """mul(u, v) = (-1)^(m-1) mul(v, u) on random socle-complementary
        pairs."""
        rng = random.Random(13)
        m = bundle_algebra.m
        dims = bundle_algebra.dims()
        for a in range(m):
            b = m - 1 - a
            for _ in range(5):
                u = [Fraction(rng.randint(-4, 4)) for _ in range(dims[a])]
                v = [Fraction(rng.randint(-4, 4)) for _ in range(dims[b])]
                lhs = frob.mul_twisted(a, u, b, v, bundle_algebra)
                rhs = frob.mul_twisted(b, v, a, u, bundle_algebra)
                sign = (-1) ** (m - 1)
                assert lhs == [sign * x for x in rhs]

    def test_degree_constraint(self, bundle_algebra):
        with pytest.raises(DegreeMismatch):
            frob.mul_twisted(0, [Fraction(1)], 0, [Fraction(1)], bundle_algebra)


class TestAxioms:
    @pytest.mark.parametrize("name", ["projective-3", "projective-4", "weighted-p112", "bundle-p2"])
    def test_all_axioms_pass(self, name):
        D = frob.build_algebra(make_system(name), frob.GENERIC)
        report = frob.frobenius_axiom_check(D, sample_seed=0, sample_count=60)
        assert report.all_pass, report.as_dict()

    def test_exhaustive_mode_on_small_algebra(self, cubic_algebra):
        report = frob.frobenius_axiom_check(cubic_algebra, 0, 60)
        assert not report.sampled

    def test_seeded_reproducibility(self, bundle_algebra):
        r1 = frob.frobenius_axiom_check(bundle_algebra, 42, 40).as_dict()
        r2 = frob.frobenius_axiom_check(bundle_algebra, 42, 40).as_dict()
        assert r1 == r2

    def test_macaulay_consistency_products_vanish(self, bundle_algebra):
        """Every degree a+b >= m reachable from basis pairs was proved
        zero-dimensional during the build, so high products reduce to the
        zero vector rather than being skipped."""
        D = bundle_algebra
        m = D.m
        assert D.zero_sums_checked == sorted(
            {a + b for a in range(m) for b in range(m) if a + b >= m}
        )
        for a in range(m):
            for b in range(m):
                if a + b >= m:
                    piece = jac.graded_piece(
                        D.system, jac.IDEAL_J, D.system.grading.scaled_beta(a + b)
                    )
                    assert piece.dim == 0

    def test_hodge_row(self, quartic_algebra):
        assert frob.hodge_row(quartic_algebra) == quartic_algebra.dims()
        assert frob.hodge_row(quartic_algebra)[0] == 1
