"""Graded Jacobian quotients: dimensions against Hilbert-series oracles,
normal forms, Macaulay vanishing, socle and membership certificates."""

import random
from fractions import Fraction

import pytest

from lgfrob import jacobian as jac
from lgfrob.errors import DegreeMismatch, NoFunctional
from lgfrob.fixtures import get_fixture
from lgfrob.poly import GradedPolynomial, parse_polynomial
from lgfrob.toric import class_group, monomial_basis


def make_system(name):
    fx = get_fixture(name)
    grading = class_group(fx.fan)
    return jac.jacobian_system(fx.fan, grading, fx.polynomial)


@pytest.fixture(scope="module")
def cubic():
    return make_system("projective-3")


@pytest.fixture(scope="module")
def quintic():
    return make_system("projective-5")


@pytest.fixture(scope="module")
def bundle_p2():
    return make_system("bundle-p2")


def fermat_quotient_dims(r):
    """Hilbert series oracle for the Fermat hypersurface of degree r in r
    variables: S/J with J = (z_i^(r-1)) has series ((1-t^(r-1))/(1-t))^r =
    (1 + t + ... + t^(r-2))^r; returns dim R(f)_{a*r} for a = 0..r-2."""
    poly = [1]
    block = [1] * (r - 1)
    for _ in range(r):
        out = [0] * (len(poly) + len(block) - 1)
        for i, x in enumerate(poly):
            for j, y in enumerate(block):
                out[i + j] += x * y
        poly = out
    return [poly[a * r] if a * r < len(poly) else 0 for a in range(r - 1)]


class TestGradedPieces:
    def test_cubic_socle_pieces(self, cubic):
        piece = jac.graded_piece(cubic, jac.IDEAL_J, (3,))
        assert piece.basis == [(1, 1, 1)]
        piece0 = jac.graded_piece(cubic, jac.IDEAL_J0, (6,))
        assert piece0.basis == [(2, 2, 2)]

    def test_dimension_accounting(self, cubic, bundle_p2):
        """dim S_alpha = rank + dim for every computed piece."""
        for system in (cubic, bundle_p2):
            m = system.m
            for a in range(m + 2):
                alpha = system.grading.scaled_beta(a)
                for ideal in (jac.IDEAL_J, jac.IDEAL_J0):
                    piece = jac.graded_piece(system, ideal, alpha)
                    ambient = len(
                        monomial_basis(system.grading, system.fan, alpha)
                    )
                    assert ambient == piece.rank + piece.dim

    def test_quintic_dims_match_hilbert_series(self, quintic):
        oracle = fermat_quotient_dims(5)
        assert oracle == [1, 101, 101, 1]
        assert [jac.dim_R(quintic, a) for a in range(4)] == oracle

    def test_cubic_dims_match_hilbert_series(self, cubic):
        assert [jac.dim_R(cubic, a) for a in range(2)] == fermat_quotient_dims(3)

    def test_quartic_surface_dims(self):
        system = make_system("projective-4")
        oracle = fermat_quotient_dims(4)
        assert [jac.dim_R(system, a) for a in range(3)] == oracle

    @pytest.mark.parametrize("name", ["projective-3", "projective-4", "weighted-p112", "bundle-p2"])
    def test_hodge_symmetry(self, name):
        system = make_system(name)
        m = system.m
        dims = [jac.dim_R(system, a) for a in range(m)]
        assert dims == dims[::-1]

    def test_weighted_p112_dims(self):
        system = make_system("weighted-p112")
        assert [jac.dim_R(system, a) for a in range(2)] == [1, 1]

    def test_p1xp1_socle_obstruction(self):
        """On P^1 x P^1 the two Euler relations are a forced dependency
        among the eight relation rows at degree beta, so dim R(f)_beta >= 2
        for every potential; the socle certificate must fail."""
        system = make_system("p1xp1")
        assert jac.dim_R(system, 1) == 2
        assert not jac.socle_certificates(system).ok

    def test_prefilter_agrees_with_exact(self, cubic):
        """The modular shortcut never changes a committed dimension."""
        fx = get_fixture("projective-3")
        grading = class_group(fx.fan)
        exact = jac.jacobian_system(fx.fan, grading, fx.polynomial)
        exact.use_prefilter = False
        for a in range(4):
            assert jac.dim_R(exact, a) == jac.dim_R(cubic, a)


class TestNormalForm:
    def test_ideal_elements_vanish(self, cubic):
        piece = jac.graded_piece(cubic, jac.IDEAL_J, (3,))
        z3 = parse_polynomial("z0^3", cubic.variables)
        assert jac.normal_form(z3, piece) == [Fraction(0)]

    def test_basis_element_is_unit_vector(self, cubic):
        piece = jac.graded_piece(cubic, jac.IDEAL_J, (3,))
        xyz = parse_polynomial("z0*z1*z2", cubic.variables)
        assert jac.normal_form(xyz, piece) == [Fraction(1)]
        piece0 = jac.graded_piece(cubic, jac.IDEAL_J0, (6,))
        gen = parse_polynomial("z0^2*z1^2*z2^2", cubic.variables)
        assert jac.normal_form(gen, piece0) == [Fraction(1)]

    def test_degree_mismatch_rejected(self, cubic):
        piece = jac.graded_piece(cubic, jac.IDEAL_J, (3,))
        with pytest.raises(DegreeMismatch):
            jac.normal_form(parse_polynomial("z0^2", cubic.variables), piece)

    @pytest.mark.parametrize("name", ["projective-3", "bundle-p2"])
    def test_linearity_on_random_samples(self, name):
        system = make_system(name)
        m = system.m
        alpha = system.grading.scaled_beta(m - 1)
        piece = jac.graded_piece(system, jac.IDEAL_J, alpha)
        monos = monomial_basis(system.grading, system.fan, alpha)
        rng = random.Random(97)
        for _ in range(20):
            p = GradedPolynomial(
                system.variables,
                {mo: rng.randint(-5, 5) for mo in rng.sample(monos, min(4, len(monos)))},
            )
            q = GradedPolynomial(
                system.variables,
                {mo: rng.randint(-5, 5) for mo in rng.sample(monos, min(4, len(monos)))},
            )
            s = Fraction(rng.randint(-3, 3))
            lhs = jac.normal_form(p.scale(s) + q, piece)
            nf_p = jac.normal_form(p, piece)
            nf_q = jac.normal_form(q, piece)
            rhs = [s * a + b for a, b in zip(nf_p, nf_q)]
            assert lhs == rhs

    @pytest.mark.parametrize("name", ["projective-3", "p1xp1", "bundle-p2"])
    def test_socle_shift_lands_in_euler_ideal(self, name):
        """z_1...z_r times anything in J(f) at degree (m-1)beta reduces to 0
        in R0(f)_{m beta}."""
        system = make_system(name)
        m = system.m
        alpha = system.grading.scaled_beta(m - 1)
        monos, rows = jac.relation_rows(system, jac.IDEAL_J, alpha)
        piece0 = jac.graded_piece(
            system, jac.IDEAL_J0, system.grading.scaled_beta(m)
        )
        rng = random.Random(101)
        shift = (1,) * len(system.variables)
        for _ in range(10):
            # random element of the relation span
            combo: dict[int, Fraction] = {}
            for row in rng.sample(rows, min(5, len(rows))):
                c = Fraction(rng.randint(-3, 3))
                for j, x in row.items():
                    combo[j] = combo.get(j, Fraction(0)) + c * x
            u = GradedPolynomial(
                system.variables,
                {monos[j]: c for j, c in combo.items() if c},
            )
            if u.is_zero():
                continue
            shifted = u.mul_monomial(shift)
            assert all(c == 0 for c in jac.normal_form(shifted, piece0))


class TestCertificates:
    def test_macaulay_on_fixtures(self, cubic, quintic, bundle_p2):
        for system in (cubic, quintic, bundle_p2):
            report = jac.macaulay_vanishing_check(system)
            assert report.ok
            assert set(report.dims) == {system.m, system.m + 1}

    def test_macaulay_fails_for_degenerate(self):
        system = make_system("degenerate-cube")
        report = jac.macaulay_vanishing_check(system)
        assert not report.ok
        assert all(d > 0 for d in report.dims.values())

    def test_socle_certificates(self, cubic, quintic):
        rep = jac.socle_certificates(cubic)
        assert (rep.dim_r, rep.dim_r0) == (1, 1)
        assert rep.generator_r == (1, 1, 1)
        assert rep.generator_r0 == (2, 2, 2)
        rep5 = jac.socle_certificates(quintic)
        assert (rep5.dim_r, rep5.dim_r0) == (1, 1)

    def test_socle_fails_for_degenerate(self):
        rep = jac.socle_certificates(make_system("degenerate-cube"))
        assert not rep.ok

    def test_euler_identity_cubic(self, cubic):
        rep = jac.euler_membership_check(cubic)
        assert rep.ok
        assert rep.scale == 3

    @pytest.mark.parametrize("name", ["projective-5", "p1xp1", "weighted-p112", "bundle-p2", "bundle-p6"])
    def test_euler_identity_fixtures(self, name):
        assert jac.euler_membership_check(make_system(name)).ok

    def test_euler_rejects_zero_beta(self, cubic):
        class FakeGrading:
            rank = 1
            beta = (0,)
            degrees = ((0,), (0,), (0,))

        fake = jac.JacobianSystem(
            cubic.fan, FakeGrading(), cubic.f, cubic.partials, cubic.euler_gens
        )
        with pytest.raises(NoFunctional):
            jac.euler_membership_check(fake)

    def test_crit_containment_bundles(self, bundle_p2):
        results = jac.crit_containment_check(
            bundle_p2, [("y1", "y2"), ("x0", "x1", "x2")]
        )
        assert all(r.ok for r in results)

    def test_crit_containment_bundle_p6(self):
        system = make_system("bundle-p6")
        fx = get_fixture("bundle-p6")
        results = jac.crit_containment_check(system, fx.zero_sets)
        assert all(r.ok for r in results)

    def test_crit_containment_failure_witness(self, cubic):
        results = jac.crit_containment_check(cubic, [("z1", "z2")])
        assert not results[0].ok
        assert "z0" in results[0].witness

    def test_inhomogeneous_rejected(self):
        fx = get_fixture("projective-3")
        grading = class_group(fx.fan)
        bad = parse_polynomial("x^3 + x", ("x", "y", "z"))
        from lgfrob.errors import NotHomogeneous

        with pytest.raises(NotHomogeneous):
            jac.jacobian_system(fx.fan, grading, bad)

    def test_wrong_degree_rejected(self):
        fx = get_fixture("projective-3")
        grading = class_group(fx.fan)
        quadric = parse_polynomial("x^2 + y*z", ("x", "y", "z"))
        with pytest.raises(DegreeMismatch):
            jac.jacobian_system(fx.fan, grading, quadric)
