"""Polynomial arithmetic, the text grammar, and class-group grading."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgfrob.errors import (
    DegreeMismatch,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
)
from lgfrob.poly import (
    GradedPolynomial,
    check_homogeneous,
    grlex_key,
    monomial_degree,
    parse_polynomial,
)

VARS = ("x", "y", "z")

coeffs = st.fractions(
    min_value=-20, max_value=20, max_denominator=7
).filter(lambda q: q != 0)
monomials = st.tuples(*[st.integers(0, 5)] * 3)
polynomials = st.dictionaries(monomials, coeffs, max_size=6).map(
    lambda terms: GradedPolynomial(VARS, terms)
)


class TestArithmetic:
    def test_zero_and_constant(self):
        zero = GradedPolynomial.zero(VARS)
        one = GradedPolynomial.constant(VARS, 1)
        assert zero.is_zero()
        assert (one - one).is_zero()

    @given(polynomials, polynomials)
    def test_addition_commutes(self, p, q):
        assert p + q == q + p

    @given(polynomials, polynomials, polynomials)
    @settings(max_examples=50)
    def test_multiplication_associates_and_distributes(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polynomials, polynomials)
    def test_multiplication_commutes(self, p, q):
        assert p * q == q * p

    @given(polynomials)
    def test_additive_inverse(self, p):
        assert (p + (-p)).is_zero()

    @given(polynomials, polynomials)
    @settings(max_examples=50)
    def test_derivative_leibniz(self, p, q):
        for i in range(3):
            lhs = (p * q).partial_derivative(i)
            rhs = p.partial_derivative(i) * q + p * q.partial_derivative(i)
            assert lhs == rhs

    def test_mul_monomial_matches_full_product(self):
        p = parse_polynomial("x^2 + 3*y*z", VARS)
        shifted = p.mul_monomial((1, 0, 2), Fraction(5))
        reference = p * GradedPolynomial.monomial(VARS, (1, 0, 2), 5)
        assert shifted == reference

    def test_restrict_to_zero(self):
        p = parse_polynomial("x^2*y + z^3 + x*z", VARS)
        assert p.restrict_to_zero(["z"]) == parse_polynomial("x^2*y", VARS)
        with pytest.raises(UnknownVariable):
            p.restrict_to_zero(["w"])


class TestTextFormat:
    @given(polynomials)
    @settings(max_examples=200)
    def test_round_trip(self, p):
        assert parse_polynomial(p.to_text(), VARS) == p

    def test_canonical_order_is_graded_lex_descending(self):
        p = parse_polynomial("y + x^2 + 1", VARS)
        assert p.to_text() == "x^2 + y + 1"

    def test_rational_coefficients(self):
        p = parse_polynomial("-1/2*x + 3/4", VARS)
        assert p.terms[(1, 0, 0)] == Fraction(-1, 2)
        assert p.terms[(0, 0, 0)] == Fraction(3, 4)

    def test_parenthesized_products(self):
        p = parse_polynomial("(x + y)*(x - y)", VARS)
        assert p == parse_polynomial("x^2 - y^2", VARS)

    def test_power_binds_tighter_than_product(self):
        assert parse_polynomial("2*x^3", VARS) == parse_polynomial(
            "2*(x^3)", VARS
        )

    def test_syntax_error_carries_position(self):
        with pytest.raises(PolySyntaxError) as err:
            parse_polynomial("x^^2", VARS)
        assert err.value.position == 2

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable) as err:
            parse_polynomial("x + w", VARS)
        assert err.value.name == "w"

    def test_trailing_garbage_rejected(self):
        with pytest.raises(PolySyntaxError):
            parse_polynomial("x + y )", VARS)

    def test_unexpected_end(self):
        with pytest.raises(PolySyntaxError):
            parse_polynomial("x +", VARS)


class _FakeGrading:
    def __init__(self, degrees):
        self.degrees = tuple(tuple(d) for d in degrees)


class TestGrading:
    def test_monomial_degree_additivity(self):
        degrees = ((1, 0), (1, 0), (0, 1))
        a, b = (2, 1, 0), (0, 1, 3)
        combined = tuple(x + y for x, y in zip(a, b))
        da = monomial_degree(a, degrees)
        db = monomial_degree(b, degrees)
        assert monomial_degree(combined, degrees) == tuple(
            x + y for x, y in zip(da, db)
        )

    @given(monomials, monomials)
    def test_additivity_random(self, a, b):
        degrees = ((1, 2), (3, 0), (-1, 1))
        combined = tuple(x + y for x, y in zip(a, b))
        da = monomial_degree(a, degrees)
        db = monomial_degree(b, degrees)
        assert monomial_degree(combined, degrees) == tuple(
            x + y for x, y in zip(da, db)
        )

    def test_homogeneous_stamps_degree(self):
        g = _FakeGrading([(1,), (1,), (1,)])
        p = parse_polynomial("x^3 + x*y*z", VARS)
        assert check_homogeneous(p, g) == (3,)
        assert p.degree == (3,)

    def test_inhomogeneous_witness(self):
        g = _FakeGrading([(1,), (1,), (1,)])
        p = parse_polynomial("x^2 + y^3", VARS)
        with pytest.raises(NotHomogeneous) as err:
            check_homogeneous(p, g)
        mono_a, deg_a, mono_b, deg_b = err.value.witness
        assert {deg_a, deg_b} == {(2,), (3,)}
        assert mono_a != mono_b

    def test_zero_polynomial_has_no_degree(self):
        g = _FakeGrading([(1,), (1,), (1,)])
        with pytest.raises(DegreeMismatch):
            check_homogeneous(GradedPolynomial.zero(VARS), g)


class TestGrlexOrder:
    def test_total_degree_dominates(self):
        assert grlex_key((0, 0, 2)) < grlex_key((3, 0, 0))

    def test_lex_breaks_ties(self):
        assert grlex_key((0, 1, 1)) < grlex_key((1, 0, 1))
