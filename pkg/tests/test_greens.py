import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phtriplet.errors import DimensionMismatch, IntervalMismatch
from phtriplet.fixtures import dzektser_pair, rod_pair, rod_skew, wave_skew
from phtriplet.greens import (
    VectorPolynomial,
    apply_even_order_pair,
    apply_skew,
    green_residual_range,
    green_residual_skew,
    l2_inner_product,
    poly_derivative,
    random_vector_polynomial,
    range_green_suite,
    range_green_terms,
    skew_green_suite,
    skew_green_terms,
)
from phtriplet.opspec import EvenOrderOperatorPair, Interval, SkewOperator
from phtriplet.triplet import build_range_triplet, build_skew_triplet

from helpers import perturbed_pair, random_interval, random_valid_pair

UNIT = Interval(0.0, 1.0)


def poly(*coeffs, interval=UNIT):
    return VectorPolynomial([list(c) for c in coeffs], interval)


class TestDerivative:
    def test_square_twice(self):
        np.testing.assert_allclose(poly_derivative(poly([0, 0, 1]), 2).coeffs, [[2]])

    def test_constant(self):
        np.testing.assert_allclose(poly_derivative(poly([3.0]), 1).coeffs, [[0]])

    def test_complex(self):
        np.testing.assert_allclose(poly_derivative(poly([0, 1j, 0, 1]), 1).coeffs, [[1j, 0, 3]])

    def test_beyond_degree(self):
        np.testing.assert_allclose(poly_derivative(poly([1, 2, 3]), 5).coeffs, [[0]])

    def test_negative_order(self):
        with pytest.raises(ValueError):
            poly_derivative(poly([1]), -1)


class TestOperators:
    def test_dzektser_square(self):
        px, sx = apply_even_order_pair(dzektser_pair(), poly([0, 0, 1], interval=Interval(0, np.pi)))
        np.testing.assert_allclose(px.coeffs, [[2, 0, 1]])
        np.testing.assert_allclose(sx.coeffs[:, :1], [[2]])
        np.testing.assert_allclose(sx.coeffs[:, 1:], 0)

    def test_zero_input(self):
        px, sx = apply_even_order_pair(dzektser_pair(), VectorPolynomial.zeros(1, Interval(0, np.pi)))
        assert not np.any(px.coeffs) and not np.any(sx.coeffs)

    def test_second_order(self):
        pair = EvenOrderOperatorPair([[[1]], [[0]]], [[[0]], [[1]]])
        px, sx = apply_even_order_pair(pair, poly([0, 0, 0, 1]))
        np.testing.assert_allclose(px.coeffs, [[0, 0, 0, 1]])
        np.testing.assert_allclose(sx.coeffs[0, :2], [0, 6])
        np.testing.assert_allclose(sx.coeffs[0, 2:], 0)

    def test_wave_skew(self):
        jx = apply_skew(wave_skew(), poly([0, 1], [0, 0, 1]))
        np.testing.assert_allclose(jx.coeffs[0, :2], [0, 2])
        np.testing.assert_allclose(jx.coeffs[1, :1], [1])
        np.testing.assert_allclose(jx.coeffs[1, 1:], 0)

    def test_rod_skew(self):
        # J0 x + J1 x' for x = (1, ξ, ξ²): (ξ², 2ξ, −1 + 1)
        jx = apply_skew(rod_skew(), poly([1], [0, 1], [0, 0, 1]))
        np.testing.assert_allclose(jx.coeffs[0], [0, 0, 1])
        np.testing.assert_allclose(jx.coeffs[1], [0, 2, 0])
        np.testing.assert_allclose(jx.coeffs[2], [0, 0, 0])

    def test_skew_constant_input(self):
        j = SkewOperator([np.zeros((1, 1)), np.ones((1, 1))])
        assert not np.any(apply_skew(j, poly([4.0])).coeffs)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_even_order_pair(dzektser_pair(), VectorPolynomial.zeros(2))


class TestInnerProduct:
    def test_ones(self):
        assert l2_inner_product(poly([1]), poly([1])) == pytest.approx(1.0)

    def test_linear(self):
        assert l2_inner_product(poly([0, 1]), poly([1])) == pytest.approx(0.5)

    def test_conjugate_second_argument(self):
        assert l2_inner_product(poly([0, 1j]), poly([0, 1])) == pytest.approx(1j / 3)
        assert l2_inner_product(poly([0, 1]), poly([0, 1j])) == pytest.approx(-1j / 3)

    def test_interval_mismatch(self):
        with pytest.raises(IntervalMismatch):
            l2_inner_product(poly([1]), poly([1], interval=Interval(0, 2)))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_integration_by_parts(self, seed):
        rng = np.random.default_rng(seed)
        iv = random_interval(rng)
        x = random_vector_polynomial(1, 10, iv, rng)
        y = random_vector_polynomial(1, 10, iv, rng)
        lhs = l2_inner_product(x.derivative(), y) + l2_inner_product(x, y.derivative())
        rhs = np.conj(y(iv.b)[0]) * x(iv.b)[0] - np.conj(y(iv.a)[0]) * x(iv.a)[0]
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestRangeResidual:
    def test_second_order_by_hand(self):
        pair = EvenOrderOperatorPair([[[1]], [[0]]], [[[0]], [[1]]])
        t = build_range_triplet(pair)
        np.testing.assert_array_equal(t.a_matrix, [[0, 1], [-1, 0]])
        x, y = poly([0, 0, 1]), poly([0, 1])
        terms = range_green_terms(pair, t, x, y)
        assert terms.lhs == pytest.approx(1.0)
        assert terms.trace_form == pytest.approx(1.0)
        assert green_residual_range(pair, t, x, y) < 1e-14

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_antisymmetry(self, seed):
        rng = np.random.default_rng(seed)
        pair = random_valid_pair(rng)
        t = build_range_triplet(pair)
        x = random_vector_polynomial(pair.n, 2 * pair.order + 4, pair.interval, rng)
        y = random_vector_polynomial(pair.n, 2 * pair.order + 4, pair.interval, rng)
        gxy = range_green_terms(pair, t, x, y)
        gyx = range_green_terms(pair, t, y, x)
        assert abs(gxy.lhs + np.conj(gyx.lhs)) <= 1e-12 * max(gxy.scale, gyx.scale)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_valid_pairs(self, seed):
        rng = np.random.default_rng(seed)
        pair = random_valid_pair(rng)
        stats = range_green_suite(pair, build_range_triplet(pair), samples=5, seed=seed % 1000)
        assert stats.max_relative_residual <= 1e-9

    def test_dzektser_suite(self):
        pair = dzektser_pair()
        stats = range_green_suite(pair, build_range_triplet(pair), samples=50, seed=3, max_degree=8)
        assert stats.count == 50 and stats.max_relative_residual <= 1e-9

    def test_perturbed_pair_fails(self):
        rng = np.random.default_rng(11)
        pair = perturbed_pair(dzektser_pair(), rng)
        t = build_range_triplet(pair, enforce_assumptions=False)
        x = random_vector_polynomial(1, 8, pair.interval, rng, exact_degree=True)
        y = random_vector_polynomial(1, 8, pair.interval, rng, exact_degree=True)
        assert green_residual_range(pair, t, x, y) > 1e-3


class TestSkewResidual:
    def test_first_order_scalar(self):
        j = SkewOperator([[[0.0]], [[1.0]]])
        t = build_skew_triplet(j)
        x = poly([0, 1])
        assert skew_green_terms(j, t, x, x).lhs == pytest.approx(1.0)
        assert green_residual_skew(j, t, x, x) < 1e-15

    def test_vanishing_at_endpoints(self):
        j = wave_skew()
        bump = np.polynomial.polynomial.polypow([0, 1, -1], 2)  # (ξ(1 − ξ))²
        x = VectorPolynomial([bump, np.polynomial.polynomial.polymul(bump, [1, 2j])], UNIT)
        y = VectorPolynomial([[1, 1j, 3], [0, 2]], UNIT)
        terms = skew_green_terms(j, build_skew_triplet(j), x, y)
        assert abs(terms.lhs) < 1e-14 and abs(terms.trace_form) < 1e-14

    def test_rod_suite(self):
        j = rod_skew()
        stats = skew_green_suite(j, build_skew_triplet(j), samples=50, seed=5)
        assert stats.max_relative_residual <= 1e-9


class TestSuiteEdges:
    def test_zero_samples(self):
        pair = rod_pair()
        stats = range_green_suite(pair, build_range_triplet(pair), samples=0)
        assert stats.count == 0 and stats.max_residual == 0.0

    def test_seeded_reproducible(self):
        pair = rod_pair()
        t = build_range_triplet(pair)
        assert range_green_suite(pair, t, 10, 7) == range_green_suite(pair, t, 10, 7)

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            random_vector_polynomial(1, 40, UNIT, np.random.default_rng(0))
