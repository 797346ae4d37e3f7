"""Hyperbolic number algebra: worked values, ring laws and polar forms.

Ring laws run on integer components, where every product is exactly
representable, so they are checked with exact equality. Property tests and
the bulk suites use 10**4 inputs each; unit-circle phases reach |theta| = 300
and are compared in light-cone coordinates.
"""

from __future__ import annotations

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from contextprob.errors import NoPolarForm, NotInvertible, PhaseOverflow
from contextprob.hyperbolic import (
    ONE,
    ZERO,
    HyperbolicNumber,
    PolarForm,
    h_add,
    h_conj,
    h_exp,
    h_inverse,
    h_mul,
    h_polar,
    h_sq_norm,
)

SQRT3 = math.sqrt(3.0)
LN_2_SQRT3 = math.log(2.0 + SQRT3)

ints = st.integers(min_value=-1000, max_value=1000)
exact_numbers = st.builds(HyperbolicNumber, ints, ints)
phases = st.floats(min_value=-300.0, max_value=300.0, allow_nan=False)
many = settings(max_examples=10_000, deadline=None)


class TestWorkedValues(unittest.TestCase):
    def test_addition(self) -> None:
        self.assertEqual(
            h_add(HyperbolicNumber(1, 2), HyperbolicNumber(3, 4)), HyperbolicNumber(4, 6)
        )
        z = HyperbolicNumber(2.5, -1.0)
        self.assertEqual(z + ZERO, z)
        self.assertEqual(
            HyperbolicNumber(2, SQRT3) + HyperbolicNumber(2, -SQRT3), HyperbolicNumber(4, 0)
        )

    def test_zero_divisors_exist(self) -> None:
        self.assertEqual(h_mul(HyperbolicNumber(1, 1), HyperbolicNumber(1, -1)), ZERO)

    def test_multiplicative_identity(self) -> None:
        z = HyperbolicNumber(-0.3, 7.0)
        self.assertEqual(z * ONE, z)
        self.assertEqual(2 * z, HyperbolicNumber(-0.6, 14.0))

    def test_conjugation(self) -> None:
        z = HyperbolicNumber(2, SQRT3)
        self.assertEqual(h_conj(z), HyperbolicNumber(2, -SQRT3))
        self.assertEqual(h_conj(h_conj(z)), z)
        self.assertTrue(h_conj(h_exp(0.7)).isclose(h_exp(-0.7)))

    def test_squared_norm(self) -> None:
        self.assertAlmostEqual(h_sq_norm(h_exp(1.3)), 1.0, places=12)
        self.assertEqual(h_sq_norm(HyperbolicNumber(1, 1)), 0.0)
        self.assertAlmostEqual(h_sq_norm(HyperbolicNumber(2, SQRT3)), 1.0, places=12)
        self.assertLess(h_sq_norm(HyperbolicNumber(1, 2)), 0.0)

    def test_exponential(self) -> None:
        self.assertEqual(h_exp(0.0), ONE)
        self.assertTrue(h_exp(LN_2_SQRT3).isclose(HyperbolicNumber(2.0, SQRT3)))
        self.assertTrue(h_exp(-0.4).isclose(h_conj(h_exp(0.4))))
        self.assertTrue((h_exp(0.3) * h_exp(1.1)).isclose(h_exp(1.4)))

    def test_exponential_overflow(self) -> None:
        with self.assertRaises(PhaseOverflow):
            h_exp(701.0)
        with self.assertRaises(OverflowError):
            h_exp(-1e4)
        self.assertTrue(math.isfinite(h_exp(700.0).x))

    def test_inverse(self) -> None:
        self.assertTrue(
            h_inverse(HyperbolicNumber(2, SQRT3)).isclose(HyperbolicNumber(2, -SQRT3))
        )
        self.assertEqual(h_inverse(HyperbolicNumber(-3, 0)), HyperbolicNumber(-1 / 3, 0))
        with self.assertRaises(NotInvertible):
            h_inverse(HyperbolicNumber(1, 1))
        with self.assertRaises(NotInvertible):
            h_inverse(HyperbolicNumber(1, 2))

    def test_polar(self) -> None:
        polar = h_polar(HyperbolicNumber(2, SQRT3))
        self.assertEqual(polar.sign, 1)
        self.assertAlmostEqual(polar.modulus, 1.0, places=12)
        self.assertAlmostEqual(polar.phase, LN_2_SQRT3, places=12)

        self.assertEqual(h_polar(HyperbolicNumber(5, 0)), PolarForm(1, 5.0, 0.0))
        with self.assertRaises(NoPolarForm):
            h_polar(HyperbolicNumber(1, 1))

    def test_polar_of_negative_branch(self) -> None:
        z = HyperbolicNumber(-2, SQRT3)
        polar = h_polar(z)
        self.assertEqual(polar.sign, -1)
        self.assertTrue(polar.reconstruct().isclose(z))

    def test_bool_is_not_a_scalar(self) -> None:
        with self.assertRaises(TypeError):
            HyperbolicNumber(1, 0) + True

    def test_membership(self) -> None:
        self.assertTrue(HyperbolicNumber(1, 1).in_g_plus)
        self.assertFalse(HyperbolicNumber(1, 1).in_g_plus_star)
        self.assertTrue(HyperbolicNumber(-3, 1).in_g_plus_star)
        self.assertFalse(HyperbolicNumber(0, 1).in_g_plus)

    def test_serialization_and_repr(self) -> None:
        z = HyperbolicNumber(1.0, -2.0)
        self.assertEqual(z.to_dict(), {"x": 1.0, "y": -2.0})
        self.assertEqual(HyperbolicNumber.from_dict(z.to_dict()), z)
        self.assertEqual(repr(z), "(1.0 - j2.0)")


class TestRingLaws(unittest.TestCase):
    @many
    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_associativity(self, a, b, c) -> None:
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual((a * b) * c, a * (b * c))

    @many
    @given(exact_numbers, exact_numbers)
    def test_commutativity(self, a, b) -> None:
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)

    @many
    @given(exact_numbers, exact_numbers, exact_numbers)
    def test_distributivity(self, a, b, c) -> None:
        self.assertEqual(a * (b + c), a * b + a * c)

    @many
    @given(exact_numbers, exact_numbers)
    def test_conjugation_is_an_involution_of_the_algebra(self, a, b) -> None:
        self.assertEqual((a * b).conj(), a.conj() * b.conj())
        self.assertEqual(a.conj().conj(), a)

    @many
    @given(exact_numbers, exact_numbers)
    def test_norm_is_multiplicative(self, a, b) -> None:
        self.assertEqual((a * b).sq_norm(), a.sq_norm() * b.sq_norm())

    @many
    @given(exact_numbers, exact_numbers)
    def test_g_plus_is_closed(self, a, b) -> None:
        if a.in_g_plus and b.in_g_plus:
            self.assertTrue((a * b).in_g_plus)

    @many
    @given(phases, phases)
    def test_unit_circle_is_a_group(self, t1, t2) -> None:
        product, expected = h_exp(t1) * h_exp(t2), h_exp(t1 + t2)
        self.assertTrue(math.isclose(product.u, expected.u, rel_tol=1e-12))
        self.assertTrue(math.isclose(product.v, expected.v, rel_tol=1e-12))
        self.assertLessEqual(abs(h_sq_norm(h_exp(t1)) - 1.0), 1e-12)
        self.assertLessEqual(abs(h_sq_norm(-h_exp(t1)) - 1.0), 1e-12)


class TestLargePhases(unittest.TestCase):
    THETAS = (18.0, 19.0, 20.0, 50.0, 300.0, 700.0, -700.0)

    def test_squared_norm_stays_one(self) -> None:
        for theta in self.THETAS:
            with self.subTest(theta=theta):
                self.assertAlmostEqual(h_sq_norm(h_exp(theta)), 1.0, places=12)
                self.assertAlmostEqual(h_sq_norm(-3.0 * h_exp(theta)), 9.0, places=11)

    def test_polar_recovers_phase(self) -> None:
        for theta in self.THETAS:
            with self.subTest(theta=theta):
                polar = h_polar(h_exp(theta))
                self.assertEqual(polar.sign, 1)
                self.assertAlmostEqual(polar.modulus, 1.0, places=12)
                self.assertLessEqual(abs(polar.phase - theta), 1e-12 * max(1.0, abs(theta)))
                negative = h_polar(-h_exp(theta))
                self.assertEqual(negative.sign, -1)
                self.assertLessEqual(abs(negative.phase - theta), 1e-12 * max(1.0, abs(theta)))

    def test_phases_add_under_multiplication(self) -> None:
        for theta in self.THETAS:
            if abs(theta) > 300.0:
                continue
            with self.subTest(theta=theta):
                z = h_exp(theta)
                self.assertLessEqual(
                    abs(h_polar(z * z).phase - 2.0 * theta), 1e-12 * max(1.0, abs(theta))
                )

    def test_inverse(self) -> None:
        for theta in self.THETAS:
            with self.subTest(theta=theta):
                z = h_exp(theta)
                inverse = h_inverse(z)
                self.assertTrue(inverse.isclose(h_exp(-theta), abs_tol=0.0, rel_tol=1e-12))
                unit = z * inverse
                self.assertAlmostEqual(unit.u, 1.0, places=12)
                self.assertAlmostEqual(unit.v, 1.0, places=12)
                self.assertAlmostEqual(unit.real, 1.0, places=12)

    def test_light_cone_constructor(self) -> None:
        z = HyperbolicNumber.from_light_cone(3.0, 1.0)
        self.assertEqual(z, HyperbolicNumber(2.0, 1.0))
        self.assertEqual((z.u, z.v), (3.0, 1.0))
        self.assertEqual(z.conj().u, 1.0)


class TestBulkRandom(unittest.TestCase):
    """10**4 seeded inputs per property."""

    N = 10_000

    def setUp(self) -> None:
        self.rng = np.random.default_rng(20240611)

    def test_norm_multiplicativity(self) -> None:
        values = self.rng.uniform(-10.0, 10.0, size=(self.N, 4)).tolist()
        for x1, y1, x2, y2 in values:
            a, b = HyperbolicNumber(x1, y1), HyperbolicNumber(x2, y2)
            expected = a.sq_norm() * b.sq_norm()
            scale = (x1 * x1 + y1 * y1) * (x2 * x2 + y2 * y2)
            self.assertLessEqual(abs((a * b).sq_norm() - expected), 1e-12 * scale)

    def test_inverse(self) -> None:
        signs = self.rng.choice([-1.0, 1.0], size=self.N).tolist()
        moduli = self.rng.uniform(1e-2, 1e2, size=self.N).tolist()
        thetas = self.rng.uniform(-300.0, 300.0, size=self.N).tolist()
        for sign, modulus, theta in zip(signs, moduli, thetas):
            z = sign * modulus * h_exp(theta)
            unit = z * h_inverse(z)
            self.assertTrue(math.isclose(unit.u, 1.0, rel_tol=1e-12))
            self.assertTrue(math.isclose(unit.v, 1.0, rel_tol=1e-12))

    def test_polar_round_trip(self) -> None:
        xs = self.rng.uniform(-100.0, 100.0, size=self.N).tolist()
        ratios = self.rng.uniform(-0.9999, 0.9999, size=self.N).tolist()
        for x, ratio in zip(xs, ratios):
            if x == 0.0:
                continue
            z = HyperbolicNumber(x, ratio * abs(x))
            self.assertTrue(h_polar(z).reconstruct().isclose(z, abs_tol=1e-12, rel_tol=1e-10))

    def test_polar_of_scaled_unit(self) -> None:
        signs = self.rng.choice([-1, 1], size=self.N).tolist()
        moduli = self.rng.uniform(1e-2, 1e2, size=self.N).tolist()
        thetas = self.rng.uniform(-300.0, 300.0, size=self.N).tolist()
        for sign, modulus, theta in zip(signs, moduli, thetas):
            polar = h_polar(sign * modulus * h_exp(theta))
            self.assertEqual(polar.sign, sign)
            self.assertTrue(math.isclose(polar.modulus, modulus, rel_tol=1e-12))
            self.assertLessEqual(abs(polar.phase - theta), 1e-12 * max(1.0, abs(theta)))


if __name__ == "__main__":
    unittest.main()
