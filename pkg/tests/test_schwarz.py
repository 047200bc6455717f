"""
Tests for Schwarz and Caratheodory coefficient models and their samplers.
"""

import unittest
import sys
import os
import math
from fractions import Fraction

# Add the parent directory to the path so we can import the toolkit modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from coefficients.schwarz import (SchwarzCoeffs, CaratheodoryCoeffs, SamplerConfig,
                                  validate_schwarz, validate_caratheodory,
                                  caratheodory_from_schwarz, schwarz_from_caratheodory,
                                  libera_expand, mobius_coefficients, inner_map_coefficients,
                                  sample_schwarz, sample_caratheodory, sample_libera)
from utils.errors import UsageError


class TestSchwarzValidity(unittest.TestCase):
    """Test the necessary coefficient inequalities"""

    def test_identity_and_square_are_valid(self):
        """w = z and w = z^2 satisfy every inequality"""
        self.assertTrue(validate_schwarz(SchwarzCoeffs(1, 0, 0, 0)).passed)
        self.assertTrue(validate_schwarz(SchwarzCoeffs(0, 1, 0, 0)).passed)

    def test_violation_is_reported(self):
        """|c1| = 1 forces the remaining coefficients to vanish"""
        verdict = validate_schwarz(SchwarzCoeffs(1, Fraction(1, 2), 0, 0))
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.violations[0][0], "|c2| <= 1-|c1|^2")
        self.assertLess(verdict.violations[0][1], 0)

    def test_integers_promote_to_fractions(self):
        """Integer input stays in exact arithmetic"""
        c = SchwarzCoeffs(1, 0, 0, 0)
        self.assertIsInstance(c.c1, Fraction)
        self.assertEqual(c.to_series().scalar_mode, "exact")

    def test_caratheodory_bound(self):
        """|p_n| <= 2"""
        self.assertTrue(validate_caratheodory(CaratheodoryCoeffs(2, 2, 2, 2)).passed)
        self.assertFalse(validate_caratheodory(CaratheodoryCoeffs(3, 0, 0, 0)).passed)


class TestCaratheodoryConversion(unittest.TestCase):
    """Test the substitution p = (1 + w)/(1 - w)"""

    def test_identity_maps_to_two(self):
        """w = z gives p = (1 + z)/(1 - z) with every p_n = 2"""
        p = caratheodory_from_schwarz(SchwarzCoeffs(1, 0, 0, 0))
        self.assertEqual(p.as_tuple(), (2, 2, 2, 2))

    def test_round_trip(self):
        """w -> p -> w is the identity"""
        c = SchwarzCoeffs(Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5), Fraction(1, 7))
        self.assertEqual(schwarz_from_caratheodory(caratheodory_from_schwarz(c)), c)


class TestLiberaExpansion(unittest.TestCase):
    """Test the expansion of p2, p3, p4 in p1 and disk parameters"""

    def test_boundary_p1_ignores_parameters(self):
        """p1 = 2 forces p = (1 + z)/(1 - z)"""
        p = libera_expand(2, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
        self.assertEqual(p.as_tuple(), (2, 2, 2, 2))

    def test_zero_p1(self):
        """p1 = 0, xi = 1 gives p = (1 + z^2)/(1 - z^2)"""
        p = libera_expand(0, 1, 0, 0)
        self.assertEqual(p.as_tuple(), (0, 2, 0, 2))
        self.assertEqual(p.t, 4)

    def test_expansion_is_caratheodory(self):
        """Expanded coefficients come from a Schwarz function"""
        p = libera_expand(Fraction(1, 2), Fraction(1, 3), Fraction(-1, 2), Fraction(1, 5))
        self.assertTrue(validate_caratheodory(p).passed)
        self.assertTrue(validate_schwarz(schwarz_from_caratheodory(p)).passed)

    def test_preconditions(self):
        """p1 must lie in [0, 2] and parameters in the closed disk"""
        with self.assertRaises(UsageError):
            libera_expand(3)
        with self.assertRaises(UsageError):
            libera_expand(1, xi=2)
        with self.assertRaises(UsageError):
            libera_expand(1j)


class TestSamplers(unittest.TestCase):
    """Test the seeded coefficient samplers"""

    def setUp(self):
        """Set up test fixtures"""
        self.config = SamplerConfig(kind="blaschke_mix", seed=7)

    def test_mobius_coefficients(self):
        """(a + z)/(1 + a z) = a + (1 - a^2) z - a (1 - a^2) z^2 + ..."""
        coefficients = mobius_coefficients(0.5)
        self.assertAlmostEqual(coefficients[0], 0.5)
        self.assertAlmostEqual(coefficients[1], 0.75)
        self.assertAlmostEqual(coefficients[2], -0.375)

    def test_inner_map_without_factors_is_rotation(self):
        """No Möbius factors leaves w = e^{i theta} z"""
        c = inner_map_coefficients([], math.pi / 2)
        self.assertAlmostEqual(c[0], 1j)
        self.assertAlmostEqual(abs(c[1]) + abs(c[2]) + abs(c[3]), 0.0)

    def test_streams_are_deterministic(self):
        """A (seed, index) pair always gives the same draw"""
        first, _ = sample_schwarz(self.config, 11)
        second, _ = sample_schwarz(self.config, 11)
        other, _ = sample_schwarz(self.config, 12)
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)

    def test_samples_are_feasible(self):
        """Every sampler yields admissible coefficients"""
        for index in range(200):
            c, w = sample_schwarz(self.config, index)
            self.assertTrue(validate_schwarz(c, tol=1e-9).passed, c)
            self.assertEqual(w.scalar_mode, "float")

            p = sample_caratheodory(SamplerConfig(kind="herglotz_mix", seed=7), index)
            self.assertTrue(validate_caratheodory(p, tol=1e-9).passed, p)

            p = sample_libera(SamplerConfig(kind="libera", seed=7), index)
            self.assertTrue(validate_caratheodory(p, tol=1e-9).passed, p)
            self.assertGreaterEqual(p.p1.real, 0.0)

    def test_libera_draws_are_schwarz(self):
        """A thousand Libera draws all map back to admissible Schwarz coefficients"""
        config = SamplerConfig(kind="libera", seed=11)
        for index in range(1000):
            p = sample_libera(config, index)
            verdict = validate_schwarz(schwarz_from_caratheodory(p), tol=1e-9)
            self.assertTrue(verdict.passed, (index, verdict.violations))

    def test_blaschke_draws_reach_the_boundary(self):
        """|c1| and |c2| / (1 - |c1|^2) both come within 5% of their ceiling"""
        top_c1 = 0.0
        top_ratio = 0.0
        for index in range(1000):
            c, _ = sample_schwarz(self.config, index)
            m1, m2 = abs(c.c1), abs(c.c2)
            top_c1 = max(top_c1, m1)
            if 1 - m1 * m1 > 1e-9:
                top_ratio = max(top_ratio, m2 / (1 - m1 * m1))
        self.assertGreaterEqual(top_c1, 0.95)
        self.assertGreaterEqual(top_ratio, 0.95)

    def test_config_validation(self):
        """Unknown kinds and out-of-range parameters are rejected"""
        with self.assertRaises(UsageError):
            SamplerConfig(kind="uniform")
        with self.assertRaises(UsageError):
            SamplerConfig(atoms=0)
        with self.assertRaises(UsageError):
            SamplerConfig(seed=-1)
        with self.assertRaises(UsageError):
            sample_caratheodory(self.config, 0)


if __name__ == '__main__':
    unittest.main()
