"""
Tests for coefficient extraction of SSe and SSL members.
"""

import unittest
import sys
import os
from fractions import Fraction

# Add the parent directory to the path so we can import the toolkit modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from coefficients.class_ids import ClassId
from coefficients.classes import (CoefficientVector, coeffs_from_schwarz,
                                  coeffs_from_caratheodory, coeffs_from_caratheodory_printed,
                                  solve_subordination, extremal_function, named_extremal)
from coefficients.schwarz import SchwarzCoeffs, caratheodory_from_schwarz, sample_schwarz, SamplerConfig
from coefficients.series import phi_series
from utils.errors import UsageError

F = Fraction


class TestExtremalFunctions(unittest.TestCase):
    """Test the members generated by w = z and w = z^2"""

    def test_f1(self):
        """f1 = SSe member of w = z^2"""
        class_id, a = named_extremal("f1")
        self.assertEqual(class_id, ClassId.SSE)
        self.assertEqual(a.as_tuple(), (0, F(1, 2), 0, F(1, 4)))

    def test_f2(self):
        """f2 = SSe member of w = z"""
        _, a = named_extremal("f2")
        self.assertEqual(a.as_tuple(), (F(1, 2), F(1, 4), F(5, 48), F(1, 24)))

    def test_g1(self):
        """g1 = SSL member of w = z^2"""
        _, a = named_extremal("g1")
        self.assertEqual(a.as_tuple(), (0, F(1, 4), 0, 0))

    def test_g2(self):
        """g2 = SSL member of w = z"""
        class_id, a = named_extremal("g2")
        self.assertEqual(class_id, ClassId.SSL)
        self.assertEqual(a.as_tuple(), (F(1, 4), F(-1, 16), F(1, 128), F(-1, 128)))

    def test_unknown_names(self):
        """Unknown extremal names and kinds are usage errors"""
        with self.assertRaises(UsageError):
            named_extremal("h1")
        with self.assertRaises(UsageError):
            extremal_function(ClassId.SSE, "w_z3")


class TestClosedForms(unittest.TestCase):
    """Test the closed forms against the generic subordination solver"""

    def setUp(self):
        """Set up test fixtures"""
        self.c = SchwarzCoeffs(F(1, 3), F(-1, 4), F(1, 5), F(1, 7))

    def test_schwarz_forms_match_solver(self):
        """Closed forms agree with e = phi(w) expansions"""
        for class_id in ClassId:
            expected = solve_subordination(phi_series(class_id, 8), self.c.to_series(8))
            self.assertEqual(coeffs_from_schwarz(class_id, self.c), expected)

    def test_caratheodory_forms_match_schwarz_forms(self):
        """Schwarz and Caratheodory routes give the same member"""
        p = caratheodory_from_schwarz(self.c)
        for class_id in ClassId:
            self.assertEqual(coeffs_from_caratheodory(class_id, p),
                             coeffs_from_schwarz(class_id, self.c))

    def test_printed_a5_differs(self):
        """The published SSe a5 form disagrees at p = (2, 2, 2, 2)"""
        p = caratheodory_from_schwarz(SchwarzCoeffs(1, 0, 0, 0))
        self.assertEqual(coeffs_from_caratheodory(ClassId.SSE, p).a5, F(1, 24))
        self.assertEqual(coeffs_from_caratheodory_printed(p).a5, F(-5, 24))
        self.assertEqual(coeffs_from_caratheodory_printed(p).a4,
                         coeffs_from_caratheodory(ClassId.SSE, p).a4)

    def test_float_mode(self):
        """Sampled members are evaluated in float arithmetic"""
        c, _ = sample_schwarz(SamplerConfig(seed=3), 5)
        a = coeffs_from_schwarz(ClassId.SSE, c)
        self.assertFalse(a.is_exact)
        self.assertEqual(a.to_series().scalar_mode, "float")

    def test_solver_preconditions(self):
        """phi(0) = 1, w(0) = 0 and order >= 4 are required"""
        phi = phi_series(ClassId.SSE, 8)
        with self.assertRaises(UsageError):
            solve_subordination(phi.scale(2), self.c.to_series(8))
        with self.assertRaises(UsageError):
            solve_subordination(phi, phi)
        with self.assertRaises(UsageError):
            solve_subordination(phi_series(ClassId.SSE, 3), self.c.to_series(3))


class TestCoefficientVector(unittest.TestCase):
    """Test the coefficient container"""

    def test_series_round_trip(self):
        """A vector and its normalized series carry the same coefficients"""
        a = CoefficientVector(F(1, 2), 1, F(-1, 3), 0)
        self.assertTrue(a.is_exact)
        self.assertEqual(CoefficientVector.from_series(a.to_series()), a)

    def test_from_series_needs_normalized(self):
        """Only z + a2 z^2 + ... converts"""
        with self.assertRaises(UsageError):
            CoefficientVector.from_series(phi_series(ClassId.SSE, 5))


if __name__ == '__main__':
    unittest.main()
