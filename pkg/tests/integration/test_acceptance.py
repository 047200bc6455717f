"""
Acceptance tests running whole toolkit commands.
"""

import unittest
import sys
import os
import io
import json
from contextlib import redirect_stdout, redirect_stderr
from fractions import Fraction

# Add the parent directory to the path so we can import the toolkit modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from config import MIN_GRID, EXIT_OK, FLOAT_AGREEMENT_TOLERANCE
from cli.commands import main
from coefficients.class_ids import ClassId
from coefficients.classes import coeffs_from_schwarz, solve_subordination
from coefficients.functionals import FUNCTIONALS
from coefficients.schwarz import SchwarzCoeffs
from coefficients.series import phi_series
from systems.certify import certify_all
from systems.harness import (run_campaign, bounded_functionals, get_bound, injected_inputs,
                             STATUS_FAIL, STATUS_REFUTED)
from systems.performance_manager import PerformanceManager


class TestCertifyCommand(unittest.TestCase):
    """Test the full certification run"""

    def test_certify_report(self):
        """Every claim passes or is refuted with a witness; nothing fails"""
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(["certify", "--grid", str(MIN_GRID)])
        self.assertEqual(code, EXIT_OK)

        document = json.loads(out.getvalue())
        self.assertEqual(document["summary"]["fail"], 0)
        refuted = sorted(row["id"] for row in document["reports"] if row["status"] == "refuted")
        self.assertEqual(refuted, ["delta_L", "kappa_L", "phi_e", "sse_a5:printed"])
        groups = {row["group"] for row in document["reports"]}
        theorems = {"SSe H21 of the inverse log", "SSe H22 of the inverse",
                    "SSe H23 of the inverse", "SSe T21 of the log coefficients",
                    "SSL H21 of the inverse log", "SSL H22", "SSL H23 of the inverse",
                    "SSL T21 of the log coefficients", "SSL T21 of the inverse log coefficients"}
        self.assertEqual(groups, theorems | {"auxiliary", "extremal", "discrepancy"})
        for row in document["reports"]:
            if row["group"] in theorems or row["group"] == "extremal":
                self.assertIn(row["class"], ("SSe", "SSL"), row["id"])
                self.assertTrue(row["functional"], row["id"])
                self.assertTrue(row["extremal"], row["id"])

    def test_certify_is_deterministic(self):
        """Two runs give the same values"""
        first = certify_all(grid=MIN_GRID)
        second = certify_all(grid=MIN_GRID)
        self.assertEqual([(r.id, r.computed, r.status) for r in first],
                         [(r.id, r.computed, r.status) for r in second])
        for report in first:
            self.assertNotEqual(report.status, STATUS_FAIL, report.id)
        self.assertEqual(sum(1 for r in first if r.status == STATUS_REFUTED), 3)


class TestSamplingAcceptance(unittest.TestCase):
    """Test campaigns over every bounded functional"""

    def test_every_bound_holds(self):
        """No sampled member violates a sharp bound on either class"""
        manager = PerformanceManager(threads=2, chunk_size=128)
        for class_id in ClassId:
            stats = run_campaign(class_id, bounded_functionals(class_id), 500, 42,
                                 manager=manager)
            for entry in stats:
                self.assertEqual(entry.violations, 0, f"{class_id.value}/{entry.functional}")

    def test_injected_trials_attain_every_bound(self):
        """The injected head of the stream reaches each sharp value to 1e-12"""
        manager = PerformanceManager(threads=1)
        for class_id in ClassId:
            n = len(injected_inputs(class_id))
            for entry in run_campaign(class_id, bounded_functionals(class_id), n, 42,
                                      manager=manager):
                label = f"{class_id.value}/{entry.functional}"
                bound = get_bound(class_id, entry.functional)
                if bound.lower is None:
                    self.assertAlmostEqual(entry.max_abs, float(bound.upper), delta=1e-12, msg=label)
                else:
                    self.assertAlmostEqual(entry.max_value, float(bound.upper), delta=1e-12, msg=label)
                    self.assertAlmostEqual(entry.min_value, float(bound.lower), delta=1e-12, msg=label)
                self.assertEqual(entry.extremal, bound.extremal_cell(), label)


class TestScalarModes(unittest.TestCase):
    """Test agreement of exact and float evaluation"""

    def test_float_matches_exact(self):
        """Float coefficients and functionals agree with exact ones"""
        exact = SchwarzCoeffs(*(Fraction(n, 7) for n in (3, -2, 1, 2)))
        floating = SchwarzCoeffs(*(complex(v) for v in exact.as_tuple()))
        for class_id in ClassId:
            a_exact = coeffs_from_schwarz(class_id, exact)
            a_float = coeffs_from_schwarz(class_id, floating)
            for e, f in zip(a_exact.as_tuple(), a_float.as_tuple()):
                self.assertLess(abs(complex(e) - f), FLOAT_AGREEMENT_TOLERANCE)
            for definition in FUNCTIONALS.values():
                self.assertLess(abs(complex(definition.evaluate(a_exact))
                                    - definition.evaluate(a_float)),
                                FLOAT_AGREEMENT_TOLERANCE, definition.key)

    def test_solver_in_float_mode(self):
        """The generic solver works on float series"""
        c = SchwarzCoeffs(0.3 + 0.1j, -0.2j, 0.1, 0.05)
        for class_id in ClassId:
            solved = solve_subordination(phi_series(class_id, 6, "float"), c.to_series(6))
            closed = coeffs_from_schwarz(class_id, c)
            for s, k in zip(solved.as_tuple(), closed.as_tuple()):
                self.assertLess(abs(s - k), FLOAT_AGREEMENT_TOLERANCE)


if __name__ == '__main__':
    unittest.main()
