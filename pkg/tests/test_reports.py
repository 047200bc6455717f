"""
Tests for run settings and report rendering.
"""

import unittest
import sys
import os
import json
import tempfile
from unittest import mock
from fractions import Fraction

# Add the parent directory to the path so we can import the toolkit modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import DEFAULT_TRIALS, DEFAULT_GRID
from coefficients.class_ids import ClassId
from systems.harness import (BoundReport, TrialStats, STATUS_PASS, STATUS_REFUTED,
                             check_extremals, discrepancy_ledger, run_campaign, explore_true_h23)
from systems.performance_manager import PerformanceManager
from systems.report_manager import ReportManager, to_json_value, to_cell
from systems.run_settings import RunSettings, build_run_config
from utils.errors import UsageError

F = Fraction


class TestRunSettings(unittest.TestCase):
    """Test setting validation and overrides"""

    def setUp(self):
        """Set up test fixtures"""
        self.settings = RunSettings()

    def test_defaults(self):
        """Defaults come from config.py"""
        config = build_run_config()
        self.assertEqual(config.trials, DEFAULT_TRIALS)
        self.assertEqual(config.grid, DEFAULT_GRID)
        self.assertEqual(config.mode, "exact")
        self.assertIsNone(config.class_id)

    def test_overrides(self):
        """None means unset; other values replace defaults"""
        config = build_run_config(class_id=ClassId.SSL, trials=10, seed=None, output="csv")
        self.assertEqual(config.class_id, ClassId.SSL)
        self.assertEqual(config.trials, 10)
        self.assertEqual(config.output, "csv")

    def test_invalid_values(self):
        """Out-of-range values are rejected"""
        self.assertFalse(self.settings.set_setting("trials", 0))
        self.assertFalse(self.settings.set_setting("tol", 0.0))
        self.assertFalse(self.settings.set_setting("mode", "fast"))
        self.assertFalse(self.settings.set_setting("explore_true_h23", "yes"))
        self.assertTrue(self.settings.set_setting("tol", 1e-8))

    def test_invalid_override_is_usage_error(self):
        """Bad overrides raise with a hint"""
        with self.assertRaises(UsageError) as context:
            build_run_config(grid=8)
        self.assertIn("64", context.exception.example)
        with self.assertRaises(UsageError):
            build_run_config(colour="red")

    def test_invalid_override_is_reported_once(self):
        """A rejected override raises without also logging a warning"""
        with mock.patch("systems.run_settings.logger") as log:
            with self.assertRaises(UsageError):
                build_run_config(trials=0)
            with self.assertRaises(UsageError):
                build_run_config(workers="gpu")
        log.warning.assert_not_called()

    def test_worker_backend_setting(self):
        """Sampling runs on processes unless threads are asked for"""
        self.assertEqual(build_run_config().workers, "process")
        self.assertEqual(build_run_config(workers="thread").workers, "thread")


class TestReportRendering(unittest.TestCase):
    """Test JSON, CSV and Markdown output"""

    def setUp(self):
        """Set up test fixtures"""
        self.reports = [
            BoundReport("chi_e", F(1, 16), 0.0625, 0.0, STATUS_PASS,
                        group="SSe H21 of the inverse log", class_id=ClassId.SSE,
                        functional="h21_log_inverse", extremal="f1"),
            BoundReport("kappa_L", F(55, 4096), 0.01342975, 2e-6, STATUS_REFUTED,
                        group="SSL T21 of the log coefficients", published_value=F(55, 4096),
                        witness=(1.99, 1.0), note="edge x=1 | corrected", class_id=ClassId.SSL,
                        functional="t21_log", extremal="w = z(a+z)/(1+az), a^2 = 120/121",
                        sharp_value=F(13, 968)),
        ]
        self.stats = [
            TrialStats(ClassId.SSL, "t21_log", 10, 0.0156, None, 0, F(13, 968), 0.0,
                       lower=F(-1, 64), min_value=-0.015625, max_value=0.0134,
                       extremal="w = z(a+z)/(1+az), a^2 = 120/121 / g1"),
            TrialStats(ClassId.SSE, "h22_inverse", 10, 0.25, None, 0, F(1, 4), 0.0,
                       extremal="f1"),
        ]

    def test_scalar_conversion(self):
        """Rationals become 'p/q' strings"""
        self.assertEqual(to_json_value(F(3, 4)), "3/4")
        self.assertEqual(to_json_value(F(2)), "2")
        self.assertEqual(to_json_value(5), 5)
        self.assertEqual(to_json_value((F(1, 2), 0.5)), ["1/2", 0.5])
        self.assertEqual(to_cell(None), "")
        self.assertEqual(to_cell(F(-1, 64)), "-1/64")

    def test_bound_reports_json(self):
        """JSON has sorted keys and a status summary"""
        text = ReportManager("json").render_bound_reports(self.reports)
        document = json.loads(text)
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(document["summary"], {"pass": 1, "refuted": 1, "fail": 0})
        self.assertEqual(document["reports"][1]["published_value"], "55/4096")
        self.assertEqual(document["reports"][0]["claimed"], "1/16")
        self.assertEqual(text, json.dumps(document, sort_keys=True, indent=2) + "\n")

    def test_bound_reports_csv(self):
        """CSV starts with the report header"""
        lines = ReportManager("csv").render_bound_reports(self.reports).splitlines()
        self.assertEqual(lines[0], "id,claimed,computed,gap,status")
        self.assertTrue(lines[2].startswith("kappa_L,55/4096,"))

    def test_bound_reports_markdown(self):
        """Markdown has one table per theorem with the extremal function of each row"""
        text = ReportManager("markdown").render_bound_reports(self.reports)
        self.assertIn("## SSe H21 of the inverse log", text)
        self.assertIn("## SSL T21 of the log coefficients", text)
        self.assertEqual(text.count("| functional | class | sharp value | computed | extremal function"), 2)
        self.assertIn("| h21_log_inverse | SSe | 1/16 | ", text)
        self.assertIn("| t21_log | SSL | 13/968 | ", text)
        self.assertIn("a^2 = 120/121", text)
        self.assertIn("edge x=1 \\| corrected", text)

    def test_trial_stats(self):
        """Signed rows carry the lower end and the observed range"""
        document = json.loads(ReportManager("json").render_trial_stats(self.stats))
        row = document["stats"][0]
        self.assertEqual(row["lower"], "-1/64")
        self.assertEqual(row["bound"], "13/968")
        self.assertEqual(row["extremal"], "w = z(a+z)/(1+az), a^2 = 120/121 / g1")
        self.assertEqual(document["summary"]["pass"], 2)
        text = ReportManager("markdown").render_trial_stats(self.stats)
        self.assertIn("[-1/64, 13/968]", text)
        self.assertIn("## SSL", text)
        self.assertIn("| h22_inverse | SSe | 1/4 | 0.25 | f1 |", text)

    def test_json_reserializes_byte_identically(self):
        """Parsing a real report and dumping it again reproduces the text"""
        manager = PerformanceManager(threads=1, chunk_size=64)
        stats = run_campaign(ClassId.SSL, ["t21_log", "h22"], 120, 5, manager=manager)
        stats.append(explore_true_h23(ClassId.SSE, 60, 5, manager))
        texts = [
            ReportManager("json").render_bound_reports(check_extremals() + discrepancy_ledger()),
            ReportManager("json").render_trial_stats(stats),
        ]
        for text in texts:
            self.assertEqual(json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n", text)

    def test_expansion(self):
        """Expansions render one value per quantity"""
        manager = ReportManager("csv")
        text = manager.render_expansion({"class": "SSe"}, [("coefficients", [("a2", F(1, 2))])])
        self.assertEqual(text, "quantity,value\na2,1/2\n")

    def test_write(self):
        """Reports are written to files; unwritable paths return False"""
        manager = ReportManager("json")
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "nested", "report.json")
            self.assertTrue(manager.write("{}\n", path))
            with open(path, encoding="utf-8") as f:
                self.assertEqual(f.read(), "{}\n")
            blocker = os.path.join(directory, "file")
            with open(blocker, "w") as f:
                f.write("x")
            self.assertFalse(manager.write("{}\n", os.path.join(blocker, "report.json")))

    def test_unknown_format(self):
        """Only json, csv and markdown are supported"""
        with self.assertRaises(UsageError):
            ReportManager("xml")


if __name__ == '__main__':
    unittest.main()
