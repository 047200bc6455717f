#!/usr/bin/env python3
"""
Test runner for the Sakaguchi coefficient-bound toolkit.

    python run_tests.py                  # unit and integration tests
    python run_tests.py --unit           # skip tests/integration
    python run_tests.py test_series ...  # selected modules only
"""

import argparse
import unittest
import sys
import os

ROOT = os.path.abspath(os.path.dirname(__file__))
TESTS_DIR = os.path.join(ROOT, 'tests')

# Add the repository root to the path so we can import the toolkit modules
sys.path.insert(0, ROOT)


def build_suite(modules, unit_only):
    loader = unittest.TestLoader()
    if modules:
        names = [m if m.startswith('tests.') else f'tests.{m}' for m in modules]
        return loader.loadTestsFromNames(names)

    suite = loader.discover(TESTS_DIR, pattern='test_*.py', top_level_dir=ROOT)
    if not unit_only:
        return suite

    def unit_tests(tests):
        for test in tests:
            if isinstance(test, unittest.TestSuite):
                yield from unit_tests(test)
            elif not type(test).__module__.startswith('tests.integration'):
                yield test

    return unittest.TestSuite(unit_tests(suite))


def run_all_tests(argv=None):
    """Run the selected tests and print a summary"""
    parser = argparse.ArgumentParser(description="Run the toolkit test suite")
    parser.add_argument('modules', nargs='*', help="test modules, e.g. test_series")
    parser.add_argument('--unit', action='store_true', help="skip integration tests")
    args = parser.parse_args(argv)

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(build_suite(args.modules, args.unit))

    print("\n" + "=" * 50)
    print("TEST SUMMARY")
    print("=" * 50)
    print(f"Tests run: {result.testsRun}")
    print(f"Failures: {len(result.failures)}")
    print(f"Errors: {len(result.errors)}")
    print(f"Skipped: {len(result.skipped)}")

    for title, problems in (("FAILURES", result.failures), ("ERRORS", result.errors)):
        if problems:
            print(f"\n{title}:")
            for test, traceback in problems:
                print(f"- {test}: {traceback}")

    if result.wasSuccessful():
        print("\nAll tests passed! ✅")
        return 0
    print("\nSome tests failed! ❌")
    return 1


if __name__ == '__main__':
    sys.exit(run_all_tests())
