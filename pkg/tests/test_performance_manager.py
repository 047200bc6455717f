"""
Tests for thread resolution, chunked execution and stage timings.
"""

import unittest
import sys
import os
from unittest import mock

# Add the parent directory to the path so we can import the toolkit modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import THREADS_ENV_VAR, DEFAULT_THREADS, DEFAULT_WORKER_BACKEND
from systems.performance_manager import PerformanceManager, resolve_thread_count, chunk_ranges
from utils.errors import UsageError


class TestThreadResolution(unittest.TestCase):
    """Test the worker count and its environment cap"""

    def test_default(self):
        """Without a request or cap the default applies"""
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(resolve_thread_count(), DEFAULT_THREADS)
            self.assertEqual(resolve_thread_count(6), 6)

    def test_environment_cap(self):
        """The environment variable caps requests"""
        with mock.patch.dict(os.environ, {THREADS_ENV_VAR: "2"}):
            self.assertEqual(resolve_thread_count(8), 2)
            self.assertEqual(resolve_thread_count(1), 1)
            self.assertEqual(resolve_thread_count(), 2)

    def test_invalid_environment_is_ignored(self):
        """Unparseable caps are logged and ignored"""
        with mock.patch.dict(os.environ, {THREADS_ENV_VAR: "many"}):
            self.assertEqual(resolve_thread_count(3), 3)
        with mock.patch.dict(os.environ, {THREADS_ENV_VAR: "0"}):
            self.assertEqual(resolve_thread_count(3), 3)


class TestChunkedExecution(unittest.TestCase):
    """Test chunk ranges and ordered results"""

    def test_chunk_ranges(self):
        """Consecutive half-open ranges covering 0..n-1"""
        self.assertEqual(chunk_ranges(5, 2), [(0, 2), (2, 4), (4, 5)])
        self.assertEqual(chunk_ranges(0, 4), [])

    def test_results_keep_chunk_order(self):
        """Parallel results come back in chunk order"""
        with mock.patch.dict(os.environ, {}, clear=True):
            manager = PerformanceManager(threads=4, chunk_size=3, backend="thread")
        results = manager.map_chunks(lambda start, stop: list(range(start, stop)), 10)
        self.assertEqual(results, [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9]])

    def test_process_pool_keeps_chunk_order(self):
        """The default process backend matches a serial run chunk for chunk"""
        self.assertEqual(DEFAULT_WORKER_BACKEND, "process")
        with mock.patch.dict(os.environ, {}, clear=True):
            manager = PerformanceManager(threads=3, chunk_size=4)
        self.assertEqual(manager.backend, "process")
        serial = PerformanceManager(threads=1, chunk_size=4)
        expected = [range(0, 4), range(4, 8), range(8, 11)]
        self.assertEqual(manager.map_chunks(range, 11), expected)
        self.assertEqual(serial.map_chunks(range, 11), expected)

    def test_unknown_backend_is_rejected(self):
        """Only process and thread pools exist"""
        with self.assertRaises(UsageError):
            PerformanceManager(threads=2, backend="gpu")

    def test_timings_accumulate(self):
        """Timed blocks add up under their label"""
        manager = PerformanceManager(threads=1)
        with manager.timed("stage"):
            pass
        with manager.timed("stage"):
            pass
        self.assertGreaterEqual(manager.elapsed("stage"), 0.0)
        self.assertEqual(list(manager.timings), ["stage"])
        self.assertEqual(manager.elapsed("missing"), 0.0)


if __name__ == '__main__':
    unittest.main()
