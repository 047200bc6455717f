"""
Performance Management System for parallel sampling and timing bookkeeping.
Resolves the worker count, runs chunked work units on a process or thread pool
and keeps elapsed-time records for every stage of a run.
"""

import os
import time
import logging
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List, Optional, Tuple, TypeVar

from config import (CHUNK_SIZE, THREADS_ENV_VAR, DEFAULT_THREADS, WORKER_BACKENDS,
                    DEFAULT_WORKER_BACKEND)
from utils.errors import UsageError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def resolve_thread_count(requested: Optional[int] = None) -> int:
    """Worker count from the request and the environment cap"""
    cap = None
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is not None:
        try:
            cap = int(raw)
            if cap < 1:
                raise ValueError(raw)
        except ValueError:
            logger.warning(f"Ignoring invalid {THREADS_ENV_VAR}={raw!r}")
            cap = None

    if requested is None:
        return cap if cap is not None else DEFAULT_THREADS
    if requested < 1:
        logger.warning(f"Thread count {requested} raised to 1")
        requested = 1
    return min(requested, cap) if cap is not None else requested


def chunk_ranges(n: int, chunk_size: int = CHUNK_SIZE) -> List[Tuple[int, int]]:
    """Split 0..n-1 into consecutive [start, stop) ranges"""
    return [(start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]


class PerformanceManager:
    """Runs chunked work deterministically and records stage timings

    The "process" backend needs a picklable work callable (a module-level
    function or a functools.partial of one); "thread" accepts any callable.
    """

    def __init__(self, threads: Optional[int] = None, chunk_size: int = CHUNK_SIZE,
                 backend: str = DEFAULT_WORKER_BACKEND):
        if backend not in WORKER_BACKENDS:
            raise UsageError(f"unknown worker backend {backend!r}",
                             example=" | ".join(WORKER_BACKENDS))
        self.threads = resolve_thread_count(threads)
        self.chunk_size = max(1, chunk_size)
        self.backend = backend
        self.timings: Dict[str, float] = {}
        logger.info(f"Performance Manager initialized: {self.threads} {backend} worker(s), "
                    f"chunk size {self.chunk_size}")

    def _executor(self) -> Executor:
        if self.backend == "process":
            try:
                return ProcessPoolExecutor(max_workers=self.threads)
            except (OSError, NotImplementedError) as e:
                logger.warning(f"Process pool unavailable ({e}); using threads")
        return ThreadPoolExecutor(max_workers=self.threads)

    def map_chunks(self, work: Callable[[int, int], T], n: int) -> List[T]:
        """Apply work(start, stop) to every chunk of 0..n-1; results come back in chunk order"""
        ranges = chunk_ranges(n, self.chunk_size)
        if self.threads == 1 or len(ranges) <= 1:
            return [work(start, stop) for start, stop in ranges]

        starts = [start for start, _ in ranges]
        stops = [stop for _, stop in ranges]
        with self._executor() as executor:
            return list(executor.map(work, starts, stops))

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        """Accumulate the wall time of a block under a label"""
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings[label] = self.timings.get(label, 0.0) + elapsed
            logger.debug(f"{label}: {elapsed:.3f}s")

    def elapsed(self, label: str) -> float:
        return self.timings.get(label, 0.0)

    def log_summary(self) -> None:
        """Log every recorded stage"""
        total = sum(self.timings.values())
        logger.info(f"Performance - {len(self.timings)} stage(s), {total:.3f}s total")
        for label, seconds in sorted(self.timings.items(), key=lambda item: -item[1]):
            logger.info(f"  {label}: {seconds:.3f}s")
