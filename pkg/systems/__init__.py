"""
Systems package for verification runs.
Contains certification, the sampling harness, run settings, reporting and
performance management.
"""

from .performance_manager import PerformanceManager
from .run_settings import RunConfig, RunSettings
from .report_manager import ReportManager

__all__ = [
    'PerformanceManager',
    'RunConfig',
    'RunSettings',
    'ReportManager',
]
