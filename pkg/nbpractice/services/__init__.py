"""
Analysis services for nbpractice
"""

from .check_service import CheckService
from .corpus_service import CorpusService
from .linter_bridge import LinterBridge
from .stats_service import StatsAccumulator

__all__ = ["CheckService", "CorpusService", "LinterBridge", "StatsAccumulator"]
