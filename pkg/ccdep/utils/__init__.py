"""
Utility modules for ccdep.
"""

from .io import ReportReader, ReportWriter
from .naming import NameNormalizer

__all__ = ["ReportReader", "ReportWriter", "NameNormalizer"]
