"""
Repository scanning for ccdep.
"""

from .discovery import ExtractorBinding, ScanConfig, default_bindings, list_supported_tools, scan_repository

__all__ = ["ExtractorBinding", "ScanConfig", "default_bindings", "list_supported_tools", "scan_repository"]
