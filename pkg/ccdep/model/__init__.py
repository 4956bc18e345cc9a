"""
Domain model shared by every ccdep component.
"""

from .tools import Phase, ToolchainClass, ToolKind
from .version import (
    ConstraintKind,
    Version,
    VersionConstraint,
    compare_versions,
    constraint_contains,
)
from .records import (
    DependencyRecord,
    Evidence,
    ExtractionWarning,
    ScanReport,
    normalize_name,
)

__all__ = [
    "Phase",
    "ToolchainClass",
    "ToolKind",
    "ConstraintKind",
    "Version",
    "VersionConstraint",
    "compare_versions",
    "constraint_contains",
    "DependencyRecord",
    "Evidence",
    "ExtractionWarning",
    "ScanReport",
    "normalize_name",
]
