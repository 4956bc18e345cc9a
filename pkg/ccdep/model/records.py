#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Dependency records and per-repository scan reports.

A DependencyRecord is one dependency found in one place. A ScanReport
aggregates the records of a repository together with scan metadata and is
the unit that gets persisted and fed to analytics.
"""

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, FrozenSet, Iterable, Optional, Tuple

from ..config import Config
from .tools import Phase, ToolKind
from .version import VersionConstraint


_WHITESPACE_RE = re.compile(r"\s+")
_DEB_SUFFIXES = ("-dev", "-dbg")
_LIB_STRIP_TOOLS = frozenset({
    ToolKind.PKG_CONFIG,
    ToolKind.MSBUILD,
    ToolKind.CPPGET,
    ToolKind.BUILD2,
})


def _strip_lib_prefix(name: str) -> str:
    # "libm"/"librt" stay intact; "liblibfoo" is left alone so the rule is idempotent
    if len(name) > 4 and name.startswith("lib"):
        remainder = name[3:]
        if len(remainder) >= 2 and not remainder.startswith("lib"):
            return remainder
    return name


def _repository_name(location: str) -> str:
    location = location.strip().rstrip("/")
    while location.lower().endswith(".git"):
        location = location[:-4].rstrip("/")
    return re.split(r"[/:\\]", location)[-1]


def normalize_name(raw: str, tool: ToolKind) -> str:
    """
    Normalize a dependency name as written in a manifest.

    Names are lowercased and inner whitespace becomes ``-``. Tool-specific
    rules: GitSubmodule keeps the last URL/path segment without ``.git``;
    Deb drops ``-dev``/``-dbg`` suffixes and then a ``lib`` prefix; PkgConfig,
    MSBuild and build2 package names drop a ``lib`` prefix. Prefixes are only
    removed from names longer than four characters that keep at least two.

    Args:
        raw: Name as written
        tool: Tool the name was found in

    Returns:
        Normalized library name

    Raises:
        ValueError: If the name is empty or normalizes to nothing
    """
    if raw is None or not raw.strip():
        raise ValueError("Dependency name must not be empty")

    name = raw.strip()
    if tool is ToolKind.GIT_SUBMODULE:
        name = _repository_name(name)

    name = _WHITESPACE_RE.sub("-", name.strip()).lower()

    if tool is ToolKind.DEB:
        stripped = False
        while name.endswith(_DEB_SUFFIXES) and len(name) > 4:
            name = name[:-4]
            stripped = True
        if stripped:
            name = _strip_lib_prefix(name)
    elif tool in _LIB_STRIP_TOOLS:
        name = _strip_lib_prefix(name)

    if not name:
        raise ValueError(f"Dependency name {raw!r} normalizes to an empty string")
    return name


@dataclass(frozen=True, order=True)
class Evidence:
    """Where a dependency was found: repository-relative path and 1-based line."""

    path: str
    line: int = 0

    def __post_init__(self):
        if self.path.startswith("/") or re.match(r"^[A-Za-z]:[\\/]", self.path):
            raise ValueError(f"Evidence path must be relative to the repository: {self.path}")
        if self.line < 0:
            raise ValueError(f"Evidence line must be non-negative: {self.line}")

    def to_dict(self) -> Dict[str, Any]:
        return {"path": self.path, "line": self.line}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Evidence":
        return cls(path=data["path"], line=int(data.get("line", 0)))


@dataclass(frozen=True)
class ExtractionWarning:
    """A non-fatal problem found while reading one file."""

    path: str
    line: int
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {"path": self.path, "line": self.line, "message": self.message}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExtractionWarning":
        return cls(path=data["path"], line=int(data.get("line", 0)), message=data["message"])


@dataclass(frozen=True)
class DependencyRecord:
    """
    One extracted dependency.

    Attributes:
        library: Normalized library name
        raw_name: Name as written in the manifest
        constraint: Version constraint (Unspecified when none was given)
        tool: Tool whose manifest declared the dependency
        phase: Lifecycle phase, always the tool's phase
        evidence: File and line the dependency was found at
        source_url: Repository or archive URL for fetched sources
        system: True for OS-default libraries (pthread, m, kernel32, ...)
        components: Sub-components requested from the package (CMake COMPONENTS)
    """

    library: str
    raw_name: str
    constraint: VersionConstraint
    tool: ToolKind
    phase: Phase
    evidence: Evidence
    source_url: Optional[str] = None
    system: bool = False
    components: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.library or self.library != self.library.lower() or _WHITESPACE_RE.search(self.library):
            raise ValueError(f"Library name must be non-empty lowercase without whitespace: {self.library!r}")
        if self.phase is not self.tool.phase:
            raise ValueError(
                f"Record phase {self.phase.value} disagrees with {self.tool.value} phase {self.tool.phase.value}"
            )

    @classmethod
    def create(
        cls,
        raw_name: str,
        tool: ToolKind,
        evidence: Evidence,
        constraint: Optional[VersionConstraint] = None,
        source_url: Optional[str] = None,
        components: Iterable[str] = (),
        library: Optional[str] = None,
    ) -> "DependencyRecord":
        """
        Build a record from a raw manifest name.

        ``library`` overrides normalization for extractors that already know
        the canonical name (e.g. a pkg-config module found in a CMake file).

        Raises:
            ValueError: If the name is empty
        """
        library = library if library is not None else normalize_name(raw_name, tool)
        return cls(
            library=library,
            raw_name=raw_name.strip(),
            constraint=constraint if constraint is not None else VersionConstraint.unspecified(),
            tool=tool,
            phase=tool.phase,
            evidence=evidence,
            source_url=source_url,
            system=Config.is_system_library(library),
            components=tuple(components),
        )

    @property
    def sort_key(self):
        return (self.evidence.path, self.evidence.line, self.tool.value, self.library)

    @property
    def identity(self):
        """Uniqueness key within a report."""
        return (self.library, self.tool, self.evidence)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "library": self.library,
            "raw_name": self.raw_name,
            "constraint": self.constraint.to_dict(),
            "tool": self.tool.value,
            "phase": self.phase.value,
            "evidence": self.evidence.to_dict(),
            "source_url": self.source_url,
            "system": self.system,
            "components": list(self.components),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DependencyRecord":
        tool = ToolKind(data["tool"])
        return cls(
            library=data["library"],
            raw_name=data.get("raw_name") or data["library"],
            constraint=VersionConstraint.from_dict(data.get("constraint") or {}),
            tool=tool,
            phase=Phase(data.get("phase", tool.phase.value)),
            evidence=Evidence.from_dict(data["evidence"]),
            source_url=data.get("source_url"),
            system=bool(data.get("system", False)),
            components=tuple(data.get("components") or ()),
        )


def _now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class ScanReport:
    """
    Dependencies of one repository plus scan metadata.

    ``tools_seen`` includes tools whose manifests were found even if they
    declared nothing. Use :meth:`assemble` to build a report from raw
    extractor output; it deduplicates and sorts records.
    """

    repo_id: str
    scanned_at: datetime
    records: Tuple[DependencyRecord, ...]
    tools_seen: FrozenSet[ToolKind]
    file_count: int
    warnings: Tuple[ExtractionWarning, ...] = ()
    skipped_files: int = 0
    format_version: int = Config.REPORT_FORMAT_VERSION

    def __post_init__(self):
        if self.file_count < 0:
            raise ValueError(f"file_count must be non-negative: {self.file_count}")
        missing = {record.tool for record in self.records} - set(self.tools_seen)
        if missing:
            names = ", ".join(sorted(tool.value for tool in missing))
            raise ValueError(f"tools_seen is missing tools present in records: {names}")
        if len({record.identity for record in self.records}) != len(self.records):
            raise ValueError("Report contains duplicate (library, tool, evidence) records")

    @classmethod
    def assemble(
        cls,
        repo_id: str,
        records: Iterable[DependencyRecord],
        tools_found: Iterable[ToolKind] = (),
        file_count: int = 0,
        warnings: Iterable[ExtractionWarning] = (),
        skipped_files: int = 0,
        scanned_at: Optional[datetime] = None,
    ) -> "ScanReport":
        unique = {}
        for record in records:
            unique.setdefault(record.identity, record)
        ordered = tuple(sorted(unique.values(), key=lambda r: r.sort_key))
        tools = frozenset(tools_found) | {record.tool for record in ordered}
        return cls(
            repo_id=repo_id,
            scanned_at=scanned_at or _now(),
            records=ordered,
            tools_seen=frozenset(tools),
            file_count=file_count,
            warnings=tuple(sorted(warnings, key=lambda w: (w.path, w.line, w.message))),
            skipped_files=skipped_files,
        )

    def with_records(self, extra: Iterable[DependencyRecord], tools_found: Iterable[ToolKind] = ()) -> "ScanReport":
        """Get a copy of this report with more records merged in."""
        return ScanReport.assemble(
            repo_id=self.repo_id,
            records=list(self.records) + list(extra),
            tools_found=set(self.tools_seen) | set(tools_found),
            file_count=self.file_count,
            warnings=self.warnings,
            skipped_files=self.skipped_files,
            scanned_at=self.scanned_at,
        )

    def to_dict(self, include_timestamp: bool = True) -> Dict[str, Any]:
        data = {
            "format_version": self.format_version,
            "repo_id": self.repo_id,
            "scanned_at": self.scanned_at.isoformat() if include_timestamp else None,
            "file_count": self.file_count,
            "skipped_files": self.skipped_files,
            "tools_seen": sorted(tool.value for tool in self.tools_seen),
            "records": [record.to_dict() for record in self.records],
            "warnings": [warning.to_dict() for warning in self.warnings],
        }
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScanReport":
        """
        Rebuild a report from its serialized form.

        Raises:
            ValueError: If the document is not a supported report
        """
        version = data.get("format_version", Config.REPORT_FORMAT_VERSION)
        if version != Config.REPORT_FORMAT_VERSION:
            raise ValueError(f"Unsupported report format version: {version}")
        if "repo_id" not in data or "records" not in data:
            raise ValueError("Report document needs 'repo_id' and 'records'")
        scanned_at = data.get("scanned_at")
        return cls(
            repo_id=data["repo_id"],
            scanned_at=datetime.fromisoformat(scanned_at) if scanned_at else _now(),
            records=tuple(DependencyRecord.from_dict(r) for r in data["records"]),
            tools_seen=frozenset(ToolKind(t) for t in data.get("tools_seen", ())),
            file_count=int(data.get("file_count", 0)),
            warnings=tuple(ExtractionWarning.from_dict(w) for w in data.get("warnings", ())),
            skipped_files=int(data.get("skipped_files", 0)),
            format_version=version,
        )
