#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Repository discovery for ccdep.

Walks a repository, matches file names against each tool's manifest
patterns and hands every match to the tool's extractor. A file that
matches several tools (``CMakeLists.txt`` for CMake, CPM and Hunter) is
extracted once per tool.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence, Tuple

from ..config import Config
from ..extractors import EXTRACTORS, BaseExtractor
from ..model import ExtractionWarning, Phase, ScanReport, ToolKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtractorBinding:
    """A tool, the filename patterns it owns and the extractor that reads them."""

    tool: ToolKind
    patterns: Tuple[str, ...]
    extractor: BaseExtractor
    case_insensitive: bool = False

    def matches(self, filename: str) -> bool:
        if self.case_insensitive:
            filename = filename.lower()
            return any(fnmatchcase(filename, pattern.lower()) for pattern in self.patterns)
        return any(fnmatchcase(filename, pattern) for pattern in self.patterns)


@dataclass
class ScanConfig:
    """
    Settings of one repository scan.

    Attributes:
        root: Repository directory
        ignore_dirs: Directory names never descended into
        follow_symlinks: Follow symlinked directories and files
        enabled_tools: Tools to run (None for all)
        max_file_bytes: Larger manifests are skipped and counted
        workers: Extraction threads
        repo_id: Report identifier (defaults to the root directory name)
        include_system_msbuild: Keep Windows SDK libraries in MSBuild output
    """

    root: Path
    ignore_dirs: FrozenSet[str] = Config.DEFAULT_IGNORE_DIRS
    follow_symlinks: bool = False
    enabled_tools: Optional[FrozenSet[ToolKind]] = None
    max_file_bytes: int = Config.DEFAULT_MAX_FILE_BYTES
    workers: int = Config.DEFAULT_WORKERS
    repo_id: Optional[str] = None
    include_system_msbuild: bool = False

    def __post_init__(self):
        self.root = Path(self.root)
        self.ignore_dirs = frozenset(self.ignore_dirs)
        if self.enabled_tools is not None:
            self.enabled_tools = frozenset(self.enabled_tools)
        if self.max_file_bytes <= 0:
            raise ValueError(f"max_file_bytes must be positive: {self.max_file_bytes}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1: {self.workers}")


@dataclass
class _ManifestJob:
    path: Path
    relative: str
    bindings: List[ExtractorBinding]
    siblings: Tuple[str, ...]


@dataclass
class _JobResult:
    records: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    tools: set = field(default_factory=set)


def default_bindings(include_system_msbuild: bool = False) -> Tuple[ExtractorBinding, ...]:
    """Get one binding per manifest tool, in tool order."""
    bindings = []
    for extractor_class in EXTRACTORS:
        kwargs = {}
        if extractor_class.tool is ToolKind.MSBUILD:
            kwargs["include_system"] = include_system_msbuild
        extractor = extractor_class(**kwargs)
        bindings.append(ExtractorBinding(
            tool=extractor.tool,
            patterns=tuple(extractor.patterns),
            extractor=extractor,
            case_insensitive=extractor.case_insensitive,
        ))
    return tuple(bindings)


def list_supported_tools(clone_db_configured: bool = False) -> List[Tuple[ToolKind, Tuple[str, ...], Phase]]:
    """
    List the supported tools with their filename patterns and phase.

    Args:
        clone_db_configured: Also list CloneSig, which needs a signature database

    Returns:
        List of (tool, patterns, phase)
    """
    tools = [(binding.tool, binding.patterns, binding.tool.phase) for binding in default_bindings()]
    if clone_db_configured:
        tools.append((ToolKind.CLONE_SIG, tuple(f"*{suffix}" for suffix in Config.CLONE_SOURCE_SUFFIXES), Phase.CLONE))
    return tools


def _check_root(root: Path) -> None:
    if not root.exists():
        raise FileNotFoundError(f"Repository root not found: {root}")
    if not root.is_dir():
        raise NotADirectoryError(f"Repository root is not a directory: {root}")


def _walk_error(error: OSError) -> None:
    logger.warning("Skipping unreadable directory %s: %s", error.filename, error.strerror or error)


def walk_files(root: Path, ignore_dirs=Config.DEFAULT_IGNORE_DIRS, follow_symlinks: bool = False):
    """
    Yield (directory, sorted file names) for every directory under ``root``.

    Directories are visited in sorted order, so the walk is deterministic.
    Ignored directories are pruned; symlinks are skipped unless followed.
    Directories that cannot be listed are logged and skipped.
    """
    for dirpath, dirnames, filenames in os.walk(root, onerror=_walk_error, followlinks=follow_symlinks):
        dirnames[:] = sorted(
            name for name in dirnames
            if name not in ignore_dirs and (follow_symlinks or not os.path.islink(os.path.join(dirpath, name)))
        )
        regular = []
        for name in sorted(filenames):
            full = os.path.join(dirpath, name)
            if not follow_symlinks and os.path.islink(full):
                continue
            if os.path.isfile(full):
                regular.append(name)
        yield Path(dirpath), regular


def scan_repository(config: ScanConfig, bindings: Optional[Sequence[ExtractorBinding]] = None) -> ScanReport:
    """
    Scan a repository for dependency declarations.

    Args:
        config: Scan settings
        bindings: Tool bindings to use (defaults to every supported tool)

    Returns:
        ScanReport with deduplicated records sorted by (path, line, tool)

    Raises:
        FileNotFoundError: If the root does not exist
        NotADirectoryError: If the root is not a directory
    """
    root = config.root
    _check_root(root)

    if bindings is None:
        bindings = default_bindings(config.include_system_msbuild)
    if config.enabled_tools is not None:
        bindings = [binding for binding in bindings if binding.tool in config.enabled_tools]

    repo_id = config.repo_id or root.resolve().name or str(root)
    logger.info("Scanning %s as %r with %d extractors", root, repo_id, len(bindings))

    jobs: List[_ManifestJob] = []
    warnings: List[ExtractionWarning] = []
    file_count = 0
    skipped_files = 0

    for directory, filenames in walk_files(root, config.ignore_dirs, config.follow_symlinks):
        for name in filenames:
            file_count += 1
            matched = [binding for binding in bindings if binding.matches(name)]
            if not matched:
                continue
            path = directory / name
            relative = path.relative_to(root).as_posix()
            try:
                size = path.stat().st_size
            except OSError as e:
                warnings.append(ExtractionWarning(relative, 0, f"could not stat file: {e}"))
                continue
            if size > config.max_file_bytes:
                logger.warning("Skipping %s: %d bytes exceeds the %d byte limit", relative, size, config.max_file_bytes)
                skipped_files += 1
                continue
            jobs.append(_ManifestJob(path, relative, matched, tuple(filenames)))

    logger.debug("%d files visited, %d manifests matched", file_count, len(jobs))

    # map() keeps job order, so the merge below does not depend on completion order
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        results = list(executor.map(_extract_job, jobs))

    records = []
    tools_found = set()
    for result in results:
        records.extend(result.records)
        warnings.extend(result.warnings)
        tools_found.update(result.tools)

    report = ScanReport.assemble(
        repo_id=repo_id,
        records=records,
        tools_found=tools_found,
        file_count=file_count,
        warnings=warnings,
        skipped_files=skipped_files,
    )
    logger.info("Found %d dependencies from %d tools in %r", len(report.records), len(report.tools_seen), repo_id)
    return report


def _extract_job(job: _ManifestJob) -> _JobResult:
    result = _JobResult()
    try:
        data = job.path.read_bytes()
    except OSError as e:
        result.warnings.append(ExtractionWarning(job.relative, 0, f"could not read file: {e}"))
        return result

    text = data.decode("utf-8", errors="replace")
    for binding in job.bindings:
        extractor = binding.extractor
        try:
            accepted = extractor.accepts(job.relative, text, job.siblings)
        except Exception as e:  # accept hooks sniff content and must not stop the scan
            result.warnings.append(ExtractionWarning(job.relative, 0, f"{binding.tool.value}: {e}"))
            continue
        if not accepted:
            continue
        result.tools.add(binding.tool)
        extracted = extractor.extract(text, job.relative)
        result.records.extend(extracted.records)
        result.warnings.extend(extracted.warnings)
    return result
