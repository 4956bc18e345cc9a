#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Clone detection against a signature database.

A repository reuses a library by copying its code when at least
``threshold`` of the library's distinct function signatures occur in the
repository's own sources.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Set, Tuple, Union

from ..config import Config
from ..model import DependencyRecord, Evidence, ToolKind
from ..scanner.discovery import walk_files
from .signatures import SignatureDB, hash_source

logger = logging.getLogger(__name__)

# Ratios are compared with this slack so 1/10 passes a 0.10 threshold
_RATIO_EPSILON = 1e-12


@dataclass(frozen=True)
class CloneMatch:
    """
    Share of a library's functions found in a repository.

    Attributes:
        library: Library name from the signature database
        matched: Distinct library signatures present in the repository
        total: Distinct signatures of the library
        ratio: matched / total
        evidence: First (path, line) where a matching function was found
    """

    library: str
    matched: int
    total: int
    ratio: float
    evidence: Evidence

    def __post_init__(self):
        if not 0 < self.matched <= self.total:
            raise ValueError(f"Clone match needs 0 < matched <= total, got {self.matched}/{self.total}")
        if abs(self.ratio - self.matched / self.total) > _RATIO_EPSILON:
            raise ValueError(f"Clone ratio {self.ratio} disagrees with {self.matched}/{self.total}")

    def to_record(self) -> DependencyRecord:
        return DependencyRecord.create(raw_name=self.library, tool=ToolKind.CLONE_SIG, evidence=self.evidence)


def _hash_repository_file(job: Tuple[Path, str]) -> Tuple[str, List[Tuple[int, str]]]:
    path, relative = job
    try:
        text = path.read_bytes().decode("utf-8", errors="replace")
    except OSError as e:
        logger.warning("Could not read %s: %s", relative, e)
        return relative, []
    return relative, [(line, signature.hash) for line, signature in hash_source(text)]


class CloneDetector:
    """
    Query interface matching repository code against a signature database.
    """

    def __init__(
        self,
        db: SignatureDB,
        threshold: float = Config.CLONE_THRESHOLD_DEFAULT,
        ignore_dirs=Config.DEFAULT_IGNORE_DIRS,
        workers: int = Config.DEFAULT_WORKERS,
    ):
        """
        Initialize clone detector.

        Args:
            db: Signature database
            threshold: Minimum matched/total ratio for a library to count
            ignore_dirs: Directory names skipped in the repository
            workers: Hashing threads

        Raises:
            RuntimeError: If the database is empty
            ValueError: If threshold is outside [0, 1]
        """
        if len(db) == 0:
            raise RuntimeError("Clone detection needs a non-empty signature database")
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"Clone threshold must be within [0, 1]: {threshold}")
        self.db = db
        self.threshold = threshold
        self.ignore_dirs = frozenset(ignore_dirs)
        self.workers = workers
        self._owners = db.owners()

    def detect(self, repo_root: Union[str, Path]) -> List[CloneMatch]:
        """
        Find libraries whose code is copied into a repository.

        Returns:
            CloneMatch per library at or above the threshold, sorted by library
        """
        root = Path(repo_root)
        if not root.is_dir():
            raise NotADirectoryError(f"Repository root is not a directory: {root}")

        jobs = []
        for directory, filenames in walk_files(root, self.ignore_dirs):
            for name in filenames:
                if name.lower().endswith(Config.CLONE_SOURCE_SUFFIXES):
                    path = directory / name
                    jobs.append((path, path.relative_to(root).as_posix()))

        matched: Dict[str, Set[str]] = {}
        first_seen: Dict[str, Tuple[str, int]] = {}
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            for relative, signatures in executor.map(_hash_repository_file, jobs):
                for line, digest in signatures:
                    for library in self._owners.get(digest, ()):
                        matched.setdefault(library, set()).add(digest)
                        location = (relative, line)
                        if library not in first_seen or location < first_seen[library]:
                            first_seen[library] = location

        matches = []
        for library in sorted(matched):
            total = self.db.libraries[library].total
            count = len(matched[library])
            ratio = count / total
            if ratio + _RATIO_EPSILON >= self.threshold:
                path, line = first_seen[library]
                matches.append(CloneMatch(library, count, total, ratio, Evidence(path, line)))
        logger.info("%d of %d libraries matched in %s", len(matches), len(self.db), root)
        return matches


def detect_clones(
    repo_root: Union[str, Path],
    db: SignatureDB,
    threshold: float = Config.CLONE_THRESHOLD_DEFAULT,
    ignore_dirs=Config.DEFAULT_IGNORE_DIRS,
    workers: int = Config.DEFAULT_WORKERS,
) -> List[CloneMatch]:
    """Find libraries of ``db`` copied into ``repo_root``."""
    return CloneDetector(db, threshold=threshold, ignore_dirs=ignore_dirs, workers=workers).detect(repo_root)


def clone_records(matches: List[CloneMatch]) -> List[DependencyRecord]:
    """Turn clone matches into CloneSig dependency records."""
    return [match.to_record() for match in matches]
