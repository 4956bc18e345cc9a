#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Signature database builder for ccdep.

Hashes every function of each third-party library source tree into a
:class:`SignatureDB` used by clone detection.

Sources manifest format: one ``<library> <path>`` pair per line, paths
relative to the manifest's directory; blank lines and ``#`` comments are
ignored.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Set, Tuple, Union

from ..config import Config
from ..model import ToolKind, normalize_name
from ..scanner.discovery import walk_files
from .signatures import SignatureDB, hash_source

logger = logging.getLogger(__name__)


def source_files(root: Path) -> List[Path]:
    """List C/C++ source and header files under ``root`` in walk order."""
    files = []
    for directory, filenames in walk_files(root, Config.DEFAULT_IGNORE_DIRS):
        files.extend(directory / name for name in filenames if name.lower().endswith(Config.CLONE_SOURCE_SUFFIXES))
    return files


def hash_file(path: Path) -> List[str]:
    """Get the signature digests of one source file (empty if unreadable)."""
    try:
        text = path.read_bytes().decode("utf-8", errors="replace")
    except OSError as e:
        logger.warning("Could not read %s: %s", path, e)
        return []
    return [signature.hash for _, signature in hash_source(text)]


class SignatureDatabaseBuilder:
    """
    Builder turning library source trees into a signature database.
    """

    def __init__(self, sources: Iterable[Tuple[str, Union[str, Path]]], workers: int = Config.DEFAULT_WORKERS):
        """
        Initialize signature database builder.

        Args:
            sources: (library name, source tree) pairs; repeated names are merged
            workers: Hashing threads
        """
        self.sources = [(name, Path(path)) for name, path in sources]
        self.workers = workers

    def build(self) -> SignatureDB:
        """
        Hash all sources.

        Libraries without any function above the noise guard are skipped
        with a warning.

        Returns:
            SignatureDB
        """
        collected: Dict[str, Set[str]] = {}
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            for name, root in self.sources:
                library = normalize_name(name, ToolKind.CLONE_SIG)
                if not root.is_dir():
                    logger.warning("Skipping %s: source tree %s is not a directory", library, root)
                    continue
                digests = collected.setdefault(library, set())
                for file_digests in executor.map(hash_file, source_files(root)):
                    digests.update(file_digests)
                logger.debug("%s: %d distinct functions", library, len(digests))

        for library in sorted(collected):
            if not collected[library]:
                logger.warning("Skipping %s: no extractable functions", library)
        db = SignatureDB.from_signatures(collected)
        logger.info("Built signature database with %d libraries", len(db))
        return db


def build_signature_db(sources: Iterable[Tuple[str, Union[str, Path]]], workers: int = Config.DEFAULT_WORKERS) -> SignatureDB:
    """Build a signature database from (library name, source tree) pairs."""
    return SignatureDatabaseBuilder(sources, workers=workers).build()


def read_sources_manifest(path: Union[str, Path]) -> List[Tuple[str, Path]]:
    """
    Read a sources manifest.

    Returns:
        (library name, absolute source path) pairs in file order

    Raises:
        FileNotFoundError: If the manifest does not exist
        ValueError: If a line is not ``<library> <path>``
    """
    path = Path(path)
    base = path.parent
    sources = []
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ValueError(f"{path}:{number}: expected '<library> <path>', got {line!r}")
            name, location = parts
            sources.append((name, (base / location.strip()).resolve()))
    return sources
