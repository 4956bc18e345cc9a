#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Library name cleaning and alias resolution for ccdep.

Different tools spell the same library differently (``zlib1g`` in Debian,
``ZLIB`` in CMake, ``gtest`` vs ``googletest``). Record-level names are
normalized per tool by :func:`ccdep.model.normalize_name`; this module adds
an optional alias table on top so analytics and evaluation can merge names
across tools.
"""

import logging
from pathlib import Path
from typing import Dict, Optional

logger = logging.getLogger(__name__)


class NameNormalizer:
    """
    Utility class for normalizing library names and applying aliases.
    """

    # Common spellings of popular libraries; only used when requested
    DEFAULT_ALIASES = {
        "gtest": "googletest",
        "gtest_main": "googletest",
        "gmock": "googletest",
        "zlib1g": "zlib",
        "z": "zlib",
        "ssl": "openssl",
        "crypto": "openssl",
        "libssl": "openssl",
        "png16": "png",
        "libpng": "png",
        "libcurl": "curl",
        "pthreads": "pthread",
        "glog": "google-glog",
        "gflags": "google-gflags",
        "com_google_absl": "abseil",
        "absl": "abseil",
        "com_google_googletest": "googletest",
        "com_google_protobuf": "protobuf",
    }

    def __init__(self, aliases: Optional[Dict[str, str]] = None, use_default_aliases: bool = False):
        """
        Initialize name normalizer.

        Args:
            aliases: Mapping from alias to canonical name
            use_default_aliases: Also apply DEFAULT_ALIASES (explicit aliases win)
        """
        self.aliases: Dict[str, str] = {}
        if use_default_aliases:
            self.aliases.update(self.DEFAULT_ALIASES)
        for alias, canonical in (aliases or {}).items():
            self.aliases[alias.strip().lower()] = canonical.strip().lower()

    @classmethod
    def from_file(cls, path: str, use_default_aliases: bool = False) -> "NameNormalizer":
        """
        Load an alias table from a text file of ``alias canonical`` lines.

        Blank lines and ``#`` comments are ignored; malformed lines are
        skipped with a warning.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        aliases = {}
        with open(path, "r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    logger.warning("%s:%d: expected 'alias canonical', got %r", path, number, line)
                    continue
                aliases[parts[0]] = parts[1]
        logger.debug("Loaded %d aliases from %s", len(aliases), Path(path).name)
        return cls(aliases=aliases, use_default_aliases=use_default_aliases)

    def canonical(self, library: str) -> str:
        """Get the canonical name of a normalized library name."""
        return self.aliases.get(library, library)
