#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Clib extractor (``clib.json`` / clib-flavoured ``package.json``).
"""

import json
from pathlib import PurePosixPath

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import TokenLocator


class ClibExtractor(BaseExtractor):
    """
    Extract clib dependencies.

    Keys of ``dependencies`` (and ``development``) are ``owner/name``
    repositories mapped to a version; ``*`` means any version.
    """

    tool = ToolKind.CLIB
    patterns = ("package.json", "clib.json")

    DEPENDENCY_KEYS = ("dependencies", "development")

    # Keys only clib manifests carry; Node.js package.json files lack them
    CLIB_MARKERS = ("repo", "install")

    def accepts(self, path, text, siblings=()) -> bool:
        if PurePosixPath(str(path)).name == "clib.json":
            return True
        try:
            manifest = json.loads(text)
        except ValueError:
            return False
        return isinstance(manifest, dict) and any(key in manifest for key in self.CLIB_MARKERS)

    def parse(self, text: str, sink: RecordSink) -> None:
        try:
            manifest = json.loads(text)
        except ValueError as e:
            sink.warn(0, f"manifest is not well-formed JSON: {e}")
            return
        if not isinstance(manifest, dict):
            sink.warn(0, "manifest must contain a JSON object")
            return

        locator = TokenLocator(text)
        for key in self.DEPENDENCY_KEYS:
            dependencies = manifest.get(key)
            if dependencies is None:
                continue
            if not isinstance(dependencies, dict):
                sink.warn(0, f"'{key}' must map repositories to versions")
                continue
            for repository, version in dependencies.items():
                line = locator.line_of(repository)
                name = repository.rstrip("/").split("/")[-1]
                if not isinstance(version, str):
                    sink.warn(line, f"version of {repository!r} is not a string")
                    version = "*"
                constraint = VersionConstraint.parse(version)
                source_url = f"https://github.com/{repository}" if "/" in repository else None
                sink.add(name, line, constraint=constraint, source_url=source_url)


def extract_clib(text, path):
    """Extract dependencies from a clib manifest."""
    return ClibExtractor().extract(text, path)
