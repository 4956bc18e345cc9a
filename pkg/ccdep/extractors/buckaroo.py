#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Buckaroo extractor (``buckaroo.toml``).
"""

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import TokenLocator


class BuckarooExtractor(BaseExtractor):
    """
    Extract ``[[dependency]]`` tables.

    ``package`` is a location such as ``github.com/buckaroo-pm/boost``;
    the library is its last segment. ``version`` may be a version or a
    git selector like ``branch=master`` (kept raw, Unspecified).
    """

    tool = ToolKind.BUCKAROO
    patterns = ("buckaroo.toml",)

    def parse(self, text: str, sink: RecordSink) -> None:
        try:
            manifest = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            sink.warn(0, f"buckaroo.toml is not valid TOML: {e}")
            return

        dependencies = manifest.get("dependency", [])
        if isinstance(dependencies, dict):
            dependencies = [dependencies]
        if not isinstance(dependencies, list):
            sink.warn(0, "'dependency' must be an array of tables")
            return

        locator = TokenLocator(text)
        for table in dependencies:
            package = table.get("package") if isinstance(table, dict) else None
            if not isinstance(package, str) or not package.strip():
                sink.warn(0, f"dependency without a package: {table!r}")
                continue
            line = locator.line_of(package)
            name = package.strip().rstrip("/").split("/")[-1]
            version = table.get("version")
            constraint = VersionConstraint.parse(version) if isinstance(version, str) else None
            source_url = f"https://{package.strip()}" if "/" in package else None
            sink.add(name, line, constraint=constraint, source_url=source_url)


def extract_buckaroo(text, path):
    """Extract dependencies from ``buckaroo.toml``."""
    return BuckarooExtractor().extract(text, path)
