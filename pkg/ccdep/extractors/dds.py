#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
dds extractor (``package.json5``).
"""

import re

import json5

from ..model import ToolKind, Version, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import TokenLocator


_DEPENDENCY_RE = re.compile(r"^\s*([A-Za-z0-9_][A-Za-z0-9_.\-]*)\s*(?:([@^~=+])\s*(\S+))?\s*$")


class DdsExtractor(BaseExtractor):
    """
    Extract dds ``depends`` entries.

    Entries are ``name@1.2.3`` (exact), ``name^1.2.3`` (caret),
    ``name~1.2.3`` (tilde) or ``name+1.2.3`` (at least). Older manifests
    use a ``{name: range}`` object instead of a list.
    """

    tool = ToolKind.DDS
    patterns = ("package.json5",)

    def parse(self, text: str, sink: RecordSink) -> None:
        try:
            manifest = json5.loads(text)
        except ValueError as e:
            sink.warn(0, f"package.json5 is not well-formed: {e}")
            return
        if not isinstance(manifest, dict):
            sink.warn(0, "package.json5 must contain an object")
            return

        locator = TokenLocator(text)
        depends = manifest.get("depends")
        if isinstance(depends, dict):
            for name, spec in depends.items():
                line = locator.line_of(name, quoted=False)
                constraint = VersionConstraint.parse(spec) if isinstance(spec, str) else None
                sink.add(name, line, constraint=constraint)
        elif isinstance(depends, list):
            for entry in depends:
                if not isinstance(entry, str):
                    sink.warn(0, f"depends entry is not a string: {entry!r}")
                    continue
                line = locator.line_of(entry)
                parsed = parse_dependency(entry)
                if parsed is None:
                    sink.warn(line, f"malformed depends entry {entry!r}")
                    continue
                sink.add(parsed[0], line, constraint=parsed[1])
        elif depends is not None:
            sink.warn(0, "'depends' must be a list")


def parse_dependency(entry: str):
    """Parse ``name<op>version`` into (name, constraint), or None."""
    match = _DEPENDENCY_RE.match(entry)
    if not match:
        return None
    name, operator, version = match.groups()
    if operator is None:
        return name, VersionConstraint.unspecified()
    try:
        if operator in "@=":
            return name, VersionConstraint.exact(Version.parse(version), raw=version)
        if operator == "+":
            return name, VersionConstraint.at_least(Version.parse(version))
    except ValueError:
        return name, VersionConstraint.unspecified(version)
    return name, VersionConstraint.parse(f"{operator}{version}")


def extract_dds(text, path):
    """Extract dependencies from a dds ``package.json5``."""
    return DdsExtractor().extract(text, path)
