#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
build2 package manifest extractor.

The same ``manifest`` file serves two tools: a package published to and
fetched from cppget.org (Cppget, Install phase) and a project built with
build2 itself (Build2, Build phase). A manifest with a ``buildfile`` next to
it is attributed to Build2, otherwise to Cppget.
"""

import re

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink


_VALUE_RE = re.compile(r"^([A-Za-z][\w\-]*)\s*:\s*(.*)$")
_DEPENDENCY_RE = re.compile(r"^([A-Za-z0-9_+][A-Za-z0-9_+.\-]*)\s*(.*)$")

# Toolchain requirements, not libraries
TOOLCHAIN_PACKAGES = frozenset({"build2", "bpkg"})
BUILDFILES = frozenset({"buildfile", "build2file"})


class Build2ManifestExtractor(BaseExtractor):
    """
    Extract ``depends:`` values of a build2 manifest.

    Handles build-time (``*``) and conditional (``?``) markers,
    ``{a b}`` groups sharing one constraint, ``|`` alternatives, trailing
    ``; comments`` and ``? (condition)`` clauses.
    """

    tool = ToolKind.CPPGET
    patterns = ("manifest",)

    def accepts(self, path, text, siblings=()) -> bool:
        if not is_build2_manifest(text):
            return False
        beside_buildfile = any(name in BUILDFILES for name in siblings)
        return beside_buildfile == (self.tool is ToolKind.BUILD2)

    def parse(self, text: str, sink: RecordSink) -> None:
        for number, line in enumerate(text.splitlines(), start=1):
            match = _VALUE_RE.match(line.strip())
            if not match or match.group(1).lower() != "depends":
                continue
            for name, constraint in parse_depends_value(match.group(2)):
                if name in TOOLCHAIN_PACKAGES:
                    continue
                sink.add(name, number, constraint=constraint)


def is_build2_manifest(text: str) -> bool:
    """Check for the ``: 1`` format header or ``name:`` and ``version:`` values."""
    keys = set()
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if re.match(r"^:\s*1\s*$", stripped):
            return True
        match = _VALUE_RE.match(stripped)
        if match:
            keys.add(match.group(1).lower())
    return {"name", "version"} <= keys


def parse_depends_value(value: str):
    """
    Parse one ``depends:`` value.

    Returns:
        List of (name, constraint) pairs, one per alternative/group member
    """
    value = value.split(";", 1)[0]
    value = re.sub(r"\?\s*\([^)]*\)", " ", value)
    value = value.strip()
    value = value.lstrip("*?").strip()

    results = []
    for alternative in value.split("|"):
        alternative = alternative.strip()
        if not alternative:
            continue
        group = re.match(r"^\{([^}]*)\}\s*(.*)$", alternative)
        if group:
            names = group.group(1).split()
            constraint = VersionConstraint.parse(group.group(2)) if group.group(2).strip() else None
            results.extend((name, constraint) for name in names)
            continue
        match = _DEPENDENCY_RE.match(alternative)
        if not match:
            continue
        rest = match.group(2).strip()
        results.append((match.group(1), VersionConstraint.parse(rest) if rest else None))
    return results


class CppgetExtractor(Build2ManifestExtractor):
    tool = ToolKind.CPPGET


class Build2Extractor(Build2ManifestExtractor):
    tool = ToolKind.BUILD2


def extract_cppget(text, path):
    """Extract cppget.org package dependencies from a build2 ``manifest``."""
    return CppgetExtractor().extract(text, path)


def extract_build2(text, path):
    """Extract dependencies of a build2 project from its ``manifest``."""
    return Build2Extractor().extract(text, path)
