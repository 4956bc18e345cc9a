#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Conan extractor.

Reads ``conanfile.txt`` / ``conaninfo.txt`` sections and mines
``conanfile.py`` recipes lexically; recipes are never executed, so
requirements computed at runtime are not found.
"""

import re
from pathlib import PurePosixPath
from typing import Optional, Tuple

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex, find_calls, mask_comments, string_literals


class ConanExtractor(BaseExtractor):
    """
    Extract Conan package references.

    References look like ``name/version[@user/channel][#rrev][:package_id]``;
    the version may be a bracketed range such as ``[>=1.2.11 <1.3]``.
    """

    tool = ToolKind.CONAN
    patterns = ("conanfile.*", "conaninfo.txt")

    TEXT_SECTIONS = frozenset({"requires", "build_requires", "tool_requires", "test_requires"})
    INFO_SECTIONS = frozenset({"requires"})
    RECIPE_ATTRIBUTES = ("requires", "build_requires", "tool_requires", "test_requires")

    _HEADER_RE = re.compile(r"^\[([A-Za-z0-9_.\-]+)\]$")
    _ATTRIBUTE_RE = re.compile(
        r"^[ \t]*(" + "|".join(RECIPE_ATTRIBUTES) + r")[ \t]*=[ \t]*", re.MULTILINE
    )
    _CALL_RE = re.compile(r"self\.(" + "|".join(RECIPE_ATTRIBUTES) + r")\s*\(")

    def parse(self, text: str, sink: RecordSink) -> None:
        name = PurePosixPath(sink.path).name
        if name.endswith(".py"):
            self._parse_recipe(text, sink)
        elif name == "conaninfo.txt":
            self._parse_sections(text, sink, self.INFO_SECTIONS)
        else:
            self._parse_sections(text, sink, self.TEXT_SECTIONS)

    def _parse_sections(self, text: str, sink: RecordSink, wanted) -> None:
        section: Optional[str] = None
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and "/" not in line.split("]", 1)[0]:
                header = self._HEADER_RE.match(line)
                if header:
                    section = header.group(1).lower()
                else:
                    sink.warn(number, f"malformed section header {line!r}; section skipped")
                    section = None
                continue
            if section in wanted:
                self._add_reference(line, number, sink)

    def _parse_recipe(self, text: str, sink: RecordSink) -> None:
        masked = mask_comments(text, line_comments=("#",), long_strings=(('"""', '"""'), ("'''", "'''")))
        index = LineIndex(masked)

        for match in self._ATTRIBUTE_RE.finditer(masked):
            expression = _assigned_expression(masked, match.end())
            for offset, value in string_literals(expression):
                self._add_reference(value, index.line_of(match.end() + offset), sink, strict=True)

        def unbalanced(offset, name):
            sink.warn(index.line_of(offset), f"unbalanced call to self.{name}")

        for call in find_calls(masked, self._CALL_RE, on_unbalanced=unbalanced):
            literals = list(string_literals(call.args))
            if literals:
                offset, value = literals[0]
                self._add_reference(value, index.line_of(call.args_start + offset), sink, strict=True)

    def _add_reference(self, reference: str, line: int, sink: RecordSink, strict: bool = False) -> None:
        parsed = parse_reference(reference)
        if parsed is None:
            if not strict:
                sink.warn(line, f"not a Conan reference: {reference!r}")
            return
        name, version = parsed
        sink.add(name, line, constraint=conan_constraint(version))


_REFERENCE_RE = re.compile(r"^([A-Za-z0-9_][A-Za-z0-9_.+\-]*)/(\[[^\]]*\]|[^@#:\s]+)")


def parse_reference(reference: str) -> Optional[Tuple[str, str]]:
    """Split a Conan reference into (name, version text)."""
    match = _REFERENCE_RE.match(reference.strip())
    if not match:
        return None
    return match.group(1), match.group(2)


def conan_constraint(version: str) -> VersionConstraint:
    # Semver-mode placeholders in conaninfo.txt ("1.Y.Z") pin nothing
    if re.search(r"\.[YZ](\.|$)", version):
        return VersionConstraint.unspecified(version)
    return VersionConstraint.parse(version)


def _assigned_expression(text: str, start: int) -> str:
    """Get the right-hand side of an assignment, following open brackets across lines."""
    depth = 0
    i = start
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in "\"'":
            j = i + 1
            while j < n and text[j] != ch and text[j] != "\n":
                j += 2 if text[j] == "\\" else 1
            i = j + 1
            continue
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == "\n" and depth <= 0:
            break
        i += 1
    return text[start:i]


def extract_conan(text, path):
    """Extract Conan requirements from ``conanfile.txt``, ``conanfile.py`` or ``conaninfo.txt``."""
    return ConanExtractor().extract(text, path)
