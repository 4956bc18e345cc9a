#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Debian control file extractor.

Dependency fields hold comma-separated relations; each relation may list
alternatives separated by ``|`` and qualify a package with a version
``(>= 1.0)``, architectures ``[amd64]`` and build profiles ``<!nocheck>``.
"""

import re
from typing import List, Tuple

from ..model import ToolKind, VersionConstraint
from .base import BaseExtractor, RecordSink
from .lexing import LineIndex


_FIELD_RE = re.compile(r"^([A-Za-z0-9][A-Za-z0-9\-]*)\s*:(.*)$")
_RELATION_RE = re.compile(
    r"^([a-z0-9][a-z0-9+.\-]*)(?::[a-z0-9\-]+)?\s*(?:\(\s*(<<|<=|=|>=|>>|<|>)\s*([^)]+?)\s*\))?\s*$"
)


class DebControlExtractor(BaseExtractor):
    """
    Extract runtime and build dependencies of a Debian ``control`` file.

    Every alternative of ``a | b`` becomes its own record. Substitution
    variables such as ``${shlibs:Depends}`` are skipped with a warning.
    """

    tool = ToolKind.DEB
    patterns = ("control",)

    DEPENDENCY_FIELDS = frozenset({
        "depends",
        "pre-depends",
        "build-depends",
        "build-depends-indep",
        "build-depends-arch",
    })

    def parse(self, text: str, sink: RecordSink) -> None:
        for field, lines in self._fields(text, sink):
            if field.lower() in self.DEPENDENCY_FIELDS:
                self._parse_relations(lines, sink)

    def _fields(self, text: str, sink: RecordSink):
        """Yield (field name, [(line number, text), ...]) with continuation lines attached."""
        current = None
        for number, line in enumerate(text.splitlines(), start=1):
            if line.startswith("#"):
                continue
            if not line.strip():
                if current:
                    yield current
                current = None
                continue
            if line[0] in " \t":
                if current is None:
                    sink.warn(number, "continuation line outside a field")
                    continue
                current[1].append((number, line.strip()))
                continue
            field = _FIELD_RE.match(line)
            if not field:
                sink.warn(number, f"malformed field line {line[:40]!r}")
                continue
            if current:
                yield current
            current = (field.group(1), [(number, field.group(2).strip())])
        if current:
            yield current

    def _parse_relations(self, lines: List[Tuple[int, str]], sink: RecordSink) -> None:
        joined = "\n".join(text for _, text in lines)
        index = LineIndex(joined)
        offset = 0
        for relation in joined.split(","):
            start = offset + (len(relation) - len(relation.lstrip()))
            offset += len(relation) + 1
            number = lines[index.line_of(start) - 1][0]
            for alternative in relation.split("|"):
                self._add_alternative(alternative, number, sink)

    @staticmethod
    def _add_alternative(alternative: str, line: int, sink: RecordSink) -> None:
        text = re.sub(r"\[[^\]]*\]|<[^<>()]*>", " ", alternative)
        text = " ".join(text.split())
        if not text:
            return
        if text.startswith("${"):
            sink.warn(line, f"substitution variable {text!r} skipped")
            return
        match = _RELATION_RE.match(text)
        if not match:
            sink.warn(line, f"malformed relation {text!r}")
            return
        name, operator, version = match.groups()
        constraint = None
        if operator:
            constraint = VersionConstraint.parse(f"{operator} {version}")
        sink.add(name, line, constraint=constraint)


def extract_deb_control(text, path):
    """Extract dependencies from a Debian ``control`` file."""
    return DebControlExtractor().extract(text, path)
