#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Makefile extractor.

Make has no dependency declarations of its own; libraries show up as
``-l`` linker flags and as ``pkg-config`` command substitutions.
"""

import re
from typing import Iterator, Set, Tuple

from ..model import ToolKind
from .base import BaseExtractor, RecordSink
from .pkgconfig import pkgconfig_library


_ASSIGNMENT_RE = re.compile(
    r"^(?:[^:=#\t][^:=#]*:\s*)?(?:(?:export|override|private)\s+)*[A-Za-z0-9_.\-]+\s*(?:::=|:=|\?=|\+=|!=|=)"
)
_LINKER_RE = re.compile(
    r"\$[({](?:CC|CXX|LD|LINK\w*|CCLD|CXXLD)[)}]|(?<![\w\-])(?:gcc|g\+\+|clang\+\+|clang|cc|c\+\+|ld|ld\.lld|ld\.gold)(?![\w\-])"
)
_LINK_FLAG_RE = re.compile(r"""(?:^|(?<=[\s'"=]))-l([A-Za-z0-9_+][A-Za-z0-9_+.\-]*)""")
_PKG_CONFIG_RE = re.compile(r"pkg-config((?:\s+[^\s)`;|&]+)+)")


def logical_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Yield (first line number, text) with backslash continuations joined and comments removed."""
    buffer = []
    start = 0
    for number, line in enumerate(text.splitlines(), start=1):
        if not buffer:
            start = number
        line = re.sub(r"(?<!\\)#.*$", "", line)
        if line.endswith("\\"):
            buffer.append(line[:-1])
            continue
        buffer.append(line)
        yield start, " ".join(buffer)
        buffer = []
    if buffer:
        yield start, " ".join(buffer)


def pkg_config_modules(line: str) -> Iterator[str]:
    """Yield module names passed to ``pkg-config --libs``/``--cflags`` in one line."""
    for match in _PKG_CONFIG_RE.finditer(line):
        arguments = match.group(1).split()
        if not any(arg.startswith(("--libs", "--cflags")) for arg in arguments):
            continue
        for arg in (a.strip("\"'") for a in arguments):
            if not arg or arg.startswith("-") or re.match(r"^(?:<=|>=|=|<|>)$", arg) or re.match(r"^\d", arg):
                continue
            yield arg


class MakeExtractor(BaseExtractor):
    """
    Extract ``-l`` flags from variable assignments and link recipes, and
    modules of ``$(shell pkg-config --libs ...)``. Each library is kept once
    per file, at its first occurrence.
    """

    tool = ToolKind.MAKE
    patterns = ("Makefile", "GNUmakefile")
    case_insensitive = True

    def parse(self, text: str, sink: RecordSink) -> None:
        seen: Set[str] = set()
        for number, line in logical_lines(text):
            is_recipe = line.startswith("\t")
            if not is_recipe and not _ASSIGNMENT_RE.match(line):
                continue

            for module in pkg_config_modules(line):
                if "$" in module:
                    sink.warn(number, f"pkg-config module {module!r} depends on a make variable")
                    continue
                library = pkgconfig_library(module)
                if library and library not in seen:
                    seen.add(library)
                    sink.add(module, number, library=library)

            if is_recipe and not _LINKER_RE.search(line):
                continue
            for match in _LINK_FLAG_RE.finditer(line):
                name = match.group(1)
                if name.lower() in seen:
                    continue
                record = sink.add(name, number)
                if record is not None:
                    seen.add(record.library)


def extract_make(text, path):
    """Extract linked libraries from a Makefile."""
    return MakeExtractor().extract(text, path)
